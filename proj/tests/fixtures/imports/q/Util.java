package q;

public class Util {
    public static void go() {}
}
