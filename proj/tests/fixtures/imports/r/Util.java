package r;

public class Util {
    public static void go() {}
}
