package p;

public class X {
    public void ping() {}
}
