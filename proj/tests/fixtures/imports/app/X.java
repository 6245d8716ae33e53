package app;

class X {
    void ping() {}
}
