class Dup {
    void go() {}
}
