class Util2 {
    static int max(int a, int b) { return a > b ? a : b; }
}

class K {
    void f() {
        Util2.max(1, 2);
    }
}
