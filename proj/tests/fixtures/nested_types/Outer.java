package p;

class O {
    class I {
        void inner() {}
    }
    void outer() {
        I i = new I();
        i.inner();
    }
}
