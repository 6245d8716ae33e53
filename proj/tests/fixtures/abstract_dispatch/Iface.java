interface I {
    void m();
}

class X implements I {
    public void m() {}
}

class User {
    void use(I i) {
        i.m();
    }
}
