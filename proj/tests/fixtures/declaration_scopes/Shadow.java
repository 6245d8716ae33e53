class A { void m() {} }
class B { void m() {} }
class C { void m() {} }
class D { void m() {} }

class Base {
    D inherited;
}

class Shadow extends Base {
    A x;

    void paramWins(B x) {
        x.m();
    }

    void fieldThenLocal() {
        x.m();
        B x = new B();
        x.m();
    }

    void inheritedField() {
        inherited.m();
    }

    void loops(A[] items) {
        for (C x : items) {
            x.m();
        }
    }
}
