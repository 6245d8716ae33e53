class Helper {
    void run() {}
    void poke() {}
}

class Receivers {
    Helper h;
    Receivers r;

    void implicitCall() { helper(); }
    void explicitThisCall() { this.helper(); }
    void identifierCall() { h.run(); }
    void fieldChainCall() { r.h.poke(); }
    void invocationChainCall() { make().run(); }
    void superCall() { super.hashCode(); }

    void helper() {}
    Helper make() { return h; }
}
