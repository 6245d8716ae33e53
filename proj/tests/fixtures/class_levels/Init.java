class Helper {
    Helper() {}
    static Helper make() { return new Helper(); }
}

class Init {
    static Helper H = Helper.make();
    Helper h = new Helper();
    static {
        boot();
    }
    {
        warm();
    }
    static void boot() {}
    void warm() {}
}
