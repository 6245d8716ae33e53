class Good1 {
    void a() {}
}
