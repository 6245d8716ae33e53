class Good2 {
    void b() {}
}
