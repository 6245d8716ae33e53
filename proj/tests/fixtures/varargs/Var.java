class Var {
    void sum(int... xs) {}
    void caller() {
        sum();
        sum(1);
        sum(1, 2, 3);
    }
}
