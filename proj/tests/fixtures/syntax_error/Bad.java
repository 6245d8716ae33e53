class Bad {
    void broken( {
}
