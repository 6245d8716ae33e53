class A { void method() {} }
class B extends A {}
class C extends B {}

class Bar {
    void foo(A a) {
      a.method();
    }
}
