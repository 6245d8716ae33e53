interface I {
    default void shared() {}
}

class X implements I {}
class Y implements I {}
