import java.util.*;

class Bar {
    int add(int a, int b) { return a + b; }
    int add(float a, float b) { return (int) (a + b); }
    void foo(List<?> l1, List<?> l2) {
      int sum = add(l1.size(), l2.size());
    }
}
