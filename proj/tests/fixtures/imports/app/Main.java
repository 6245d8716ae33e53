package app;

import p.X;
import q.*;
import r.*;

class Main {
    X x;

    void run() {
        x.ping();
        Util.go();
        java.util.List l = null;
    }
}
