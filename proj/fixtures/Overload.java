class Overload {
    int a;
    int b;

    void test(int x) {
        a = x;
        System.out.println("a: " + a);
    }

    void test(int x, int y) {
        a = x;
        b = y;
        System.out.println("a and b: " + a + ", " + b);
    }
}

class MethodOverloading {
    public static void main(String args[]) {
        Overload overload = new Overload();
        overload.test(10);
        overload.test(10, 20);
    }
}
