class Poly {
    // implementations and private members hidden
    Poly(int, int);
    double eval(double);
    void add(Poly);
    void mult(Poly);
    public String toString();
}

public class Binomial {
    public static void main(String[] args) {
        int N = Integer.parseInt(args[0]);
        double p = Double.parseDouble(args[1]);
        Poly y = new Poly(1, 0);
        Poly t = new Poly(1, 0);
        t.add(new Poly(1, 1));
        for (int i = 0; i < N; i++) {
            y.mult(t);
            System.out.println(y + "");
        }
        System.out.println("value: " + y.eval(p));
    }
}
