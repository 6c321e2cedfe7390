class MyException {
    int d;
    int a;

    public static void main(String args[]) {
        try {
            d = 0;
            a = 42 / d;
            System.out.println("This will not be printed.");
        } catch (ArithmeticException e) {
            // catching of divided by zero errors
            System.out.println("This is Division by zero creating an exception !!!");
        }
        System.out.println("This is after the catch done....");
    }
}
