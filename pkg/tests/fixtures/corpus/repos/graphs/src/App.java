/**
 * the test fails with a timeout error on windows.
 * the test fails with a timeout error on windows.
 */
package fixture;

public class App {
    private static final String MARK = "// not a comment";

    // the test fails with a timeout error on windows
    public static String run(String name) {
        char c = '"';
        /* move the header file into the include directory */
        return MARK + name + c;  // request handler validates input and returns a response object
    }
}
