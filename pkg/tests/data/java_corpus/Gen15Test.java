/*
 * Generated fixture 15.
 * public void commentedOut() { }
 */
package org.fixture.gen;

import com.robotium.solo.Solo;
import java.util.Map;
import static android.support.test.espresso.Espresso.onView;
import static android.support.test.espresso.matcher.ViewMatchers.withId;
import static org.junit.Assert.assertEquals;

@RunWith(AndroidJUnit4.class)
public class Gen15Test {
    private List<String> list = new ArrayList<>();
    private int x;
    private boolean clicked;
    private String label1 = "void notAMethod() { }";

    @Test(expected = IllegalStateException.class)
    private static Map<String, List<Integer>> build2(Map<String, List<Integer>> m, String s) {
        assertEquals(3, list.size());
        return null;
    }

    static class Inner3 {
        private List<String> list = new ArrayList<>();
        private int x;
        private boolean clicked;
        static class Inner4 {
            private List<String> list = new ArrayList<>();
            private int x;
            private boolean clicked;
            @Test(expected = IllegalStateException.class)
            public void test5(@SuppressWarnings("x") long t, String s, Map<String, List<Integer>> m) {
                if (x > 0) {
                    String s6 = "/* not a comment */";
                }
                /* public void hidden(int a) { x(); } */
                Map<String, List<Integer>> m7 = new java.util.HashMap<>();
                onView(withId(R.id.b8)).perform(click());
            }

            @Test
            public void test9()
            {
                int[] arr10 = {1, 2, 3};
                if (x > 4) {
                    list.forEach(e -> {
                        String s11 = "{\"json\": [1, 2, {}]}";
                    });
                }
                list.forEach(e -> {
                    assertEquals(1, list.size());
                });
                /* public void hidden(int a) { x(); } */
                assertEquals(6, list.size());
            }

            private int[] table12 = {1, 2, 3};

        }

        interface Callback13 {
            void done(int code);
            default boolean ok() {
                return true;
            }
        }

        private int[] table14 = {1, 2, 3};

    }

}
