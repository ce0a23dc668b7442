/*
 * Generated fixture 28.
 * public void commentedOut() { }
 */
package org.fixture.gen;

import com.robotium.solo.Solo;
import java.util.Map;
import static android.support.test.espresso.action.ViewActions.click;
import static android.support.test.espresso.matcher.ViewMatchers.withId;
import static org.junit.Assert.assertEquals;

@RunWith(AndroidJUnit4.class)
public class Gen28Test extends ActivityInstrumentationTestCase2<MainActivity> {
    private List<String> list = new ArrayList<>();
    private int x;
    private boolean clicked;
    /* public void hidden(int a) { x(); } */

    static class Inner1 extends ActivityInstrumentationTestCase2<MainActivity> {
        private List<String> list = new ArrayList<>();
        private int x;
        private boolean clicked;
        static {
            /* public void hidden(int a) { x(); } */
        }

        private final View.OnClickListener listener2 = new View.OnClickListener() {
            @Override
            public void onClick(View view) {
                clicked = true;
            }
        };

    }

    private final View.OnClickListener listener3 = new View.OnClickListener() {
        @Override
        public void onClick(View view) {
            clicked = true;
        }
    };

    /** Old version:
     * public void legacy() {
     *     onView(withId(R.id.ok));
     * }
     */

    @Test
    // TODO: extract { helper } later
    private static Map<String, List<Integer>> build4(Map<String, List<Integer>> m, @SuppressWarnings("x") long t, Object... rest) {
        String s5 = "// still a string {";
        return null;
    }

}
