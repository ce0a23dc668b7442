/*
 * Generated fixture 35.
 * public void commentedOut() { }
 */
package org.fixture.gen;

import com.robotium.solo.Solo;
import java.util.ArrayList;
import java.util.Map;
import org.junit.Before;
import static android.support.test.espresso.matcher.ViewMatchers.withId;

@RunWith(AndroidJUnit4.class)
public class Gen35Test extends ActivityInstrumentationTestCase2<MainActivity> {
    private List<String> list = new ArrayList<>();
    private int x;
    private boolean clicked;
    @Override
    public Gen35Test(String args[], String s)
    {
        assertEquals(0, list.size());
        assertEquals(7, list.size());
        onView(withId(R.id.b1)).perform(click());
        onView(withId(R.id.b2)).perform(click());
    }

    static class Inner3 {
        private List<String> list = new ArrayList<>();
        private int x;
        private boolean clicked;
        static {
            char c4 = '/';
            String s5 = "/* not a comment */";
        }

        interface Callback6 {
            void done(int code);
            default boolean ok() {
                return true;
            }
        }

    }

    private final View.OnClickListener listener7 = new View.OnClickListener() {
        @Override
        public void onClick(View view) {
            clicked = true;
        }
    };

    enum Mode8 {
        FAST {
            @Override int speed() { return 2; }
        },
        SLOW(1);
        private final int s;
        Mode8() { this(0); }
        Mode8(int s) { this.s = s; }
        int speed() {
            return s;
        }
    }

}
