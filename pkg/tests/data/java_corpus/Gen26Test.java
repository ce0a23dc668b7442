/*
 * Generated fixture 26.
 * public void commentedOut() { }
 */
package org.fixture.gen;

import android.view.View;
import com.robotium.solo.Solo;
import org.junit.runner.RunWith;
import static android.support.test.espresso.Espresso.onView;
import static org.junit.Assert.assertEquals;

@RunWith(AndroidJUnit4.class)
public class Gen26Test extends ActivityInstrumentationTestCase2<MainActivity> {
    private List<String> list = new ArrayList<>();
    private int x;
    private boolean clicked;
    private String label1 = "a\\";

    @Override
    private static Map<String, List<Integer>> build2(Map<String, List<Integer>> m, java.util.List<? extends Number> nums, String args[]) {
        return null;
    }

    @Test
    protected int[] values3(Map<String, List<Integer>> m) {
        return new int[] {1, 2};
    }

    interface Callback4 {
        void done(int code);
        default boolean ok() {
            return true;
        }
    }

    static class Inner5 {
        private List<String> list = new ArrayList<>();
        private int x;
        private boolean clicked;
        private String label6 = "a\\";

        enum Mode7 {
            FAST {
                @Override int speed() { return 2; }
            },
            SLOW(1);
            private final int s;
            Mode7() { this(0); }
            Mode7(int s) { this.s = s; }
            int speed() {
                return s;
            }
        }

    }

}
