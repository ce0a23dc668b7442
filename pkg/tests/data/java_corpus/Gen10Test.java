/*
 * Generated fixture 10.
 * public void commentedOut() { }
 */
package org.fixture.gen;

import com.robotium.solo.Solo;
import java.util.ArrayList;
import java.util.List;
import org.junit.runner.RunWith;
import static android.support.test.espresso.Espresso.onView;

@RunWith(AndroidJUnit4.class)
public class Gen10Test extends ActivityInstrumentationTestCase2<MainActivity> {
    private List<String> list = new ArrayList<>();
    private int x;
    private boolean clicked;
    enum Mode1 {
        FAST {
            @Override int speed() { return 2; }
        },
        SLOW(1);
        private final int s;
        Mode1() { this(0); }
        Mode1(int s) { this.s = s; }
        int speed() {
            return s;
        }
    }

    private static Map<String, List<Integer>> build2(String args[], String s, @SuppressWarnings("x") long t) {
        char c3 = '/';
        return null;
    }

    interface Callback4 {
        void done(int code);
        default boolean ok() {
            return true;
        }
    }

    // TODO: extract { helper } later

    enum Mode5 {
        FAST {
            @Override int speed() { return 2; }
        },
        SLOW(1);
        private final int s;
        Mode5() { this(0); }
        Mode5(int s) { this.s = s; }
        int speed() {
            return s;
        }
    }

}
