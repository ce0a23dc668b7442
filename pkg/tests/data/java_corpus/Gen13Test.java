/*
 * Generated fixture 13.
 * public void commentedOut() { }
 */
package org.fixture.gen;

import android.view.View;
import java.util.ArrayList;
import org.junit.Test;
import static android.support.test.espresso.matcher.ViewMatchers.withId;
import static org.junit.Assert.assertEquals;

@RunWith(AndroidJUnit4.class)
public class Gen13Test {
    private List<String> list = new ArrayList<>();
    private int x;
    private boolean clicked;
    @Test
    // TODO: extract { helper } later
    private static Map<String, List<Integer>> build1()
    {
        return null;
    }

    @Test(timeout = 1000)
    public Gen13Test(String s) {
        if (x > 2) {
            char c2 = '"';
        }
        /* } } unbalanced on purpose { */
        assertEquals(6, list.size());
        assertEquals(1, list.size());
    }

    interface Callback3 {
        void done(int code);
        default boolean ok() {
            return true;
        }
    }

    @Override
    public void test4(int[][] grid, List<String> items, Map<String, List<Integer>> m)
    {
        char c5 = '/';
        assertEquals(4, list.size());
    }

    interface Callback6 {
        void done(int code);
        default boolean ok() {
            return true;
        }
    }

    private int[] table7 = {1, 2, 3};

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
