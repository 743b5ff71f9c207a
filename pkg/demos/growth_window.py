"""How fast can the minimal occurrence-maximum grow?

For each n we take the worst word of length n over a 2-letter alphabet
(the one whose most frequent subsequence is as rare as possible).  The
n-th root of that value brackets a growth constant from below, and the
n-th root of n times it brackets the same constant from above.  Larger
n squeezes the bracket tighter.

The table is computed fresh, except the n=40 entry which is an imported
reference value -- it is flagged as such and the library refuses to
"verify" it by search (2^40 words is not an afternoon job).
"""

import time

from subseqlab import best_window, extremal_table, known_record, mu_window

N_MAX = 12  # bump to 14 if you have ~10s to spare


def main():
    t0 = time.time()
    records = extremal_table(2, N_MAX)
    print(f"worst-case table, k=2, computed in {time.time() - t0:.1f}s")
    print(f"{'n':>3} {'value':>6}  witness")
    for rec in records:
        print(f"{rec.n:>3} {rec.value:>6}  {''.join('ab'[s] for s in rec.minimizer.symbols)}")

    print("\nwindow per n (lower bound from n, upper from the same n):")
    for rec in records:
        if rec.n < 3:
            continue  # the bracket needs n >= 3
        win = mu_window(rec)
        print(f"  n={rec.n:>2}: [{win.lower_decimal}, {win.upper_decimal}]")

    win = best_window([r for r in records if r.n >= 3])
    print(f"\nbest bracket from this table: [{win.lower_decimal}, {win.upper_decimal}]")

    ref = known_record(2, 40)
    if ref is not None:
        refwin = mu_window(ref)
        print(f"reference n=40 entry ({ref.method}): "
              f"[{refwin.lower_decimal}, {refwin.upper_decimal}]")
    print("for scale: the constant is known to sit inside [1.5, 1.554]")


if __name__ == "__main__":
    main()
