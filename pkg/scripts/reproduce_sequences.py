"""Print NTr(k) by all three methods, the brute-force UT census, and the
offline OEIS comparison."""

import argparse
import time

from tracktour.counting import count_by_enumeration, count_by_transfer_matrix, recurrence_ntr, ut, ut_table
from tracktour.oeis import compare, fetch_bfile
from tracktour.rules import compiled_dfa
from tracktour.tournament import unique_census


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-k", type=int, default=20)
    p.add_argument("--max-n", type=int, default=7)
    args = p.parse_args()

    d = compiled_dfa()
    print(f"{'k':>3} {'enum':>10} {'matrix':>10} {'recurrence':>10}")
    for k in range(args.max_k + 1):
        row = (count_by_enumeration(k)[1], count_by_transfer_matrix(k, d), recurrence_ntr(k))
        flag = "" if len(set(row)) == 1 else "  <-- disagree"
        print(f"{k:>3} {row[0]:>10} {row[1]:>10} {row[2]:>10}{flag}")

    print()
    print(f"{'n':>3} {'census':>8} {'ut(n)':>8} {'non-unique score vectors'}")
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        c = unique_census(n)
        vecs = sorted(c.non_unique_score_vectors)
        shown = ", ".join("{" + ",".join(map(str, v)) + "}" for v in vecs[:3])
        more = f" (+{len(vecs) - 3} more)" if len(vecs) > 3 else ""
        print(f"{n:>3} {c.count:>8} {ut(n):>8} {shown}{more}  [{time.perf_counter() - t0:.2f}s]")

    print()
    bfile = fetch_bfile("A000570", offline=True)
    print("A000570:", compare(ut_table(len(bfile.entries)), bfile).summary())


if __name__ == "__main__":
    main()
