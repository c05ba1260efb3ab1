"""Non-tracking counts for a grid of "m out of n with loss l" rules.

Writes one CSV row per (rule, k) with the minimised automaton size, so the
sequences can be searched for or fitted by hand.
"""

import argparse
import csv
import sys

from tracktour.counting import count_by_transfer_matrix
from tracktour.rules import TrackingRule, compiled_dfa


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-window", type=int, default=6)
    p.add_argument("--max-k", type=int, default=20)
    args = p.parse_args()

    w = csv.writer(sys.stdout)
    w.writerow(["m", "n", "l", "states", "k", "non_tracking"])
    for n in range(2, args.max_window + 1):
        for m in range(2, n + 1):
            for loss in range(1, n + 1):
                rule = TrackingRule(m, n, loss)
                d = compiled_dfa(rule)
                for k in range(args.max_k + 1):
                    w.writerow([m, n, loss, d.state_count, k, count_by_transfer_matrix(k, d)])


if __name__ == "__main__":
    main()
