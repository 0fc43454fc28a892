"""Tally which small odd Kleene posets arise as P_a(A) for a single point a.

Runs the odd-complete search on every Kleene poset (up to isomorphism) of the
requested odd sizes and prints counts, plus the non-representable ones if asked.
"""

import argparse
import time

from kleeneposet.enumeration import all_involutive_posets
from kleeneposet.fileformat import entry, format_entry
from kleeneposet.involution import classify
from kleeneposet.representability import SearchConfig, make_th1_poset, search_odd


def survey(n: int, partitions: int, show: bool) -> tuple[int, int]:
    kleene = [K for K in all_involutive_posets(n) if classify(K).kleene]
    cfg = SearchConfig(mode="odd_complete", parallel_partitions=partitions)
    misses = []
    for K in kleene:
        if not search_odd(K, cfg).representable:
            misses.append(K)
    if show:
        for i, K in enumerate(misses):
            print(format_entry(entry(f"N{n}_{i}", K)))
    return len(kleene), len(misses)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=7, help="largest odd size to enumerate")
    ap.add_argument("--partitions", type=int, default=1)
    ap.add_argument("--show", action="store_true", help="print non-representable posets")
    ap.add_argument("--glued", type=int, nargs="*", default=[2, 3],
                    help="also search the glued-diamond posets of these lengths")
    args = ap.parse_args()

    print(f"{'size':>4} {'kleene':>7} {'not P_a(A)':>11} {'secs':>7}")
    for n in range(1, args.max_size + 1, 2):
        t0 = time.perf_counter()
        total, missing = survey(n, args.partitions, args.show)
        print(f"{n:>4} {total:>7} {missing:>11} {time.perf_counter() - t0:>7.2f}")
    for m in args.glued:
        K = make_th1_poset(m)
        r = search_odd(K, SearchConfig(mode="odd_complete", parallel_partitions=args.partitions))
        print(f"glued diamonds n={m} ({len(K)} elements): {r.status}, "
              f"{r.candidates_examined} candidates")


if __name__ == "__main__":
    main()
