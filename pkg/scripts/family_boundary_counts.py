#!/usr/bin/env python3
"""Sweep a list of parameter polynomials through the hypersurface family
and report which pairs are separated by their boundary component counts.

The family lives over Sym^1 + V + V with the invariant minor[1,2]; each
member 1 + phi(Delta) - w0 has a boundary with one irreducible component
per distinct root of phi, so unequal root counts certify non-isomorphic
quotients.

Usage: python3 scripts/family_boundary_counts.py [phi ...]
"""

from __future__ import annotations

import argparse
import itertools

from gaquot import (
    FamilyMember,
    FamilyOutcome,
    RepSpec,
    compare_family,
    parse,
    squarefree_distinct_root_count,
)

DEFAULT_PHIS = ["t", "t + 5", "t^2 - 1", "t^2 - 2", "t^3 - t", "t^3 - 4*t"]
DELTA = "minor[1,2]"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("phis", nargs="*", default=DEFAULT_PHIS,
                        help="univariate polynomials in t (default: a built-in sweep)")
    args = parser.parse_args()

    spec = RepSpec((1, 1, 1))
    members = []
    for text in args.phis:
        phi = parse(text, ("t",))
        count, squarefree = squarefree_distinct_root_count(phi)
        if not squarefree:
            print(f"{text:<12} skipped (repeated roots)")
            continue
        members.append((text, FamilyMember(spec, phi, DELTA)))
        print(f"{text:<12} boundary components: {count}")

    print()
    separated = 0
    for (ta, ma), (tb, mb) in itertools.combinations(members, 2):
        outcome = compare_family(ma, mb)
        if outcome.outcome is FamilyOutcome.NON_ISOMORPHIC:
            separated += 1
            a, b = outcome.counts
            print(f"{ta}  vs  {tb}:  non-isomorphic ({a} != {b})")
    print(f"\n{separated} of {len(members) * (len(members) - 1) // 2} pairs separated")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
