#!/usr/bin/env python3
"""Survey envelope sizes over every enumerable partial action at desk scale.

Prints, per (group, carrier size), the action count and a histogram of
envelope sizes, and confirms the n*|G| bound along the way.

Usage: python scripts/survey_envelopes.py [--max-size 3]
"""

import argparse
from collections import Counter

from partial_actions import (
    cyclic_group,
    enumerate_partial_actions,
    globalize_set,
    symmetric_group,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-size", type=int, default=3)
    args = parser.parse_args()

    groups = [
        ("Z2", cyclic_group(2)),
        ("Z3", cyclic_group(3)),
        ("Z4", cyclic_group(4)),
        ("S3", symmetric_group(3)),
    ]
    for name, G in groups:
        for n in range(1, args.max_size + 1):
            actions = enumerate_partial_actions(G, n)
            sizes = Counter()
            for spa in actions:
                size = globalize_set(spa).size
                assert size <= n * G.order
                sizes[size] += 1
            histogram = ", ".join(f"{s}:{c}" for s, c in sorted(sizes.items()))
            print(f"{name} on {n} point(s): {len(actions):5d} actions; envelope sizes {{{histogram}}}")


if __name__ == "__main__":
    main()
