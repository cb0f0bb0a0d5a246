"""Print Moebius dimensions next to standard-basis counts for the acceptance corpus."""

from __future__ import annotations

import argparse
import sys

from loophom.corpus import acceptance_corpus
from loophom.lyndon import counts_by_degree, standard_basis
from loophom.manifold import present
from loophom.series import lie_dims_from_denominator, loop_denominator


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-degree", type=int, default=10)
    parser.add_argument("--seed", type=int, default=20261019)
    args = parser.parse_args(argv)
    n = args.max_degree
    mismatches = 0
    for desc in acceptance_corpus(args.seed):
        if desc.r < 3:
            continue
        p = present(desc)
        dims = lie_dims_from_denominator(loop_denominator(p.loop_degrees, p.relation_degree, n))
        counts = counts_by_degree(standard_basis(p, n), n)
        flag = "ok" if dims == counts else "MISMATCH"
        mismatches += dims != counts
        print(f"{desc.name:<12} degrees={list(p.loop_degrees)} D={p.relation_degree} {flag}")
        print(f"  moebius  {dims}")
        if dims != counts:
            print(f"  lyndon   {counts}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
