#!/usr/bin/env python3
"""Walk through a few normal-form computations in the twist-n loop algebra."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ellhall.elliptic_hall import EllipticHallAlgebra  # noqa: E402
from ellhall.ratfunc import FORMAL  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1)
    args = parser.parse_args()

    alg = EllipticHallAlgebra(args.n, FORMAL)
    print(f"twist level n = {args.n}, formal coefficients\n")

    examples = [
        ("t(1,0) * t(0,1)", alg.generator((1, 0)) * alg.generator((0, 1))),
        ("t(0,1) * t(0,2)", alg.generator((0, 1)) * alg.generator((0, 2))),
        ("[t(0,2), t(1,0)]", alg.commutator((0, 2), (1, 0))),
        ("[t(2,0), t(0,2)]", alg.commutator((2, 0), (0, 2))),
        ("theta_{(0,2)}", alg.theta((0, 2))),
    ]
    for label, elem in examples:
        print(f"{label} =")
        print(f"    {elem}\n")

    print("cubic residue relation at m = 0:",
          "holds" if alg.verify_cubic_relation(0) else "FAILS")
    rows = alg.verify_quadratic_relations(1)
    print(f"quadratic coefficient identities in window 1: "
          f"{sum(r['ok'] for r in rows)}/{len(rows)} hold")


if __name__ == "__main__":
    main()
