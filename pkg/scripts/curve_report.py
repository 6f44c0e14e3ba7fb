#!/usr/bin/env python3
"""Print the curve-side data for the two built-in test curves."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ellhall.autoforms import AutoformContext, l_function, zeta_xn_series  # noqa: E402
from ellhall.curve import CurveData, primitive_orbits  # noqa: E402


def main():
    for label, curve in [("y^2 + y = x^3 / F_2", CurveData(2, a3=1)),
                         ("y^2 = x^3 + x + 1 / F_5", CurveData(5, a4=1, a6=1))]:
        print(f"== {label}")
        print(f"   trace {curve.trace}, "
              f"counts {[curve.count_points(n) for n in range(1, 7)]}")
        num, den = curve.zeta_rational(1)
        print(f"   zeta numerator {num}, denominator {den}")
        for n in (1, 2, 3):
            pic = curve.picard(n)
            prim = primitive_orbits(curve, n)
            print(f"   level {n}: {pic}, {len(prim)} primitive orbit(s)")
        print()

    e1 = CurveData(2, a3=1)
    ctx = AutoformContext(e1, char_levels=(1, 2))
    rho = primitive_orbits(e1, 2)[0]
    series = l_function(ctx, rho, rho, 8)
    print("rank-2 self L-function on the supersingular curve:")
    print("   ", [str(series.coefficient(k)) for k in range(9)])
    print("   matches zeta of the quadratic extension:",
          series == zeta_xn_series(ctx, 2, 8))


if __name__ == "__main__":
    main()
