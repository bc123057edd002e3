"""The trefoil has a single irreducible branch whose slope never moves.

For every meridian eigenvalue M the Riley parameter is the closed form
t = -(M^2 + M^-2 - 1), the longitude eigenvalue is L = -M^-6, and the
pairing slope is the constant -6 — the ideal slope read off the
A-polynomial 1 + L M^6.
"""

from __future__ import annotations

import cmath
from random import Random

from knotslope import boundary_data, compute_slope, load_builtin, riley_family


def main() -> None:
    pres = load_builtin("trefoil")
    rng = Random(12)

    print(f"{'M':>22} {'t':>22} {'slope':>24} {'|L + M^-6|':>12}")
    for _ in range(8):
        M = rng.uniform(1.1, 2.0) * cmath.exp(1j * rng.uniform(0.0, 1.2))
        (rep,) = riley_family(pres, M)
        sv = compute_slope(rep)
        bd = boundary_data(rep)
        drift = abs(bd.L + M ** -6.0)
        print(f"{M:>22.4f} {rep.riley_t:>22.4f} "
              f"{complex(sv.reading):>24.12f} {drift:>12.2e}")

    print()
    print("The slope sits at -6 for every sample: the character variety of")
    print("the trefoil is a single curve with constant logarithmic slope.")


if __name__ == "__main__":
    main()
