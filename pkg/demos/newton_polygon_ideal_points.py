"""From presentation to A-polynomial to ideal-point slopes.

Eliminating the Riley parameter against the longitude eigenvalue gives the
A-polynomial exactly, over the integers.  Its Newton polygon's side slopes
are the slopes of the ideal points of the character curve, and the
logarithmic Gauss map recovers the pairing slope at smooth points —
the same number the twisted-Alexander route computes.
"""

from __future__ import annotations

from knotslope import (boundary_data, compute_apoly_twobridge_detailed,
                       compute_slope, format_bilaurent, ideal_point_slopes,
                       load_builtin, log_gauss, newton_polygon, riley_family)


def main() -> None:
    for name in ("trefoil", "figure8"):
        pres = load_builtin(name)
        result = compute_apoly_twobridge_detailed(pres)
        A = result.apoly
        poly = newton_polygon(A)
        report = ideal_point_slopes(poly)

        print(f"== {name} ==")
        print(f"  A(L, M) = {format_bilaurent(A)}")
        print(f"  Newton polygon vertices: {list(poly.vertices)}")
        for side in poly.sides:
            print(f"    side {side.start} -> {side.end}: slope {side.slope}")
        print(f"  ideal-point slopes: {[str(v) for v in report.values()]}")

        # cross-check: the log-Gauss map on the curve equals the pairing slope
        M = 1.37
        for rep in riley_family(pres, M):
            s = complex(compute_slope(rep).reading)
            L = boundary_data(rep).L
            g = log_gauss(A, L, M)
            print(f"  at M={M}: twisted-Alexander {s:+.6f}  "
                  f"log-Gauss {g:+.6f}")
        print()


if __name__ == "__main__":
    main()
