"""A tour of the figure-eight knot's representation variety.

The two Riley branches carry opposite slopes given by a closed form in
x = M + 1/M.  On the unit circle a window of meridian angles is
unitarizable; at the parabolic corner M = 1 the slope degenerates but the
translation ratio of the commuting parabolic pair continues it.
"""

from __future__ import annotations

import cmath

from knotslope import (compute_slope, is_boundary_parabolic, is_unitarizable,
                       load_builtin, parabolic_modulus, riley_family)


def closed_form_squared(M: complex) -> complex:
    x = M + 1.0 / M
    return 4.0 * (2 * x * x - 5) ** 2 / ((x * x - 5) * (x * x - 1))


def main() -> None:
    pres = load_builtin("figure8")

    print("== slopes along the real axis ==")
    for M in (1.2, 1.3, 1.5, 2.0):
        sq = closed_form_squared(M)
        for rep in riley_family(pres, M):
            s = complex(compute_slope(rep).reading)
            print(f"  M={M:<5} t={rep.riley_t:>18.5f} slope={s:>20.8f} "
                  f"closed-form gap={abs(s * s - sq):.2e}")

    print()
    print("== unitarizable window on the unit circle ==")
    for frac in (0.22, 0.30, 0.40, 0.45):
        M = cmath.exp(1j * cmath.pi * frac)
        x = (M + 1 / M).real
        flags = [is_unitarizable(rep) for rep in riley_family(pres, M)]
        print(f"  theta = {frac:.2f}*pi  (x = {x:+.3f})  unitarizable: {flags}")

    print()
    print("== the parabolic corner M = 1 ==")
    for rep in riley_family(pres, 1.0):
        assert is_boundary_parabolic(rep)
        tau = parabolic_modulus(rep)
        nearby = min(riley_family(pres, 1.0 + 1e-3),
                     key=lambda r: abs(r.riley_t - rep.riley_t))
        s = complex(compute_slope(nearby).reading)
        print(f"  t={rep.riley_t:>18.5f}  modulus={tau:>20.8f}  "
              f"slope at M=1.001: {s:>20.8f}")
    print("  the modulus +/- 2*sqrt(3) i is the limit of the slope branch.")


if __name__ == "__main__":
    main()
