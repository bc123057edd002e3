"""Exact bivariate Laurent polynomials in (L, M) over Q, Newton polygons,
the logarithmic Gauss map, and A-polynomial computation by elimination.

Text format: terms joined by ``+``/``-``; each term is an optional rational
coefficient and powers of ``L`` and ``M``, with ``*`` optional between
factors, e.g. ``"1 + L*M^6"`` or ``"3/2*L^-1 - M^2 L"``.  The JSON form is
``{"terms": [[i, j, "num/den"], ...]}`` with ``i`` the L-exponent and ``j``
the M-exponent.

The canonical form of a nonzero polynomial shifts the minimal L- and
M-exponents to 0, clears rational content (integer, coprime coefficients),
and fixes the sign so the lexicographically largest term is positive —
i.e. a distinguished associate under Laurent units.

``compute_apoly_twobridge`` eliminates the Riley parameter ``t``: the
relator entries of a 2-generator meridional presentation generate a
polynomial ``phi(t)`` (their gcd), the longitude image has upper-left
entry ``lam(t)``, and the resultant ``Res_t(phi, L - lam)``, with
M-content removed and repeated factors collapsed, is the defining
polynomial of the eigenvalue variety's closure.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .presentation import KnotPresentation, Word


class ApolyError(ValueError):
    """Exact polynomial computation cannot proceed."""


Exponents = tuple[int, int]  # (L-exponent, M-exponent)


class BiLaurent:
    """An exact Laurent polynomial in L and M with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponents, Fraction]
                 | Iterable[tuple[Exponents, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponents, Fraction] = {}
        for (i, j), c in items:
            c = Fraction(c)
            key = (int(i), int(j))
            c = acc.get(key, Fraction(0)) + c
            if c:
                acc[key] = c
            elif key in acc:
                del acc[key]
        self.terms = acc

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "BiLaurent":
        return cls()

    @classmethod
    def one(cls) -> "BiLaurent":
        return cls.monomial(0, 0)

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> "BiLaurent":
        return cls([((i, j), Fraction(coeff))])

    @classmethod
    def constant(cls, coeff) -> "BiLaurent":
        return cls.monomial(0, 0, coeff)

    # -- structure ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Exponents]:
        return sorted(self.terms)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def degree_in(self, var: str) -> int:
        """Max minus min exponent span is not used; this is the max exponent
        (of a nonzero polynomial) in ``var`` ('L' or 'M')."""
        if self.is_zero:
            raise ApolyError("zero polynomial has no degree")
        k = 0 if var == "L" else 1
        return max(e[k] for e in self.terms)

    def min_exponents(self) -> Exponents:
        if self.is_zero:
            raise ApolyError("zero polynomial has no exponents")
        return (min(i for i, _ in self.terms), min(j for _, j in self.terms))

    def leading_exponents(self) -> Exponents:
        """Lexicographically largest (i, j) in the support."""
        if self.is_zero:
            raise ApolyError("zero polynomial has no leading term")
        return max(self.terms)

    # -- ring operations ----------------------------------------------------
    def __add__(self, other: "BiLaurent") -> "BiLaurent":
        if not isinstance(other, BiLaurent):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            c = out.get(e, Fraction(0)) + c
            if c:
                out[e] = c
            elif e in out:
                del out[e]
        return BiLaurent(out)

    def __neg__(self) -> "BiLaurent":
        return BiLaurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "BiLaurent") -> "BiLaurent":
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "BiLaurent":
        if isinstance(other, (int, Fraction)):
            other = BiLaurent.constant(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        out: dict[Exponents, Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                c = out.get(e, Fraction(0)) + c1 * c2
                if c:
                    out[e] = c
                elif e in out:
                    del out[e]
        return BiLaurent(out)

    def __rmul__(self, other) -> "BiLaurent":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "BiLaurent":
        if n < 0:
            raise ApolyError("negative powers are only defined for monomials")
        out = BiLaurent.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, di: int, dj: int) -> "BiLaurent":
        return BiLaurent({(i + di, j + dj): c for (i, j), c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"BiLaurent({format_bilaurent(self)!r})"

    # -- content and canonical form ------------------------------------------
    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of
        denominators (zero polynomial has content 0)."""
        if self.is_zero:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def canonical(self) -> "BiLaurent":
        """Distinguished associate: minimal exponents at 0, integer coprime
        coefficients, lexicographically largest term positive."""
        if self.is_zero:
            return self
        i0, j0 = self.min_exponents()
        cont = self.content()
        out = {(i - i0, j - j0): c / cont for (i, j), c in self.terms.items()}
        if out[max(out)] < 0:
            out = {e: -c for e, c in out.items()}
        return BiLaurent(out)

    def exact_div(self, other: "BiLaurent") -> "BiLaurent":
        """Exact quotient self / other; raises ``ApolyError`` when ``other``
        does not divide ``self`` (in the Laurent ring)."""
        if other.is_zero:
            raise ApolyError("division by the zero polynomial")
        if self.is_zero:
            return BiLaurent.zero()
        si, sj = self.min_exponents()
        oi, oj = other.min_exponents()
        rem = {(i - si, j - sj): c for (i, j), c in self.terms.items()}
        div = {(i - oi, j - oj): c for (i, j), c in other.terms.items()}
        lt_d = max(div)
        lc_d = div[lt_d]
        quot: dict[Exponents, Fraction] = {}
        while rem:
            lt_r = max(rem)
            qi, qj = lt_r[0] - lt_d[0], lt_r[1] - lt_d[1]
            if qi < 0 or qj < 0:
                raise ApolyError("polynomials do not divide exactly")
            qc = rem[lt_r] / lc_d
            quot[(qi, qj)] = quot.get((qi, qj), Fraction(0)) + qc
            for (i, j), c in div.items():
                e = (i + qi, j + qj)
                nc = rem.get(e, Fraction(0)) - qc * c
                if nc:
                    rem[e] = nc
                elif e in rem:
                    del rem[e]
        return BiLaurent(quot).shift(si - oi, sj - oj)

    # -- calculus and evaluation ----------------------------------------------
    def derivative(self, var: str) -> "BiLaurent":
        """Partial derivative with respect to 'L' or 'M' (Laurent rule)."""
        k = {"L": 0, "M": 1}.get(var)
        if k is None:
            raise ApolyError(f"unknown variable {var!r}")
        out: dict[Exponents, Fraction] = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[k]
            if e == 0:
                continue
            key = (i - 1, j) if k == 0 else (i, j - 1)
            c2 = out.get(key, Fraction(0)) + e * c
            if c2:
                out[key] = c2
            elif key in out:
                del out[key]
        return BiLaurent(out)

    def evaluate(self, L: complex, M: complex) -> complex:
        out = 0j
        for (i, j), c in self.terms.items():
            out += complex(c) * (L ** i) * (M ** j)
        return out

    def abs_evaluate(self, absL: float, absM: float) -> float:
        """Sum of |coefficient| * |L|^i * |M|^j — a conditioning scale."""
        out = 0.0
        for (i, j), c in self.terms.items():
            out += abs(float(c.numerator) / float(c.denominator)) \
                * (absL ** i) * (absM ** j)
        return out


# ---------------------------------------------------------------------------
# text and JSON forms

_APOLY_TOKEN = re.compile(r"\s+|(?P<num>[0-9]+(/[0-9]+)?)|(?P<var>[LM])"
                          r"|(?P<op>[-+*^])")


def parse_bilaurent(text: str) -> BiLaurent:
    """Parse the textual term format (see module docstring)."""
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        m = _APOLY_TOKEN.match(text, pos)
        if m is None:
            raise ApolyError(f"column {pos + 1}: unexpected character {text[pos]!r}")
        if m.lastgroup == "num":
            tokens.append(("num", m.group(), pos))
        elif m.lastgroup == "var":
            tokens.append(("var", m.group(), pos))
        elif m.lastgroup == "op":
            tokens.append((m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))

    idx = 0

    def peek():
        return tokens[idx]

    def advance():
        nonlocal idx
        tok = tokens[idx]
        if tok[0] != "end":
            idx += 1
        return tok

    def parse_term() -> BiLaurent:
        term = BiLaurent.one()
        saw_factor = False
        while True:
            kind, text_, p = peek()
            if kind == "num":
                advance()
                term = term * BiLaurent.constant(Fraction(text_))
                saw_factor = True
            elif kind == "var":
                advance()
                exp = 1
                if peek()[0] == "^":
                    advance()
                    sign = 1
                    if peek()[0] == "-":
                        advance()
                        sign = -1
                    k, t2, p2 = peek()
                    if k != "num" or "/" in t2:
                        raise ApolyError(f"column {p2 + 1}: expected an integer exponent")
                    advance()
                    exp = sign * int(t2)
                term = term * _var_power(text_, exp)
                saw_factor = True
            elif kind == "*":
                advance()
                if peek()[0] not in ("num", "var"):
                    k, t2, p2 = peek()
                    raise ApolyError(f"column {p2 + 1}: expected a factor after '*'")
            else:
                break
        if not saw_factor:
            k, t2, p2 = peek()
            raise ApolyError(f"column {p2 + 1}: expected a term")
        return term

    result = BiLaurent.zero()
    sign = 1
    kind, _, _ = peek()
    if kind in ("+", "-"):
        if kind == "-":
            sign = -1
        advance()
    while True:
        result = result + parse_term() * sign
        kind, t2, p2 = peek()
        if kind == "end":
            return result
        if kind == "+":
            sign = 1
        elif kind == "-":
            sign = -1
        else:
            raise ApolyError(f"column {p2 + 1}: expected '+' or '-', got {t2!r}")
        advance()


def _var_power(name: str, exp: int) -> BiLaurent:
    return BiLaurent.monomial(exp, 0) if name == "L" else BiLaurent.monomial(0, exp)


def format_bilaurent(p: BiLaurent) -> str:
    """Render with terms in decreasing lexicographic (L, M) order."""
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for n, (i, j) in enumerate(sorted(p.terms, reverse=True)):
        c = p.terms[(i, j)]
        mono = []
        if i != 0:
            mono.append("L" if i == 1 else f"L^{i}")
        if j != 0:
            mono.append("M" if j == 1 else f"M^{j}")
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = "*".join(mono)
        else:
            body = "*".join([str(mag)] + mono)
        if n == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def bilaurent_to_json(p: BiLaurent) -> dict:
    return {"terms": [[i, j, str(p.terms[(i, j)])]
                      for i, j in sorted(p.terms, reverse=True)]}


def bilaurent_from_json(data: dict) -> BiLaurent:
    return BiLaurent([((int(i), int(j)), Fraction(c))
                      for i, j, c in data["terms"]])


# ---------------------------------------------------------------------------
# Newton polygon and ideal points

@dataclass(frozen=True)
class Side:
    """A directed side of the Newton polygon; ``slope`` is dj/di in the
    (L-exponent, M-exponent) plane, ``math.inf`` for a vertical side."""

    start: Exponents
    end: Exponents

    @property
    def di(self) -> int:
        return self.end[0] - self.start[0]

    @property
    def dj(self) -> int:
        return self.end[1] - self.start[1]

    @property
    def slope(self):
        if self.di == 0:
            return math.inf
        return Fraction(self.dj, self.di)


@dataclass(frozen=True)
class NewtonPolygon:
    """Convex hull of the support, vertices counterclockwise starting at
    the lexicographically smallest vertex.  A one-point support has no
    sides; a collinear support has exactly one."""

    vertices: tuple[Exponents, ...]
    sides: tuple[Side, ...]


def _cross(o: Exponents, a: Exponents, b: Exponents) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(p: BiLaurent) -> NewtonPolygon:
    """The Newton polygon of a nonzero polynomial."""
    if p.is_zero:
        raise ApolyError("zero polynomial has no Newton polygon")
    pts = sorted(set(p.terms))
    if len(pts) == 1:
        return NewtonPolygon((pts[0],), ())
    lower: list[Exponents] = []
    for q in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    upper: list[Exponents] = []
    for q in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    hull = tuple(lower[:-1] + upper[:-1])
    if len(hull) == 2:
        sides: tuple[Side, ...] = (Side(hull[0], hull[1]),)
    else:
        sides = tuple(Side(hull[k], hull[(k + 1) % len(hull)])
                      for k in range(len(hull)))
    return NewtonPolygon(hull, sides)


def side_slopes(p_or_polygon) -> list:
    """Distinct side slopes, finite ones ascending, ``inf`` last.

    Raises ``ApolyError`` for a single-monomial polygon (no sides)."""
    polygon = (p_or_polygon if isinstance(p_or_polygon, NewtonPolygon)
               else newton_polygon(p_or_polygon))
    if not polygon.sides:
        raise ApolyError("Newton polygon is a single point; no side slopes")
    return sorted({s.slope for s in polygon.sides})


@dataclass(frozen=True)
class IdealPointEntry:
    """One polygon side with its ideal-point data: ``ideal_slope`` is the
    negated side slope, ``valuation`` a primitive integer (v_L, v_M) pair
    normal to the side with ``v_M >= 0`` (and ``v_L > 0`` when v_M = 0)."""

    side: Side
    ideal_slope: object  # Fraction | math.inf
    valuation: tuple[int, int]


@dataclass(frozen=True)
class IdealSlopeReport:
    entries: tuple[IdealPointEntry, ...]

    def values(self) -> list:
        """Distinct ideal slopes, finite ones ascending, ``inf`` last."""
        return sorted({e.ideal_slope for e in self.entries})


def ideal_point_slopes(p_or_polygon) -> IdealSlopeReport:
    """Ideal-point slopes attached to the Newton polygon sides."""
    polygon = (p_or_polygon if isinstance(p_or_polygon, NewtonPolygon)
               else newton_polygon(p_or_polygon))
    if not polygon.sides:
        raise ApolyError("Newton polygon is a single point; no ideal points")
    entries = []
    for side in polygon.sides:
        g = math.gcd(abs(side.dj), abs(side.di))
        vl, vm = side.dj // g, -side.di // g
        if vm < 0 or (vm == 0 and vl < 0):
            vl, vm = -vl, -vm
        s = side.slope
        ideal = math.inf if s is math.inf else -s
        entries.append(IdealPointEntry(side=side, ideal_slope=ideal,
                                       valuation=(vl, vm)))
    return IdealSlopeReport(tuple(entries))


def log_gauss(p: BiLaurent, L: complex, M: complex,
              tol: float = 1e-8) -> complex | float:
    """The logarithmic Gauss map ``-(M dA/dM) / (L dA/dL)`` at ``(L, M)``.

    Returns ``math.inf`` when the L-partial vanishes (relative to its
    coefficient scale); raises ``ApolyError`` at singular points where both
    partials vanish, and for ``L = 0`` or ``M = 0``.
    """
    L, M = complex(L), complex(M)
    if L == 0 or M == 0:
        raise ApolyError("log-Gauss map requires nonzero L and M")
    dL = p.derivative("L")
    dM = p.derivative("M")
    vL = dL.evaluate(L, M)
    vM = dM.evaluate(L, M)
    sL = dL.abs_evaluate(abs(L), abs(M)) if not dL.is_zero else 0.0
    sM = dM.abs_evaluate(abs(L), abs(M)) if not dM.is_zero else 0.0
    zero_L = abs(vL) <= tol * (1.0 + sL)
    zero_M = abs(vM) <= tol * (1.0 + sM)
    if zero_L and zero_M:
        raise ApolyError("both partial derivatives vanish: singular point")
    if zero_L:
        return math.inf
    return complex(-(M * vM) / (L * vL))


def polygon_to_json(polygon: NewtonPolygon) -> dict:
    return {
        "vertices": [list(v) for v in polygon.vertices],
        "sides": [{"start": list(s.start), "end": list(s.end),
                   "slope": _rational_str(s.slope)} for s in polygon.sides],
    }


def ideal_report_to_json(report: IdealSlopeReport) -> dict:
    return {
        "entries": [{"side": {"start": list(e.side.start),
                              "end": list(e.side.end)},
                     "ideal_slope": _rational_str(e.ideal_slope),
                     "valuation": list(e.valuation)} for e in report.entries],
        "values": [_rational_str(v) for v in report.values()],
    }


def _rational_str(x) -> str:
    return "inf" if x is math.inf else str(x)


# ---------------------------------------------------------------------------
# univariate polynomials in t over the Laurent ring

class TPoly:
    """A polynomial in an eliminated variable t with BiLaurent coefficients,
    stored ascending with trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[BiLaurent] = ()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls) -> "TPoly":
        return cls(())

    @classmethod
    def constant(cls, c: BiLaurent) -> "TPoly":
        return cls((c,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> BiLaurent:
        if self.is_zero:
            raise ApolyError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "TPoly") -> "TPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        z = BiLaurent.zero()
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return TPoly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "TPoly":
        return TPoly([-c for c in self.coeffs])

    def __sub__(self, other: "TPoly") -> "TPoly":
        return self + (-other)

    def __mul__(self, other: "TPoly") -> "TPoly":
        if self.is_zero or other.is_zero:
            return TPoly.zero()
        out = [BiLaurent.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero:
                    continue
                out[i + j] = out[i + j] + a * b
        return TPoly(out)

    def scale(self, c: BiLaurent) -> "TPoly":
        return TPoly([x * c for x in self.coeffs])

    def shift_t(self, k: int) -> "TPoly":
        """Multiply by t^k."""
        if self.is_zero:
            return self
        return TPoly([BiLaurent.zero()] * k + list(self.coeffs))

    def evaluate(self, t: complex, L: complex, M: complex) -> complex:
        out = 0j
        for k in range(len(self.coeffs) - 1, -1, -1):
            out = out * t + self.coeffs[k].evaluate(L, M)
        return out

    def content(self) -> BiLaurent:
        """Gcd of the coefficients (canonical); zero for the zero poly."""
        g = BiLaurent.zero()
        for c in self.coeffs:
            g = bilaurent_gcd(g, c)
            if not g.is_zero and g.leading_exponents() == (0, 0) and len(g.terms) == 1:
                break  # unit content; no smaller gcd possible
        return g

    def primitive_part(self) -> "TPoly":
        if self.is_zero:
            return self
        g = self.content()
        return TPoly([c.exact_div(g) for c in self.coeffs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if self.is_zero:
            return "TPoly(0)"
        parts = [f"({format_bilaurent(c)})*t^{k}" for k, c in enumerate(self.coeffs)
                 if not c.is_zero]
        return f"TPoly({' + '.join(parts)})"


def tpoly_prem(P: TPoly, Q: TPoly) -> TPoly:
    """Pseudo-remainder of P by Q (deg P >= deg Q >= 0, Q nonzero):
    the remainder of ``lc(Q)^(deg P - deg Q + 1) * P`` under exact division."""
    if Q.is_zero:
        raise ApolyError("pseudo-remainder by the zero polynomial")
    if P.is_zero:
        return P
    d = P.degree - Q.degree
    if d < 0:
        raise ApolyError("pseudo-remainder requires deg P >= deg Q")
    lcq = Q.leading
    R = P.scale(lcq ** (d + 1))
    while not R.is_zero and R.degree >= Q.degree:
        q = R.leading.exact_div(lcq)
        R = R - Q.shift_t(R.degree - Q.degree).scale(q)
    return R


def tpoly_gcd(A: TPoly, B: TPoly) -> TPoly:
    """Primitive gcd (up to Laurent units) by the primitive PRS; the common
    content of the inputs is deliberately ignored."""
    A = A.primitive_part()
    B = B.primitive_part()
    if A.is_zero:
        return B
    if B.is_zero:
        return A
    if A.degree < B.degree:
        A, B = B, A
    while not B.is_zero:
        if B.degree == 0:
            return TPoly.constant(BiLaurent.one())
        R = tpoly_prem(A, B).primitive_part()
        A, B = B, R
    return A


def resultant_t(P: TPoly, Q: TPoly) -> BiLaurent:
    """Resultant in t via fraction-free (Bareiss) elimination of the
    Sylvester matrix.  Requires both degrees >= 1.  The raw determinant is
    returned, so ``resultant_t(P1*P2, Q) = resultant_t(P1, Q) *
    resultant_t(P2, Q)`` holds exactly."""
    if P.is_zero or Q.is_zero:
        raise ApolyError("resultant of the zero polynomial")
    n, m = P.degree, Q.degree
    if n < 1 or m < 1:
        raise ApolyError("resultant requires degree >= 1 in t for both inputs")
    N = n + m
    zero = BiLaurent.zero()
    S = [[zero] * N for _ in range(N)]
    for k in range(m):
        for idx in range(n + 1):
            S[k][k + idx] = P.coeffs[n - idx]
    for k in range(n):
        for idx in range(m + 1):
            S[m + k][k + idx] = Q.coeffs[m - idx]

    sign = 1
    prev = BiLaurent.one()
    for k in range(N - 1):
        if S[k][k].is_zero:
            pivot = next((r for r in range(k + 1, N) if not S[r][k].is_zero), None)
            if pivot is None:
                return BiLaurent.zero()
            S[k], S[pivot] = S[pivot], S[k]
            sign = -sign
        for i in range(k + 1, N):
            for j in range(k + 1, N):
                S[i][j] = (S[i][j] * S[k][k] - S[i][k] * S[k][j]).exact_div(prev)
            S[i][k] = zero
        prev = S[k][k]
    det = S[N - 1][N - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# gcd over the bivariate ring

def _is_univariate(p: BiLaurent, k: int) -> bool:
    lo = min(e[k] for e in p.terms)
    return all(e[k] == lo for e in p.terms)


def _univariate_gcd(a: BiLaurent, b: BiLaurent, k: int) -> BiLaurent:
    """Gcd of two Laurent polynomials in the single variable indexed by
    ``k`` (0 = L, 1 = M), returned canonical."""
    def coeff_list(p: BiLaurent) -> list[Fraction]:
        exps = [e[k] for e in p.terms]
        base = min(exps)
        out = [Fraction(0)] * (max(exps) - base + 1)
        for e, c in p.terms.items():
            out[e[k] - base] = c
        return out

    x = coeff_list(a)
    y = coeff_list(b)

    def pmod(u: list[Fraction], v: list[Fraction]) -> list[Fraction]:
        u = u[:]
        while len(u) >= len(v) and any(u):
            while u and u[-1] == 0:
                u.pop()
            if len(u) < len(v):
                break
            f = u[-1] / v[-1]
            off = len(u) - len(v)
            for i, cv in enumerate(v):
                u[off + i] -= f * cv
            u.pop()
        while u and u[-1] == 0:
            u.pop()
        return u

    while y:
        x, y = y, pmod(x, y)
    mono = {0: lambda e: (e, 0), 1: lambda e: (0, e)}[k]
    return BiLaurent([(mono(e), c) for e, c in enumerate(x) if c]).canonical()


def _as_L_tpoly(p: BiLaurent) -> TPoly:
    """View a polynomial (shifted to nonnegative exponents) as a polynomial
    in L with pure-M coefficients, reusing the TPoly machinery with t = L."""
    i0, j0 = p.min_exponents()
    top = max(i for i, _ in p.terms)
    coeffs = [BiLaurent.zero() for _ in range(top - i0 + 1)]
    for (i, j), c in p.terms.items():
        coeffs[i - i0] = coeffs[i - i0] + BiLaurent.monomial(0, j - j0, c)
    return TPoly(coeffs)


def _from_L_tpoly(t: TPoly) -> BiLaurent:
    out = BiLaurent.zero()
    for i, c in enumerate(t.coeffs):
        out = out + c.shift(i, 0)
    return out


def bilaurent_gcd(a: BiLaurent, b: BiLaurent) -> BiLaurent:
    """Gcd in the Laurent ring, returned in canonical form."""
    if a.is_zero:
        return b.canonical()
    if b.is_zero:
        return a.canonical()
    a = a.canonical()
    b = b.canonical()
    if _is_univariate(a, 0) and _is_univariate(b, 0):  # neither uses L
        return _univariate_gcd(a, b, 1)
    if _is_univariate(a, 1) and _is_univariate(b, 1):  # neither uses M
        return _univariate_gcd(a, b, 0)
    ta, tb = _as_L_tpoly(a), _as_L_tpoly(b)
    ca, cb = ta.content(), tb.content()
    cont = bilaurent_gcd(ca, cb)
    pa, pb = ta.primitive_part(), tb.primitive_part()
    g = tpoly_gcd(pa, pb)
    if g.degree <= 0:
        pp = BiLaurent.one()
    else:
        pp = _from_L_tpoly(g)
    return (cont * pp).canonical()


def squarefree_part(p: BiLaurent, var: str = "L") -> tuple[BiLaurent, int]:
    """Collapse repeated factors: returns ``(p / gcd(p, dp/dvar), d)`` in
    canonical form, where ``d`` is the ``var``-degree of the removed gcd."""
    p = p.canonical()
    dp = p.derivative(var)
    if dp.is_zero:
        return p, 0
    g = bilaurent_gcd(p, dp)
    if len(g.terms) == 1 and g.leading_exponents() == (0, 0):
        return p, 0
    part = p.exact_div(g)
    k = 0 if var == "L" else 1
    removed = max(e[k] for e in g.terms) - min(e[k] for e in g.terms)
    return part.canonical(), removed


# ---------------------------------------------------------------------------
# A-polynomial of a 2-generator meridional presentation

@dataclass(frozen=True)
class ApolyResult:
    """Full elimination data: the A-polynomial, the primitive resultant it
    was distilled from, the Riley polynomial ``phi(t)``, the longitude
    eigenvalue ``lam(t)``, the L-degree removed as repeated factors, and
    whether the reducible-locus factor ``L - 1`` was adjoined."""

    apoly: BiLaurent
    resultant: BiLaurent
    riley_polynomial: TPoly
    longitude_eigenvalue: TPoly
    multiplicity_removed: int
    includes_reducible: bool


def _symbolic_riley_images(pres: KnotPresentation) -> dict[tuple[str, int], list]:
    """Exact Riley matrices over Z[M, M^-1][t] for the two generators."""
    from .representations import _riley_generators
    try:
        mgen, other = _riley_generators(pres)
    except Exception as exc:  # normalize the error type for this module
        raise ApolyError(str(exc)) from exc
    one = BiLaurent.one()
    zero = BiLaurent.zero()
    Mm = BiLaurent.monomial(0, 1)
    Mi = BiLaurent.monomial(0, -1)
    t = TPoly([zero, one])
    c = TPoly.constant
    U = [[c(Mm), c(one)], [TPoly.zero(), c(Mi)]]
    Uinv = [[c(Mi), c(-one)], [TPoly.zero(), c(Mm)]]
    V = [[c(Mm), TPoly.zero()], [t, c(Mi)]]
    Vinv = [[c(Mi), TPoly.zero()], [-t, c(Mm)]]
    return {(mgen, 1): U, (mgen, -1): Uinv, (other, 1): V, (other, -1): Vinv}


def _tpoly_mat_mul(A: list, B: list) -> list:
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)]
            for i in range(2)]


def _tpoly_word_image(word: Word, mats: Mapping[tuple[str, int], list]) -> list:
    out = [[TPoly.constant(BiLaurent.one()), TPoly.zero()],
           [TPoly.zero(), TPoly.constant(BiLaurent.one())]]
    for g, e in word.letters:
        out = _tpoly_mat_mul(out, mats[(g, e)])
    return out


def riley_polynomial(pres: KnotPresentation) -> TPoly:
    """The gcd of all relator entry polynomials in t (primitive in M).

    Raises ``ApolyError`` when the relators impose no polynomial condition
    or when the gcd is constant (no irreducible Riley locus).
    """
    mats = _symbolic_riley_images(pres)
    entries: list[TPoly] = []
    for lhs, rhs in pres.relators:
        A = _tpoly_word_image(lhs, mats)
        B = _tpoly_word_image(rhs, mats)
        for i in range(2):
            for j in range(2):
                d = A[i][j] - B[i][j]
                if not d.is_zero:
                    entries.append(d)
    if not entries:
        raise ApolyError("relators are identically satisfied; "
                         "no Riley polynomial")
    g = entries[0]
    for e in entries[1:]:
        g = tpoly_gcd(g, e)
        if g.degree == 0:
            break
    g = g.primitive_part()
    if g.degree < 1:
        raise ApolyError("Riley polynomial is constant: the presentation "
                         "has no irreducible Riley locus")
    return g


def compute_apoly_twobridge_detailed(pres: KnotPresentation,
                                     with_reducible: bool = False) -> ApolyResult:
    """Eliminate t between the Riley polynomial and the longitude
    eigenvalue; see the module docstring for the pipeline."""
    phi = riley_polynomial(pres)
    mats = _symbolic_riley_images(pres)
    lam = _tpoly_word_image(pres.longitude, mats)[0][0]
    if lam.is_zero:
        raise ApolyError("longitude eigenvalue polynomial is zero")

    Lmono = BiLaurent.monomial(1, 0)
    G_coeffs = [-c for c in lam.coeffs]
    G_coeffs[0] = G_coeffs[0] + Lmono
    G = TPoly(G_coeffs)

    if G.degree < 1:
        # eigenvalue independent of t: the resultant degenerates to a power
        raw = G.coeffs[0] ** phi.degree
    else:
        raw = resultant_t(phi, G)
    if raw.is_zero:
        raise ApolyError("resultant vanishes identically")

    # remove M-content (gcd of the L-coefficients)
    as_l = _as_L_tpoly(raw)
    primitive = _from_L_tpoly(as_l.primitive_part()).canonical()

    if primitive.is_zero or _is_univariate(primitive, 0):
        raise ApolyError("eliminated polynomial has no L-dependence")
    apoly, removed = squarefree_part(primitive, "L")

    includes = False
    if with_reducible:
        l_minus_1 = BiLaurent([((1, 0), Fraction(1)), ((0, 0), Fraction(-1))])
        try:
            apoly.exact_div(l_minus_1)
        except ApolyError:
            apoly = (apoly * l_minus_1).canonical()
        includes = True

    return ApolyResult(apoly=apoly.canonical(), resultant=primitive,
                       riley_polynomial=phi, longitude_eigenvalue=lam,
                       multiplicity_removed=removed,
                       includes_reducible=includes)


def compute_apoly_twobridge(pres: KnotPresentation,
                            with_reducible: bool = False) -> BiLaurent:
    """The A-polynomial of a 2-generator meridional presentation, in
    canonical form; ``with_reducible`` adjoins the factor ``L - 1`` when
    it is not already present."""
    return compute_apoly_twobridge_detailed(pres, with_reducible).apoly
