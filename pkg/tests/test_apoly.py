"""Exact bivariate Laurent algebra, elimination, and Newton polygon data."""

from __future__ import annotations

import math
from fractions import Fraction
from random import Random

import pytest

from knotslope.apoly import (ApolyError, BiLaurent, TPoly, bilaurent_from_json,
                             bilaurent_gcd, bilaurent_to_json,
                             compute_apoly_twobridge,
                             compute_apoly_twobridge_detailed, format_bilaurent,
                             ideal_point_slopes, log_gauss, newton_polygon,
                             parse_bilaurent, resultant_t, riley_polynomial,
                             side_slopes, squarefree_part)
from knotslope.data import load_builtin
from knotslope.presentation import parse_presentation
from knotslope.representations import boundary_data, riley_family

sympy = pytest.importorskip("sympy")

L_FIG8 = "L^2*M^4 - L*M^8 + L*M^6 + 2*L*M^4 + L*M^2 - L + M^4"
L_TREFOIL = "L*M^6 + 1"


def random_bilaurent(rng: Random, nterms: int = 4, span: int = 3) -> BiLaurent:
    terms = []
    for _ in range(rng.randrange(1, nterms + 1)):
        terms.append(((rng.randrange(-span, span + 1),
                       rng.randrange(-span, span + 1)),
                      Fraction(rng.randrange(-5, 6))))
    return BiLaurent(terms)


def to_sympy(p: BiLaurent):
    L, M = sympy.symbols("L M")
    expr = sympy.Integer(0)
    for (i, j), c in p.terms.items():
        expr += sympy.Rational(c) * L ** i * M ** j
    return sympy.expand(expr)


# ---------------------------------------------------------------------------
# ring operations

def test_bilaurent_arithmetic_matches_sympy():
    rng = Random(31)
    for _ in range(40):
        a = random_bilaurent(rng)
        b = random_bilaurent(rng)
        assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))
        assert to_sympy(a - b) == sympy.expand(to_sympy(a) - to_sympy(b))
        assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


def test_bilaurent_power_and_scalars():
    p = parse_bilaurent("L + M")
    assert p ** 3 == p * p * p
    assert p ** 0 == BiLaurent.one()
    with pytest.raises(ValueError):
        p ** -1
    assert 2 * p - p == p
    assert p * Fraction(1, 2) + p * Fraction(1, 2) == p


def test_bilaurent_derivative_is_laurent_rule():
    p = parse_bilaurent("3*L^2*M^-1 - M^4 + 7")
    dL = p.derivative("L")
    dM = p.derivative("M")
    assert dL == parse_bilaurent("6*L*M^-1")
    assert dM == parse_bilaurent("-3*L^2*M^-2 - 4*M^3")


def test_bilaurent_evaluate():
    p = parse_bilaurent(L_TREFOIL)
    assert abs(p.evaluate(-2.0 ** -6, 2.0)) < 1e-14
    assert p.evaluate(1.0, 1.0) == pytest.approx(2.0)
    assert p.abs_evaluate(2.0, 2.0) == pytest.approx(129.0)


def test_canonical_normalizes_laurent_shifts_and_content():
    p = parse_bilaurent("M^-1 + L^-2")
    assert p.canonical() == parse_bilaurent("L^2 + M")
    q = BiLaurent([((1, 0), Fraction(-2)), ((0, 0), Fraction(-4))])
    # content 2 removed, leading (lex-largest) term made positive
    assert q.canonical() == parse_bilaurent("L + 2")
    assert BiLaurent.zero().canonical() == BiLaurent.zero()


def test_exact_div_inverts_multiplication():
    rng = Random(37)
    checked = 0
    while checked < 40:
        a = random_bilaurent(rng)
        b = random_bilaurent(rng)
        if a.is_zero or b.is_zero:
            continue
        prod = a * b
        assert prod.exact_div(b) == a
        assert prod.exact_div(a) == b
        checked += 1


def test_exact_div_rejects_non_multiples():
    with pytest.raises(ApolyError):
        parse_bilaurent("L^2 + M").exact_div(parse_bilaurent("L + 1"))


# ---------------------------------------------------------------------------
# text and JSON forms

def test_parse_format_roundtrip():
    rng = Random(41)
    for _ in range(40):
        p = random_bilaurent(rng)
        assert parse_bilaurent(format_bilaurent(p)) == p
    assert format_bilaurent(BiLaurent.zero()) == "0"
    assert parse_bilaurent("0") == BiLaurent.zero()


def test_parse_accepts_rational_and_signed_forms():
    p = parse_bilaurent("-L + 1/2*M^-2 - 3")
    assert p.coefficient(1, 0) == -1
    assert p.coefficient(0, -2) == Fraction(1, 2)
    assert p.coefficient(0, 0) == -3


def test_parse_errors_carry_position():
    with pytest.raises(ApolyError) as info:
        parse_bilaurent("L + QQ")
    assert "column" in str(info.value)
    with pytest.raises(ApolyError):
        parse_bilaurent("L^")
    with pytest.raises(ApolyError):
        parse_bilaurent("")


def test_json_roundtrip():
    p = parse_bilaurent(L_FIG8)
    blob = bilaurent_to_json(p)
    assert bilaurent_from_json(blob) == p
    # coefficients serialize as exact fraction strings
    q = parse_bilaurent("1/3*L - 2")
    assert sorted(c for _, _, c in bilaurent_to_json(q)["terms"]) == ["-2", "1/3"]


# ---------------------------------------------------------------------------
# Newton polygon and ideal points

def test_figure8_newton_polygon_frozen():
    poly = newton_polygon(parse_bilaurent(L_FIG8))
    assert poly.vertices == ((0, 4), (1, 0), (2, 4), (1, 8))
    assert side_slopes(parse_bilaurent(L_FIG8)) == \
        [Fraction(-4), Fraction(4)]


def test_trefoil_newton_polygon_single_side():
    poly = newton_polygon(parse_bilaurent(L_TREFOIL))
    assert poly.vertices == ((0, 0), (1, 6))
    assert len(poly.sides) == 1
    assert poly.sides[0].slope == Fraction(6)


def test_collinear_interior_points_dropped():
    p = parse_bilaurent("1 + L*M + L^2*M^2")
    poly = newton_polygon(p)
    assert poly.vertices == ((0, 0), (2, 2))


def test_single_point_polygon_has_no_slopes():
    with pytest.raises(ApolyError):
        side_slopes(parse_bilaurent("L*M^2"))


def test_vertical_side_gives_infinite_slope():
    p = parse_bilaurent("1 + M^2 + L*M")
    poly = newton_polygon(p)
    slopes = [s.slope for s in poly.sides]
    assert math.inf in slopes


def test_figure8_ideal_slopes_frozen():
    report = ideal_point_slopes(newton_polygon(parse_bilaurent(L_FIG8)))
    assert report.values() == [Fraction(-4), Fraction(4)]
    vals = {(e.valuation, e.ideal_slope) for e in report.entries}
    assert ((4, 1), Fraction(4)) in vals
    assert ((-4, 1), Fraction(-4)) in vals


def test_trefoil_ideal_slope_frozen():
    report = ideal_point_slopes(newton_polygon(parse_bilaurent(L_TREFOIL)))
    assert report.values() == [Fraction(-6)]
    (entry,) = report.entries
    assert entry.valuation == (-6, 1)


# ---------------------------------------------------------------------------
# logarithmic Gauss map

def test_log_gauss_constant_on_trefoil_curve():
    A = parse_bilaurent(L_TREFOIL)
    rng = Random(43)
    for _ in range(20):
        M = complex(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0))
        L = -M ** -6.0
        assert abs(A.evaluate(L, M)) < 1e-9 * A.abs_evaluate(abs(L), abs(M))
        assert abs(log_gauss(A, L, M) - (-6.0)) < 1e-10


def test_log_gauss_vertical_tangent_is_infinite():
    A = parse_bilaurent("L^2 - 2*L + M - 1")
    # on the curve at (L, M) = (1, 2) the L-partial vanishes
    assert A.evaluate(1.0, 2.0) == 0
    assert log_gauss(A, 1.0, 2.0) == math.inf


def test_log_gauss_singular_point_rejected():
    A = parse_bilaurent("L^2 - 2*L + M^2 - 2*M + 2")
    with pytest.raises(ApolyError):
        log_gauss(A, 1.0, 1.0)  # both partials vanish
    with pytest.raises(ApolyError):
        log_gauss(A, 0.0, 1.0)  # coordinates must be nonzero


# ---------------------------------------------------------------------------
# resultants and gcd

def LM(i, j, c=1):
    return BiLaurent.monomial(i, j, c)


def test_resultant_frozen_examples():
    # Res_t(t - L, t - M) = L - M
    P = TPoly([LM(1, 0) * Fraction(-1), BiLaurent.one()])
    Q = TPoly([LM(0, 1) * Fraction(-1), BiLaurent.one()])
    assert resultant_t(P, Q) == LM(1, 0) - LM(0, 1)
    # Res_t(t^2 - LM, t - 1) = 1 - LM
    P2 = TPoly([LM(1, 1) * Fraction(-1), BiLaurent.zero(), BiLaurent.one()])
    Q1 = TPoly([BiLaurent.constant(-1), BiLaurent.one()])
    assert resultant_t(P2, Q1) == BiLaurent.one() - LM(1, 1)


def random_tpoly(rng: Random, max_deg: int = 2) -> TPoly:
    deg = rng.randrange(1, max_deg + 1)
    coeffs = [random_bilaurent(rng, nterms=2, span=1) for _ in range(deg)]
    lead = BiLaurent.zero()
    while lead.is_zero:
        lead = random_bilaurent(rng, nterms=2, span=1)
    return TPoly(coeffs + [lead])


def test_resultant_is_multiplicative():
    rng = Random(47)
    for _ in range(30):
        P = random_tpoly(rng)
        Q = random_tpoly(rng)
        R = random_tpoly(rng)
        assert resultant_t(P * Q, R) == resultant_t(P, R) * resultant_t(Q, R)


def test_resultant_matches_sympy():
    L, M, t = sympy.symbols("L M t")
    rng = Random(53)
    for _ in range(10):
        P = random_tpoly(rng)
        Q = random_tpoly(rng)
        sp = sum(to_sympy(c) * t ** k for k, c in enumerate(P.coeffs))
        sq = sum(to_sympy(c) * t ** k for k, c in enumerate(Q.coeffs))
        expected = sympy.expand(sympy.resultant(sp, sq, t))
        assert to_sympy(resultant_t(P, Q)) == expected


def test_resultant_requires_positive_degree():
    with pytest.raises(ApolyError):
        resultant_t(TPoly.constant(BiLaurent.one()),
                    TPoly([BiLaurent.one(), BiLaurent.one()]))


def test_gcd_divides_common_multiples():
    rng = Random(59)
    checked = 0
    while checked < 15:
        f = random_bilaurent(rng, nterms=2, span=1)
        g = random_bilaurent(rng, nterms=2, span=1)
        h = random_bilaurent(rng, nterms=2, span=1)
        if f.is_zero or g.is_zero or h.is_zero:
            continue
        d = bilaurent_gcd(f * h, g * h)
        # h divides the gcd of (fh, gh)
        d.exact_div(h.canonical())
        checked += 1


def test_gcd_simple_cases():
    p = parse_bilaurent("L^2 - M^2")
    q = parse_bilaurent("L - M") * parse_bilaurent("L + 2*M")
    g = bilaurent_gcd(p, q)
    assert g == parse_bilaurent("L - M")
    assert bilaurent_gcd(p, BiLaurent.zero()) == p.canonical()
    one = bilaurent_gcd(parse_bilaurent("L + 1"), parse_bilaurent("M + 1"))
    assert one == BiLaurent.one()


def test_squarefree_part_removes_multiplicity():
    base = parse_bilaurent("L*M + 1") ** 2 * parse_bilaurent("L + M")
    part, removed = squarefree_part(base, "L")
    assert part == (parse_bilaurent("L*M + 1") * parse_bilaurent("L + M")).canonical()
    assert removed == 1
    already, removed0 = squarefree_part(parse_bilaurent(L_FIG8), "L")
    assert removed0 == 0
    assert already == parse_bilaurent(L_FIG8)


# ---------------------------------------------------------------------------
# Riley polynomial and the A-polynomial

def test_riley_polynomial_matches_numeric_roots():
    fig8 = load_builtin("figure8")
    phi = riley_polynomial(fig8)
    assert phi.degree == 2
    for M in (1.3, 0.9 + 0.3j):
        for rep in riley_family(fig8, M):
            val = phi.evaluate(rep.riley_t, 1.0, M)  # L plays no role in phi
            scale = sum(abs(c.evaluate(1.0, M)) for c in phi.coeffs) + 1.0
            assert abs(val) < 1e-8 * scale
    trefoil = load_builtin("trefoil")
    assert riley_polynomial(trefoil).degree == 1


def test_riley_polynomial_requires_irreducible_locus():
    pres = parse_presentation(
        "gens: u v ;\nrel: u = v ;\nmeridian: u ;\nlongitude: u v^-1")
    with pytest.raises(ApolyError):
        riley_polynomial(pres)


def test_trefoil_apoly_exact():
    A = compute_apoly_twobridge(load_builtin("trefoil"))
    assert A == parse_bilaurent(L_TREFOIL)


def test_figure8_apoly_exact():
    A = compute_apoly_twobridge(load_builtin("figure8"))
    assert A == parse_bilaurent(L_FIG8)


def test_apoly_detailed_metadata():
    res = compute_apoly_twobridge_detailed(load_builtin("figure8"))
    assert res.multiplicity_removed == 0
    assert not res.includes_reducible
    assert res.riley_polynomial.degree == 2
    assert not res.resultant.is_zero


def test_apoly_vanishes_on_boundary_eigenvalues():
    rng = Random(61)
    for name in ("trefoil", "figure8"):
        pres = load_builtin(name)
        A = compute_apoly_twobridge(pres)
        for _ in range(6):
            M = complex(rng.uniform(1.1, 1.9), rng.uniform(0.1, 0.6))
            for rep in riley_family(pres, M):
                bd = boundary_data(rep)
                scale = A.abs_evaluate(abs(bd.L), abs(M)) + 1.0
                assert abs(A.evaluate(bd.L, M)) < 1e-7 * scale


def test_apoly_with_reducible_factor():
    res = compute_apoly_twobridge_detailed(load_builtin("trefoil"),
                                           with_reducible=True)
    assert res.includes_reducible
    expected = (parse_bilaurent(L_TREFOIL) * parse_bilaurent("L - 1")).canonical()
    assert res.apoly == expected
    res8 = compute_apoly_twobridge_detailed(load_builtin("figure8"),
                                            with_reducible=True)
    expected8 = (parse_bilaurent(L_FIG8) * parse_bilaurent("L - 1")).canonical()
    assert res8.apoly == expected8


def test_apoly_rejects_degenerate_presentations():
    pres = parse_presentation(
        "gens: u v ;\nrel: u = v ;\nmeridian: u ;\nlongitude: u v^-1")
    with pytest.raises(ApolyError):
        compute_apoly_twobridge(pres)
    three = parse_presentation("gens: a b c ;\nrel: a = b ;\nrel: b = c ;\n"
                               "meridian: a ;\nlongitude: a c^-1")
    with pytest.raises(ApolyError):
        compute_apoly_twobridge(three)
