from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf, mpc

from ramzeta.basis import (
    RationalPoly,
    build_family,
    certify_real_roots,
    contiguous_check,
    eval_P,
    eval_P_table,
    family,
    family_csv,
    gram_matrix,
    integral_representation_check,
    laguerre,
    lemma1_bound,
    lemma1_bound_check,
    mellin_laguerre_check,
    sech_moment,
    taylor_check_G,
)
from ramzeta.quadrature import QuadratureSpec, integrate_sech_line

FAM = build_family(30)
SPEC = QuadratureSpec(target_bits=128)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=50)
polys = st.lists(rationals, min_size=0, max_size=7).map(RationalPoly)


def test_first_polynomials():
    assert FAM.P[0] == RationalPoly([2])
    assert FAM.P[1] == RationalPoly([2, -4])
    assert FAM.R[2] == RationalPoly([Fraction(1, 2), 0, -2])
    assert FAM.R[4] == RationalPoly([Fraction(3, 8), 0, Fraction(-7, 3), 0, Fraction(2, 3)])
    assert all(FAM.P[m].degree == m for m in range(31))


def test_family_from_hypergeometric_cross_check():
    # P_m(s) = 2 * 2F1(-m, s; 1; 2), used only as an independent check
    with mp.workprec(200):
        for m in (3, 9, 17):
            s = mpc("0.3", "1.7")
            assert abs(FAM.P[m](s) - 2 * mpmath.hyp2f1(-m, s, 1, 2)) < mpf(2) ** -150


@given(polys, polys)
@settings(max_examples=40, deadline=None)
def test_poly_arithmetic(p, q):
    x = Fraction(3, 7)
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert p.compose(q)(x) == p(q(x))
    assert p.taylor_shift(Fraction(1, 3))(x) == p(x + Fraction(1, 3))
    if not q.is_zero():
        quo, rem = divmod(p, q)
        assert quo * q + rem == p
        assert rem.degree < q.degree or rem.is_zero()


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=9), min_size=1, max_size=6, unique=True))
@settings(max_examples=30, deadline=None)
def test_sturm_counts_distinct_roots(roots):
    p = RationalPoly([1])
    for r in roots:
        p = p * RationalPoly([-r, 1])
    p = p * RationalPoly([1, 0, 1])  # no real roots added
    assert p.count_real_roots() == len(roots)
    intervals = p.isolate_real_roots()
    assert len(intervals) == len(roots)
    for (a, b), r in zip(intervals, sorted(roots)):
        assert a < r <= b


@given(st.integers(0, 30), rationals)
@settings(max_examples=40, deadline=None)
def test_reflection_symmetry_pointwise(m, s):
    assert FAM.P[m](1 - s) == (-1) ** m * FAM.P[m](s)


def test_eval_P_examples():
    with mp.workprec(128):
        assert eval_P(0, mpc(3, 4)) == 2
        assert abs(eval_P(3, mpf("0.5"))) < mpf(2) ** -120
        assert abs(eval_P(2, mpc("0.5", 1)) + 3) < mpf(2) ** -120
    with pytest.raises(ValueError):
        eval_P(5, 0.5, build_family(3))


def test_recurrence_matches_exact_and_explicit():
    with mp.workprec(200):
        for s in (mpf("0.5"), mpc("0.3", 2), mpc("0.9", "-1.5")):
            table = eval_P_table(121, s)
            for m in (0, 1, 7, 40, 64):
                assert abs(table[m] - eval_P(m, s)) < mpf(2) ** -180
            # beyond the exact-coefficient limit eval_P uses the explicit sum
            assert abs(table[120] - eval_P(120, s)) < mpf(2) ** -180


def test_taylor_check_G():
    with mp.workprec(128):
        assert taylor_check_G(mpf("0.5"), 0, 0) == 0
        assert taylor_check_G(mpf("0.5"), mpf(1) / 3, 60) < mpf("1e-10")
        # z = (n-1)/(n+1) with n = 3 recovers (n+1) n^-s = 4/sqrt(3)
        gap = taylor_check_G(mpf("0.5"), mpf("0.5"), 400)
        assert gap < mpf("1e-30")
        partial = sum(p * mpf("0.5") ** m for m, p in enumerate(eval_P_table(401, mpf("0.5"))))
        assert abs(partial - 4 / mpmath.sqrt(3)) < mpf("1e-30")
        with pytest.raises(ValueError):
            taylor_check_G(0.5, 1, 5)


def test_lemma1():
    with mp.workprec(128):
        assert lemma1_bound_check(1, mpf("0.5"))
        for m in (10, 100, 1000):
            assert lemma1_bound_check(m, mpf("0.5"))
        assert lemma1_bound_check(50, mpc("0.9", 2))
        assert abs(lemma1_bound(4, mpf("0.5")) - mpmath.sqrt(mpmath.pi)) < mpf(2) ** -120
        with pytest.raises(ValueError, match="outside critical strip"):
            lemma1_bound(3, mpf("1.2"))


def test_decay_at_half():
    with mp.workprec(80):
        table = eval_P_table(1001, mpf("0.5"))
        worst = max(abs(table[m]) * mpmath.sqrt(m) for m in range(1, 1001))
        assert worst <= 2 * mpmath.sqrt(mpmath.pi)
        # exact values P_2j(1/2) = 2 C(2j, j) / 4^j
        assert abs(table[10] - mpf(2 * 252) / 4**5) < mpf(2) ** -70


def test_contiguous_relations():
    assert all(contiguous_check(m, FAM) for m in range(31))


def test_contiguous_m4_explicit():
    s = RationalPoly([0, 1], "s")
    p = FAM.P[4]
    lhs = s * p.taylor_shift(1) - (s - 1) * p.taylor_shift(-1)
    assert lhs.coeffs == tuple(9 * c for c in p.coeffs)


def test_moments_against_quadrature():
    with mp.workprec(SPEC.working_bits):
        for n in range(7):
            q = sech_moment(2 * n)
            res = integrate_sech_line(lambda t: t ** (2 * n), SPEC, even=True, scale=40.0 ** (2 * n))
            assert abs(res.value - mpf(q.numerator) / q.denominator) < mpf("1e-30")
    assert sech_moment(3) == 0


def test_gram_examples_and_identity():
    G = gram_matrix(FAM, 20)
    assert G[0][0] == 1 and G[2][2] == 1
    assert all(G[m][n] == (1 if m == n else 0) for m in range(21) for n in range(21))
    with pytest.raises(ValueError):
        gram_matrix(build_family(3), 5)


def test_certified_roots():
    count, roots = certify_real_roots(1, 128, FAM)
    assert count == 1 and roots == [0]
    count, roots = certify_real_roots(2, 128, FAM)
    assert count == 2 and roots == [mpf("-0.5"), mpf("0.5")]
    count, roots = certify_real_roots(3, 128, FAM)
    with mp.workprec(128):
        assert count == 3
        r5 = mpmath.sqrt(5) / 2
        for got, want in zip(roots, (-r5, 0, r5)):
            assert abs(got - want) < mpf(2) ** -126


def test_certified_roots_are_zeros_of_P_on_the_line():
    count, roots = certify_real_roots(12, 100, FAM)
    assert count == 12
    with mp.workprec(160):
        eps = mpf(2) ** -90
        for t in roots:
            # P_12(1/2 + it) = 2 R_12(t) changes sign across each certified root
            lo, hi = eval_P(12, mpc("0.5", t - eps)), eval_P(12, mpc("0.5", t + eps))
            assert abs(lo.imag) < mpf(2) ** -100 and lo.real * hi.real < 0


def test_laguerre_against_mpmath():
    with mp.workprec(100):
        for m in (0, 1, 5, 20):
            assert abs(laguerre(m, mpf("3.7")) - mpmath.laguerre(m, 0, mpf("3.7"))) < mpf(2) ** -80


@pytest.mark.parametrize("m,s", [(0, 1), (1, mpf("0.5")), (5, mpc("0.3", "0.7"))])
def test_mellin_laguerre(m, s):
    assert mellin_laguerre_check(m, s, SPEC) < mpf(2) ** -120


@pytest.mark.parametrize("m,s", [(0, mpf("0.5")), (1, mpf("0.3")), (4, mpc("0.5", 1)), (7, mpc("0.2", "-0.5")),
                                 (12, mpf("0.8"))])
def test_integral_representation(m, s):
    assert integral_representation_check(m, s, SPEC) < mpf(2) ** -110


def test_family_csv():
    text = family_csv(build_family(2))
    assert text.splitlines() == ["m,c_0,c_1,c_2", "0,2/1,,", "1,2/1,-4/1,", "2,2/1,-4/1,4/1"]


def test_family_cache_covers_request():
    assert family(12).max_m >= 12
    with pytest.raises(ValueError):
        build_family(-1)
