import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf, mpc

from ramzeta.specfun import (
    ZetaOracleConfig,
    digamma,
    euler_gamma,
    gamma,
    log_2pi,
    zeta_integers,
    zeta_reference,
)

EULER_50 = "0.57721566490153286060651209008240243104215933593992"
ZETA_HALF = "-1.4603545088095868128894991525152980124672293310126"


@pytest.mark.parametrize("prec", [53, 128, 300])
def test_euler_gamma_against_mpmath(prec):
    with mp.workprec(prec):
        assert abs(euler_gamma(prec) - mpmath.euler) <= mpf(2) ** (1 - prec)


def test_euler_gamma_frozen():
    with mp.workprec(170):
        assert abs(euler_gamma() - mpf(EULER_50)) < mpf("1e-49")


def test_log_2pi():
    with mp.workprec(128):
        assert abs(log_2pi() - mpmath.log(2 * mpmath.pi)) < mpf(2) ** -126


@given(st.floats(0.05, 40), st.floats(-40, 40))
@settings(max_examples=40, deadline=None)
def test_digamma_matches_mpmath(x, y):
    with mp.workprec(128):
        z = mpc(x, y)
        ref = mpmath.digamma(z)
        assert abs(digamma(z) - ref) <= mpf(2) ** -120 * max(1, abs(ref))


def test_digamma_real_and_known_values():
    with mp.workprec(128):
        assert abs(digamma(1) + mpmath.euler) < mpf(2) ** -125
        v = digamma(mpf("0.5"))
        assert isinstance(v, mpf)
        assert abs(v - (-mpmath.euler - 2 * mpmath.log(2))) < mpf(2) ** -124
        assert abs(digamma(mpf(-2.5)) - mpmath.digamma(-2.5)) < mpf(2) ** -120


@pytest.mark.parametrize("z", [0, -1, -7])
def test_digamma_poles(z):
    with pytest.raises(ValueError, match="digamma pole"):
        digamma(z)
    with pytest.raises(ValueError):
        gamma(z)


@pytest.mark.parametrize("method", ["alternating", "euler-maclaurin"])
@pytest.mark.parametrize("s", [mpf(2), mpf("0.5"), mpc("0.5", "14.134725"), mpc("0.1", 5), mpc(3, -5),
                               mpc("0.5", 30)])
def test_zeta_reference_methods(method, s):
    cfg = ZetaOracleConfig(method, precision=128)
    with mp.workprec(140):
        v = zeta_reference(s, cfg)
        assert abs(v - mpmath.zeta(s)) <= mpf(2) ** -120 * max(1, abs(v))


def test_zeta_reference_frozen_half():
    with mp.workprec(128):
        assert abs(zeta_reference(mpf("0.5")) - mpf(ZETA_HALF)) < mpf("1e-37")


def test_zeta_reference_left_half_plane():
    cfg = ZetaOracleConfig("euler-maclaurin", precision=128)
    with mp.workprec(128):
        assert abs(zeta_reference(mpf(-3), cfg) - mpf(1) / 120) < mpf(2) ** -120
        with pytest.raises(ValueError):
            zeta_reference(mpf(-3), ZetaOracleConfig(precision=128))


def test_zeta_pole_and_config_errors():
    with pytest.raises(ValueError, match="pole of zeta"):
        zeta_reference(1)
    with pytest.raises(ValueError):
        ZetaOracleConfig("bogus")
    with pytest.raises(ValueError):
        ZetaOracleConfig(terms=0)


def test_zeta_reference_explicit_terms_converges():
    with mp.workprec(100):
        few = zeta_reference(mpf(2), ZetaOracleConfig(terms=10, precision=100))
        many = zeta_reference(mpf(2), ZetaOracleConfig(terms=60, precision=100))
        exact = mpmath.pi**2 / 6
        assert abs(many - exact) < abs(few - exact)


def test_zeta_integers():
    table = zeta_integers(80, 200)
    with mp.workprec(200):
        for j, v in enumerate(table):
            assert abs(v - mpmath.zeta(j + 2)) < mpf(2) ** -195
    assert zeta_integers(1) == []
