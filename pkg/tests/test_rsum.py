import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf, mpc

from ramzeta.quadrature import QuadratureSpec
from ramzeta.rsum import (
    AnalyticFunction,
    phi_interpolant,
    plana_check,
    preset,
    ramanujan_sum,
    ramanujan_zeta,
    shift_sum,
    theorem4_check,
)

SPEC = QuadratureSpec(target_bits=128)
LOW = QuadratureSpec(target_bits=48)
TOL = mpf(2) ** -120


@pytest.mark.parametrize("name", ["harmonic", "one", "power:1", "power:3", "power:-2", "log", "digamma",
                                  "zeta:0.5", "zeta:-1.5", "zeta:0.5,14", "exp:1.5", "exp:-2",
                                  "shift:harmonic", "shift:log", "shift:power:2", "shift:zeta:3"])
def test_catalog_closed_forms(name):
    entry = preset(name)
    res = ramanujan_sum(entry.function, SPEC)
    assert res.quadrature.converged
    with mp.workprec(SPEC.working_bits):
        assert abs(res.value - entry.closed_form()) < TOL


def test_frozen_values():
    with mp.workprec(SPEC.working_bits):
        v = ramanujan_sum(preset("log").function, SPEC).value
        assert abs(v - mpf("-0.081061466795327258219670263594382360138602526362216")) < mpf("1e-45")
        v = ramanujan_sum(preset("zeta:-1.5").function, SPEC).value
        assert abs(v - mpf("0.37451479811016696405045701308929525453097501539903")) < mpf("1e-45")


def test_sine_trap_rejected():
    f = AnalyticFunction(lambda z: mpmath.sin(mpmath.pi * z), (math.pi, 0.0), True, "sin")
    with pytest.raises(ValueError, match="not in E\\^pi"):
        ramanujan_sum(f, SPEC)


def test_unknown_preset():
    with pytest.raises(KeyError):
        preset("nope")


def test_complex_valued_function():
    # f(x) = x^(-s) with complex s goes through the doubled-precision path
    entry = preset("zeta:0.3,2")
    assert not entry.function.real_on_reals
    res = ramanujan_sum(entry.function, SPEC)
    with mp.workprec(SPEC.working_bits):
        assert abs(res.value - entry.closed_form()) < TOL


@given(st.floats(0.1, 3.0), st.floats(-5, 5))
@settings(max_examples=15, deadline=None)
def test_ramanujan_zeta_against_reference(x, y):
    s = mpc(x, y)
    if abs(s - 1) < 0.05:
        return
    with mp.workprec(SPEC.working_bits):
        v = ramanujan_zeta(s, LOW)
        assert abs(v + 1 / (s - 1) - mpmath.zeta(s)) < mpf(2) ** -44


def test_ramanujan_zeta_entire_through_the_pole():
    with mp.workprec(SPEC.working_bits):
        assert abs(ramanujan_zeta(mpf(1), SPEC) - mpmath.euler) < TOL
        assert abs(ramanujan_zeta(mpf(-3), SPEC) - (mpf(1) / 120 + mpf(1) / 4)) < TOL


def test_phi_interpolant_partial_sums_and_digamma():
    h = preset("harmonic").function
    with mp.workprec(SPEC.working_bits):
        assert abs(phi_interpolant(h, 5, SPEC) - sum(mpf(1) / k for k in range(1, 6))) < TOL
        # phi(x) = Psi(x+1) + gamma for the harmonic function
        for z in (mpf("0.5"), mpc(2, 3)):
            ref = mpmath.digamma(z + 1) + mpmath.euler
            assert abs(phi_interpolant(h, z, SPEC) - ref) < TOL


@given(st.floats(0.2, 4.0), st.floats(-3, 3))
@settings(max_examples=8, deadline=None)
def test_phi_difference_property(x, y):
    f = preset("log").function
    z = mpc(x, y)
    with mp.workprec(LOW.working_bits):
        diff = phi_interpolant(f, z + 1, LOW) - phi_interpolant(f, z, LOW)
        assert abs(diff - f(z + 1)) < mpf(2) ** -40


def test_shift_sum():
    with mp.workprec(SPEC.working_bits):
        v = shift_sum(preset("harmonic").function, SPEC)
        assert abs(v - (mpmath.euler - 1 + mpmath.log(2))) < TOL


@pytest.mark.parametrize("name", ["harmonic", "log", "power:2", "exp:2"])
@pytest.mark.parametrize("n", [1, 2, 7])
def test_plana_check(name, n):
    f = preset(name).function
    scale = max(1, abs(f(mpf(n))))
    assert plana_check(f, n, SPEC) < TOL * scale


def test_plana_check_rejects_fast_growth():
    f = AnalyticFunction(lambda z: mpmath.exp(7j * z), (7.0, 0.0), False)
    with pytest.raises(ValueError):
        plana_check(f, 3, SPEC)


@pytest.mark.parametrize("name", ["harmonic", "exp:1"])
def test_theorem4(name):
    assert theorem4_check(preset(name).function, LOW) < mpf(2) ** -40
