import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from emkdv.asymptotics import (arg_gamma_i, beta_X, carrier_phases, chi, decay_region_bound, delta, envelope,
                               leading_order, nu)
from emkdv.errors import MissingScattering, WrongRegion, ZeroReflection
from emkdv.model import InitialProfile, ModelParams
from emkdv.scattering import ReflectionData, compute_scattering, default_grid

P = ModelParams(1.0, 1.0)
K1, K2 = 0.138196601125010515, 0.361803398874989485
# mpmath references
NU_03 = 0.0137156063410353265
NU_1 = 0.110317800076325797
ARG_GAMMA_NU1 = -1.63393890091790166


def _const_data(rval, kmax=2.0):
    k = default_grid(0.01, kmax)
    r = np.full(k.size, rval, dtype=complex)
    return ReflectionData(k, np.ones_like(r), np.conj(r), r, 20.0, 1e-12)


def test_nu_values():
    assert nu(0) == 0
    assert nu(1.0) == pytest.approx(NU_1, abs=1e-15)
    assert nu(0.3) == pytest.approx(NU_03, abs=1e-15)
    assert nu(0.3j) == nu(0.3)


def test_beta_x():
    assert beta_X(0) == 0
    with pytest.raises(ZeroReflection):
        beta_X(0, strict=True)
    q = 0.3 + 0.4j
    assert abs(beta_X(q)) ** 2 == pytest.approx(nu(q), rel=1e-14)
    b = beta_X(1.0)
    assert abs(b) == pytest.approx(np.sqrt(NU_1), rel=1e-14)
    assert b / abs(b) == pytest.approx(np.exp(1j * (np.pi / 4 - ARG_GAMMA_NU1)), abs=1e-13)


def test_arg_gamma_against_mpmath():
    mpmath = pytest.importorskip("mpmath")
    for v in (1e-4, 0.05, NU_1, 0.7, 2.5):
        ref = float(mpmath.arg(mpmath.gamma(1j * v)))
        assert np.exp(1j * arg_gamma_i(v)) == pytest.approx(np.exp(1j * ref), abs=1e-13)


def test_chi_trivial_cases():
    assert chi(_const_data(0.0), K1, K2, 1) == 0
    assert chi(_const_data(0.5 + 0.2j), K1, K2, 2) == 0


def test_chi_self_convergence_and_purity(sech_data):
    for which in (1, 2):
        c8 = chi(sech_data, K1, K2, which, n=8)
        c16 = chi(sech_data, K1, K2, which, n=16)
        assert abs(c8 - c16) < 1e-9
        assert c8.real == 0.0 and c8.imag != 0


def test_chi_missing_scattering():
    with pytest.raises(MissingScattering):
        chi(_const_data(0.1, kmax=0.2), K1, K2, 1)


def test_delta_lemma_properties(sech_data):
    d = sech_data
    z = np.array([0.5 + 0.3j, -0.2 + 0.1j, 2j, 0.25 + 1e-3j])
    # delta(k) conj(delta(conj k)) = 1
    assert np.allclose(delta(z, d, K1, K2) * np.conj(delta(np.conj(z), d, K1, K2)), 1, atol=1e-13)
    # jump on the cut: delta_+ = delta_- (1 + |r|^2)
    for s in (0.2, 0.3, -0.25):
        ratio = delta(s + 1e-12j, d, K1, K2) / delta(s - 1e-12j, d, K1, K2)
        assert ratio[0] == pytest.approx(1 + abs(d.reflection_at(s)) ** 2, rel=1e-9)
    big = delta(np.array([1e4, 1e4j]), d, K1, K2)
    assert np.all(np.abs(big - 1) < 1e-4)


def test_zero_reflection_gives_zero():
    val, env = leading_order(-20.0, 100.0, _const_data(0.0), P)
    assert val == 0.0 and env.amp1 == env.amp2 == 0


def test_envelope_identities(sech_data):
    env = envelope(-0.2, sech_data, P)
    assert env.amp1**2 * env.k1 * (3 - 40 * env.k1**2) == pytest.approx(env.nu1, rel=1e-13)
    assert env.amp2**2 * env.k2 * (40 * env.k2**2 - 3) == pytest.approx(env.nu2, rel=1e-13)


def test_phase_offset_reduction(sech_data):
    # r real positive at k2 => arg r(k2) = 0 and phi_b reduces term by term
    r2 = sech_data.reflection_at(K2)
    env = envelope(-0.2, sech_data, P)
    I2 = -2 * np.pi * env.chi2_at_k2.imag
    expect = np.pi / 4 - np.angle(r2) - arg_gamma_i(env.nu2) + 2 * env.nu2 * np.log(2 * K2 / (K1 + K2)) - I2 / np.pi
    assert env.phi_b == pytest.approx(expect, abs=1e-14)
    if abs(r2.imag) < 1e-14 and r2.real > 0:
        assert np.angle(r2) == 0


def test_leading_order_consistency(sech_data):
    val, env = leading_order(-80.0, 400.0, sech_data, P)
    assert (env.phase1, env.phase2) == carrier_phases(env, 400.0, P)
    uas = env.amp1 * np.cos(env.phase1) + env.amp2 * np.cos(env.phase2)
    assert val == pytest.approx(-uas / 20.0, abs=1e-16)
    assert np.isfinite(val)


def test_region_errors(sech_data):
    with pytest.raises(WrongRegion):
        leading_order(-100.0, 100.0, sech_data, P)
    with pytest.raises(WrongRegion):
        leading_order(-0.4, 2.0, sech_data, P)
    # merged-point guard refuses instead of returning NaN
    with pytest.raises(WrongRegion):
        leading_order(-45.0, 100.0, sech_data, P)
    assert decay_region_bound(-100.0, 100.0, sech_data, P) == (0.0, "rapid_decay")
    with pytest.raises(WrongRegion):
        decay_region_bound(-20.0, 100.0, sech_data, P)


def test_near_merge_is_finite(sech_data):
    val, env = leading_order(-0.45 * 100 + 1e-5, 100.0, sech_data, P)
    assert np.isfinite(val) and env.k2 > env.k1


@settings(max_examples=40, deadline=None)
@given(st.floats(0.001, 0.999))
def test_amplitude_positivity_sweep(frac):
    xi = -0.45 * frac
    data = _const_data(0.4)
    env = envelope(xi, data, P)
    assert env.amp1 > 0 and env.amp2 > 0
    assert 3 - 40 * env.k1**2 > 0 and 40 * env.k2**2 - 3 > 0


@settings(max_examples=50, deadline=None)
@given(st.floats(0, 10), st.floats(0, 10))
def test_nu_monotone(a, b):
    if a < b:
        assert nu(a) <= nu(b)


def test_output_real_for_complex_reflection():
    data = compute_scattering(InitialProfile("gaussian", 0.3), default_grid(0.01, 5.0))
    val, _ = leading_order(-30.0, 100.0, data, P)
    assert isinstance(val, float) and np.isfinite(val)
