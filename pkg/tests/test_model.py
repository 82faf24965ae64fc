import numpy as np
import pytest

from emkdv.errors import ConfigError, NonDecayingDatum
from emkdv.model import InitialProfile, ModelParams


def test_params_validation():
    assert ModelParams(0.0, 1.0).xi_merge == 0.0
    assert ModelParams(1.0, 1.0).xi_merge == pytest.approx(-0.45)
    with pytest.raises(ConfigError):
        ModelParams(1.0, 0.0)
    with pytest.raises(ConfigError):
        ModelParams(-1.0, 1.0)


def test_auto_support_meets_decay_tol():
    for kind, A in (("sech", 0.3), ("sech", 3.0), ("gaussian", 0.3)):
        p = InitialProfile(kind, A)
        assert abs(p(p.X)) < 1e-12 and abs(p(-p.X)) < 1e-12


def test_nondecaying_rejected():
    with pytest.raises(NonDecayingDatum):
        InitialProfile("sech", 0.3, X=5.0)


def test_tabulated_matches_formula_inside_and_vanishes_outside():
    xs = np.linspace(-30, 30, 2001)
    prof = InitialProfile("tabulated", samples=list(zip(xs, 0.3 / np.cosh(xs))))
    xq = np.array([-1.234, 0.0, 2.5])
    assert np.allclose(prof(xq), 0.3 / np.cosh(xq), atol=1e-8)
    assert prof(40.0) == 0.0
    assert prof.X == 30.0


def test_zero_profile():
    p = InitialProfile("sech", 0.0)
    assert p.is_zero and not np.any(p(np.linspace(-5, 5, 11)))
