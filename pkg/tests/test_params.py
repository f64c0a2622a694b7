"""Parameter validation and derived quantities."""

import math

import numpy as np
import pytest

from qwfluor.params import (
    ParameterError,
    SystemParams,
    derive,
    mu_squared,
    validate,
)


def test_reference_point_is_clean():
    # g=5, kappa=1.2, gamma=1: comfortably strong coupling
    rep = validate(SystemParams(g=5.0, kappa=1.2))
    assert rep.ok and not rep.fatal
    assert rep.warnings == ()
    assert abs(rep.strong_coupling_ratio - 5.0 / 1.2) < 1e-15


def test_weak_coupling_warns_but_is_not_fatal():
    rep = validate(SystemParams(g=1.0, kappa=1.2))
    assert not rep.fatal
    assert len(rep.warnings) == 1
    assert "coupling ratio" in rep.warnings[0]


@pytest.mark.parametrize(
    "kwargs",
    [
        {"g": 5.0, "kappa": 1.2, "epsilon": -1.0},
        {"g": 5.0, "kappa": 1.2, "r": -0.5},
        {"g": 0.0, "kappa": 1.2},
        {"g": -3.0, "kappa": 1.2},
        {"g": 5.0, "kappa": -1.0},
        {"g": 5.0, "kappa": 1.2, "gamma": 0.0},
        {"g": float("nan"), "kappa": 1.2},
        {"g": 5.0, "kappa": float("inf")},
        {"g": 5.0, "kappa": 1.2, "delta": float("nan")},
    ],
)
def test_fatal_inputs(kwargs):
    rep = validate(SystemParams(**kwargs))
    assert rep.fatal
    assert math.isnan(rep.strong_coupling_ratio)
    assert rep.as_dict()["strong_coupling_ratio"] is None
    with pytest.raises(ParameterError) as exc:
        derive(SystemParams(**kwargs))
    assert exc.value.report.errors


def test_derived_reference_values():
    p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=2.0, epsilon=0.0, r=1.8)
    d = derive(p)
    assert d.Gamma == 0.55
    assert d.mu == 5.0990195135927845  # sqrt(26)
    assert abs(d.N - 8.65638954153132) < 1e-12
    assert abs(d.M - 9.142727680307676) < 1e-12
    assert abs(d.chi_plus - math.sqrt(4 * 25 + (2 + 2 * d.mu) ** 2)) < 1e-12
    assert abs(d.chi_minus - math.sqrt(4 * 25 + (2 - 2 * d.mu) ** 2)) < 1e-12


def test_scale_covariance():
    # rates all in one unit: scaling them rescales Gamma, mu and leaves N, M alone
    rng = np.random.default_rng(7)
    for _ in range(20):
        g, kappa, gamma = rng.uniform(0.5, 8.0, 3)
        delta = rng.uniform(-4.0, 4.0)
        eps = rng.uniform(0.0, 5.0)
        r = rng.uniform(0.0, 2.0)
        s = rng.uniform(0.1, 10.0)
        d1 = derive(SystemParams(g, kappa, gamma, delta, eps, r))
        d2 = derive(SystemParams(s * g, s * kappa, s * gamma, s * delta, s * eps, r))
        assert abs(d2.Gamma - s * d1.Gamma) < 1e-12 * s * d1.Gamma
        assert abs(d2.mu - s * d1.mu) < 1e-12 * s * d1.mu
        assert abs(d2.chi_plus - s * d1.chi_plus) < 1e-10 * s * d1.chi_plus
        assert d2.N == d1.N
        assert d2.M == d1.M


def test_purity_relation_m_squared():
    # M^2 = N(N+1) characterizes a pure squeezed reservoir
    for r in np.linspace(0.0, 10.0, 41):
        d = derive(SystemParams(g=5.0, kappa=1.2, r=float(r)))
        lhs, rhs = d.M**2, d.N * (d.N + 1.0)
        scale = max(rhs, 1.0)
        assert abs(lhs - rhs) <= 1e-12 * scale


def test_mu_dominates_its_parts():
    rng = np.random.default_rng(11)
    for _ in range(50):
        p = SystemParams(
            g=rng.uniform(0.2, 10.0),
            kappa=rng.uniform(0.1, 3.0),
            gamma=rng.uniform(0.1, 3.0),
            delta=rng.uniform(-6.0, 6.0),
        )
        d = derive(p)
        assert d.mu >= p.g
        assert d.mu >= abs(p.delta) / 2.0
        assert d.Gamma > 0.0


def test_mu_squared_is_exact_on_resonance():
    p = SystemParams(g=3.7, kappa=1.2, delta=0.0)
    assert mu_squared(p) == 3.7 * 3.7
    assert p.g * p.g / mu_squared(p) == 1.0


def test_params_coerce_ints_to_floats():
    p = SystemParams(g=5, kappa=1, gamma=1, delta=2, epsilon=3, r=1)
    assert all(isinstance(v, float) for v in p.as_dict().values())
