"""Acceptance gate: exact identities, oracle equivalence, and dataset properties.

Every closed form shipped by the package is held against an independent
numerical check here: the moment-ODE integrator, the regression
correlator, the Gaussian photon-statistics reduction, the numeric
Fourier spectrum, and the truncated Fock-space master equation.
"""

import math

import numpy as np
import pytest

from qwfluor.datasets import to_csv
from qwfluor.envelopes import envelopes
from qwfluor.observables import (
    dressed_manifold,
    g2,
    intensity,
    intensity_ss,
    quad_variance,
    quad_variance_ss,
    resonant_squeezing_ss,
    spectrum,
)
from qwfluor.oracle import (
    FockConfig,
    TruncationTailWarning,
    g2_gaussian,
    integrate_moments,
    lindblad_evolve,
    steady_moments,
    variance_from_moments,
)
from qwfluor.params import SystemParams, derive
from qwfluor.presets import PRESETS, build_preset


def _sample_params(n, seed=20260815, eps_max=10.0):
    rng = np.random.default_rng(seed)
    return [
        SystemParams(
            g=rng.uniform(0.5, 10.0),
            kappa=rng.uniform(0.1, 3.0),
            gamma=rng.uniform(0.1, 3.0),
            delta=rng.uniform(-5.0, 5.0),
            epsilon=rng.uniform(0.0, eps_max),
            r=rng.uniform(0.0, 2.5),
        )
        for _ in range(n)
    ]


# 1. one initial exciton: the fluorescence intensity starts at exactly 1


def test_intensity_initial_identity_across_parameter_space():
    for p in _sample_params(100):
        assert abs(intensity(p, 0.0)[0] - 1.0) <= 1e-12


# 2. initial quadrature variances are 3 with the corrected transient
#    coefficient; the uncorrected printed variant demonstrably is not


def test_variance_initial_identity_and_literal_failure():
    sample = _sample_params(100)
    for p in sample:
        assert abs(quad_variance(p, 0.0, +1)[0] - 3.0) <= 1e-10
        assert abs(quad_variance(p, 0.0, -1)[0] - 3.0) <= 1e-10
    literal_dev = np.array(
        [abs(quad_variance(p, 0.0, +1, literal=True)[0] - 3.0) for p in sample]
    )
    assert np.all(literal_dev > 1e-8)
    assert literal_dev.max() > 0.1


# 3. resonant squeezing saturates at 50% for matched rates, and the
#    steady variance reduces to the one-line resonant form


def test_resonant_squeezing_saturation_and_reduction():
    p = SystemParams(g=5.0, kappa=1.0, gamma=1.0, delta=0.0, r=20.0)
    assert abs(resonant_squeezing_ss(p) - 0.5) < 1e-8
    for kappa in (1.0, 1.2):
        for r in np.linspace(0.0, 5.0, 26):
            q = SystemParams(g=5.0, kappa=kappa, gamma=1.0, delta=0.0, r=float(r))
            assert abs(quad_variance_ss(q, -1) - resonant_squeezing_ss(q)) < 1e-12


# 4. the squeezing window in r: below vacuum at r=1, back above it at r=1.5


def _steady_minus_reference(p):
    # independent transcription of the steady-state minus-quadrature variance
    N = math.sinh(p.r) ** 2
    G = (p.kappa + p.gamma) / 4.0
    mu2 = p.g**2 + 0.25 * p.delta**2
    denom = p.delta**2 + 4.0 * G**2
    s_minus = 0.5 * math.expm1(-2.0 * p.r)
    return 1.0 + (p.kappa * p.g**2 / mu2) * (N * p.delta**2 + 4.0 * G**2 * s_minus) / (
        2.0 * G * denom
    )


def test_squeezing_window_opens_then_closes():
    base = dict(g=5.0, kappa=1.2, gamma=1.0, delta=0.5, epsilon=0.0)
    inside = SystemParams(**base, r=1.0)
    outside = SystemParams(**base, r=1.5)
    v_in = quad_variance_ss(inside, -1)
    v_out = quad_variance_ss(outside, -1)
    assert abs(v_in - _steady_minus_reference(inside)) < 1e-3
    assert abs(v_out - _steady_minus_reference(outside)) < 1e-3
    assert abs(v_in - 0.8674439488404303) < 1e-12
    assert abs(v_out - 1.4163282398000847) < 1e-12
    assert v_in < 1.0 < v_out


# 5. photon bunching at zero delay, uncorrelated at long delay


def test_photon_bunching_grid():
    Gamma = (1.2 + 1.0) / 4.0
    for r in (0.25, 0.5, 1.0, 2.0):
        for delta in (0.0, 1.0, 2.0):
            for eps in (0.0, 3.0, 7.0):
                p = SystemParams(
                    g=5.0, kappa=1.2, gamma=1.0, delta=delta, epsilon=eps, r=r
                )
                assert g2(p, 0.0)[0] > 1.0
                assert abs(g2(p, 50.0 / Gamma)[0] - 1.0) < 1e-6


# 6. zero-delay value for a squeezed-reservoir-only source: 3 + 1/N,
#    reproduced by the Gaussian-factorized oracle at strong coupling


def test_g2_zero_delay_reduction_and_gaussian_oracle():
    for r in (0.5, 1.0, 2.0):
        p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=0.0, epsilon=0.0, r=r)
        d = derive(p)
        expected = 3.0 + 1.0 / d.N
        assert abs(g2(p, 0.0)[0] - expected) <= 1e-9
        strong = SystemParams(g=40.0, kappa=1.2, gamma=1.0, delta=0.0, epsilon=0.0, r=r)
        num = g2_gaussian(strong, [0.0])[0]
        assert abs(num - expected) / expected < 0.01


# 7. the closed forms converge to the moment oracle as coupling grows


def _uniform_rel_error(approx, reference):
    return float(np.max(np.abs(approx - reference)) / np.max(np.abs(reference)))


def test_closed_forms_converge_to_moment_oracle():
    ts = np.linspace(0.0, 10.0, 201)
    for delta in (0.0, 2.0):
        for eps in (0.0, 5.0):
            int_errs, var_errs = [], []
            for g in (5.0, 10.0, 20.0, 40.0):
                p = SystemParams(
                    g=g, kappa=1.2, gamma=1.0, delta=delta, epsilon=eps, r=1.0
                )
                traj = integrate_moments(p, ts)
                int_errs.append(_uniform_rel_error(intensity(p, ts), traj.n_bb.real))
                vp_ref, vm_ref = variance_from_moments(traj)
                err_p = _uniform_rel_error(quad_variance(p, ts, +1), vp_ref)
                err_m = _uniform_rel_error(quad_variance(p, ts, -1), vm_ref)
                var_errs.append(max(err_p, err_m))
            assert int_errs == sorted(int_errs, reverse=True), (delta, eps, int_errs)
            assert var_errs == sorted(var_errs, reverse=True), (delta, eps, var_errs)
            assert int_errs[-1] < 0.02
            assert var_errs[-1] < 0.02


# 8. spectral doublet: centers, widths, and total weight


def _refine_peak(x, y, i):
    # 3-point parabolic refinement around a grid argmax
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    shift = 0.5 * (y0 - y2) / (y0 - 2.0 * y1 + y2)
    return x[i] + shift * (x[1] - x[0])


def _fwhm(x, y, i):
    half = y[i] / 2.0
    j = i
    while y[j] > half:
        j -= 1
    left = np.interp(half, [y[j], y[j + 1]], [x[j], x[j + 1]])
    k = i
    while y[k] > half:
        k += 1
    right = np.interp(half, [y[k], y[k - 1]], [x[k], x[k - 1]])
    return right - left


def test_spectrum_doublet_structure():
    for delta in (0.0, 2.0, 4.0):
        p = SystemParams(g=6.0, kappa=1.2, gamma=1.0, delta=delta, epsilon=0.0, r=1.0)
        d = derive(p)
        step = d.Gamma / 20.0
        lo = 0.5 * delta - d.mu - 4.0
        hi = 0.5 * delta + d.mu + 4.0
        grid = np.arange(lo, hi + step, step)
        vals = spectrum(p, grid).incoherent

        mid = len(grid) // 2
        for target, sl in (
            (0.5 * delta - d.mu, slice(0, mid)),
            (0.5 * delta + d.mu, slice(mid, len(grid))),
        ):
            i = sl.start + int(np.argmax(vals[sl]))
            center = _refine_peak(grid, vals, i)
            assert abs(center - target) <= step
            width = _fwhm(grid, vals, i)
            assert abs(width - 2.0 * d.Gamma) <= 0.05 * 2.0 * d.Gamma

        wide = np.linspace(0.5 * delta - d.mu - 150 * d.Gamma,
                           0.5 * delta + d.mu + 150 * d.Gamma, 40001)
        total = np.trapezoid(spectrum(p, wide).incoherent, wide)
        assert abs(total - intensity_ss(p)) < 0.01 * intensity_ss(p)


# 9. truncated Fock-space master equation agrees with the moment oracle


def test_master_equation_exact_single_excitation():
    p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=2.0, epsilon=0.0, r=0.0)
    cfg = FockConfig(cavity_dim=3, exciton_dim=3, t_max=8.0, n_times=17)
    res = lindblad_evolve(p, cfg)
    traj = integrate_moments(p, res.times)
    assert np.max(np.abs(res.n_bb - traj.n_bb.real)) < 1e-8
    assert np.max(np.abs(res.n_aa - traj.n_aa.real)) < 1e-8


def test_master_equation_driven_squeezed_steady_population():
    p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=0.0, epsilon=0.2, r=0.5)
    cfg = FockConfig(cavity_dim=12, exciton_dim=6, t_max=15.0, n_times=31)
    with pytest.warns(TruncationTailWarning):
        res = lindblad_evolve(p, cfg)
    target = steady_moments(p).n_bb.real
    assert abs(res.n_bb[-1] - target) / target < 0.02
    assert res.trace_error < 1e-9
    assert res.tail_mass < 1e-3  # documented truncation for this box


# 10. dressed-state ladder and the published-table discrepancy


def test_dressed_eigensystem_against_direct_diagonalization():
    for g_ in (3.0, 5.0, 8.0):
        for delta in (0.0, 1.0, 3.0):
            p = SystemParams(g=g_, kappa=1.2, gamma=1.0, delta=delta)
            d = derive(p)
            m1 = dressed_manifold(p, 1)
            assert np.max(np.abs(m1.eigenvalues - np.array(
                [0.5 * delta + d.mu, 0.5 * delta - d.mu]))) < 1e-10
            m2 = dressed_manifold(p, 2)
            assert np.max(np.abs(m2.eigenvalues - np.array(
                [delta + 2 * d.mu, delta, delta - 2 * d.mu]))) < 1e-10
            gaps = -np.diff(m2.eigenvalues)
            assert abs(gaps[0] - 2.0 * d.mu) < 1e-10
            assert abs(gaps[1] - 2.0 * d.mu) < 1e-10


def test_known_typo_lower_polariton_row():
    # the published lower-state column reuses the upper-state numerator; the
    # corrected ray matches diagonalization, the printed one is orthogonal
    p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=2.0)
    d = derive(p)
    m = dressed_manifold(p, 1)
    lower = m.eigenvectors[:, 1]
    printed = np.array([p.delta + 2.0 * d.mu, 2.0j * p.g]) / d.chi_minus
    corrected = np.array([p.delta - 2.0 * d.mu, 2.0j * p.g]) / d.chi_minus
    assert abs(np.vdot(printed, lower)) < 1e-10
    assert abs(abs(np.vdot(corrected, lower)) - 1.0) < 1e-12


# 11. figure datasets: deterministic bytes and physical trends


def test_figure_presets_are_deterministic():
    for name in PRESETS:
        first = {label: to_csv(ds) for label, ds in build_preset(name)}
        second = {label: to_csv(ds) for label, ds in build_preset(name)}
        assert first == second


def test_figure_families_follow_steady_intensity_trends():
    def ss_from(name):
        out = []
        for _, ds in build_preset(name):
            p = SystemParams(
                g=float(ds.meta["g"]), kappa=float(ds.meta["kappa"]),
                gamma=float(ds.meta["gamma"]), delta=float(ds.meta["delta"]),
                epsilon=float(ds.meta["epsilon"]), r=float(ds.meta["r"]),
            )
            out.append(intensity_ss(p))
        return out

    eps_family = ss_from("fig1")
    assert all(a < b for a, b in zip(eps_family, eps_family[1:]))
    r_family = ss_from("fig2")
    assert all(a < b for a, b in zip(r_family, r_family[1:]))
    detuning_family = ss_from("fig3")
    assert all(a > b for a, b in zip(detuning_family, detuning_family[1:]))


# supporting identity: the transient envelopes are the strong-coupling
# propagator, exact at matched damping rates


def test_envelope_propagator_limits():
    from scipy.linalg import expm

    from qwfluor.oracle import drift_matrix

    def residual(p, t):
        e = envelopes(p, t)
        E = np.array([[e.eta_plus[0], e.eta3[0]], [-e.eta3[0], e.eta_minus[0]]])
        return np.max(np.abs(E - expm(drift_matrix(p).matrix * t)))

    exact = SystemParams(g=5.0, kappa=1.0, gamma=1.0, delta=2.0)
    assert max(residual(exact, t) for t in (0.5, 1.5, 3.0)) < 1e-12

    errs = [
        max(residual(SystemParams(g=g, kappa=1.2, gamma=1.0, delta=2.0), t)
            for t in (0.5, 1.5, 3.0))
        for g in (5.0, 10.0, 20.0, 40.0)
    ]
    assert errs == sorted(errs, reverse=True)
    assert errs[-1] < errs[0] / 4.0
