"""Independent numerical models used to check the closed forms.

Three layers, all free of the strong-coupling approximation:

1. Moment equations.  The Heisenberg-Langevin equations are linear, so
   first and second moments close on themselves.  The eight complex
   moments (in fixed order)

       <a>, <b>, <a+a>, <b+b>, <a+b>, <aa>, <bb>, <ab>

   obey an affine ODE system that we integrate (transients) or solve
   algebraically (steady state).  Conjugate moments are implied, which
   makes the system real-linear rather than complex-linear; the steady
   state is therefore solved on the 16-dimensional real embedding.

2. Quantum regression.  Two-time correlators <b+(0) x(tau)> and
   <b(0) x(tau)> obey the same 2x2 mean drift, giving the exact field
   correlation, the emission spectrum (half-line Fourier transform) and,
   through the Gaussian factorization valid for this linear model, the
   exact intensity correlation g2.

3. Truncated-Fock master equation.  A brute-force density-matrix
   integration including the squeezed reservoir's two-photon terms.
   Slowest, but independent of moment algebra entirely.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .params import SystemParams, derive

__all__ = [
    "MomentState",
    "MomentTrajectory",
    "DriftMatrix",
    "FockConfig",
    "LindbladResult",
    "TruncationTailWarning",
    "TruncationTailError",
    "WindowError",
    "drift_matrix",
    "moment_rhs",
    "integrate_moments",
    "steady_moments",
    "correlation_regression",
    "g2_gaussian",
    "variance_from_moments",
    "spectrum_numeric",
    "lindblad_evolve",
]

_MOMENT_NAMES = ("mean_a", "mean_b", "n_aa", "n_bb", "c_ab", "s_aa", "s_bb", "s_ab")


class WindowError(RuntimeError):
    """The correlation window did not decay enough for a clean transform."""


class TruncationTailWarning(UserWarning):
    pass


class TruncationTailError(RuntimeError):
    """Fock-space truncation tail exceeded the configured bound.

    Carries the measured tail mass in ``tail_mass``.
    """

    def __init__(self, tail_mass: float, bound: float):
        super().__init__(
            f"truncation tail population {tail_mass:.3e} exceeds bound {bound:.3e}; "
            "increase cavity_dim/exciton_dim"
        )
        self.tail_mass = tail_mass
        self.bound = bound


@dataclass(frozen=True)
class MomentState:
    """First and second moments of the photon/exciton pair at one instant."""

    mean_a: complex = 0.0
    mean_b: complex = 0.0
    n_aa: complex = 0.0
    n_bb: complex = 0.0
    c_ab: complex = 0.0
    s_aa: complex = 0.0
    s_bb: complex = 0.0
    s_ab: complex = 0.0

    @classmethod
    def vacuum(cls) -> "MomentState":
        return cls()

    @classmethod
    def single_exciton(cls) -> "MomentState":
        """One bare exciton, empty cavity: the transient initial condition."""
        return cls(n_bb=1.0)

    def as_vector(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in _MOMENT_NAMES], dtype=complex)

    @classmethod
    def from_vector(cls, y: np.ndarray) -> "MomentState":
        return cls(**{n: complex(v) for n, v in zip(_MOMENT_NAMES, y)})

    def fluctuation_gram(self) -> np.ndarray:
        """Hermitian matrix <zeta zeta+> of centered fluctuations.

        zeta = (da, db, da+, db+).  Physical states give a positive
        semidefinite matrix; a negative eigenvalue beyond numerical
        noise marks an unphysical moment set.
        """
        naa = self.n_aa - np.conj(self.mean_a) * self.mean_a
        nbb = self.n_bb - np.conj(self.mean_b) * self.mean_b
        c = self.c_ab - np.conj(self.mean_a) * self.mean_b
        saa = self.s_aa - self.mean_a * self.mean_a
        sbb = self.s_bb - self.mean_b * self.mean_b
        sab = self.s_ab - self.mean_a * self.mean_b
        return np.array(
            [
                [naa + 1.0, np.conj(c), saa, sab],
                [c, nbb + 1.0, sab, sbb],
                [np.conj(saa), np.conj(sab), naa, c],
                [np.conj(sab), np.conj(sbb), np.conj(c), nbb],
            ],
            dtype=complex,
        )

    def physicality(self) -> float:
        """Smallest eigenvalue of the fluctuation matrix (>= -1e-8 for sane states)."""
        return float(np.linalg.eigvalsh(self.fluctuation_gram()).min())


@dataclass(frozen=True)
class MomentTrajectory:
    times: np.ndarray
    mean_a: np.ndarray
    mean_b: np.ndarray
    n_aa: np.ndarray
    n_bb: np.ndarray
    c_ab: np.ndarray
    s_aa: np.ndarray
    s_bb: np.ndarray
    s_ab: np.ndarray

    def state_at(self, i: int) -> MomentState:
        return MomentState(
            **{n: complex(getattr(self, n)[i]) for n in _MOMENT_NAMES}
        )


@dataclass(frozen=True)
class DriftMatrix:
    """Mean-field drift d<v>/dt = matrix @ <v> + drive, v = (a, b)."""

    matrix: np.ndarray
    drive: np.ndarray


def drift_matrix(p: SystemParams) -> DriftMatrix:
    derive(p)
    m = np.array(
        [
            [-0.5 * p.kappa, p.g],
            [-p.g, -(0.5 * p.gamma + 1j * p.delta)],
        ],
        dtype=complex,
    )
    return DriftMatrix(matrix=m, drive=np.array([p.epsilon, 0.0], dtype=complex))


def moment_rhs(p: SystemParams):
    """Right-hand side of the closed moment system (8 complex components)."""
    d = derive(p)
    g, kappa, gamma, delta, eps = p.g, p.kappa, p.gamma, p.delta, p.epsilon
    N, M = d.N, d.M
    k2 = 0.5 * kappa
    gb = 0.5 * gamma + 1j * delta
    sig = k2 + gb

    def rhs(t, y):
        ma, mb, naa, nbb, cab, saa, sbb, sab = y
        out = np.empty(8, dtype=complex)
        out[0] = -k2 * ma + g * mb + eps
        out[1] = -gb * mb - g * ma
        out[2] = -kappa * naa + g * (cab + np.conj(cab)) + eps * (ma + np.conj(ma)) + kappa * N
        out[3] = -gamma * nbb - g * (cab + np.conj(cab))
        out[4] = -sig * cab + g * (nbb - naa) + eps * mb
        out[5] = -kappa * saa + 2.0 * g * sab + 2.0 * eps * ma + kappa * M
        out[6] = -(gamma + 2j * delta) * sbb - 2.0 * g * sab
        out[7] = -sig * sab + g * (sbb - saa) + eps * mb
        return out

    return rhs


def integrate_moments(
    p: SystemParams,
    times,
    init: MomentState | None = None,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> MomentTrajectory:
    """Integrate the moment system from ``init`` (default: one bare exciton)."""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if init is None:
        init = MomentState.single_exciton()
    rhs = moment_rhs(p)
    sol = solve_ivp(
        rhs,
        (times[0], times[-1]),
        init.as_vector(),
        t_eval=times,
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise RuntimeError(f"moment integration failed: {sol.message}")
    data = {n: sol.y[i] for i, n in enumerate(_MOMENT_NAMES)}
    return MomentTrajectory(times=times, **data)


def _real_embedding(p: SystemParams):
    # The rhs is affine over the reals (conjugates appear), so probe it
    # with unit vectors to assemble the 16x16 real system A x + c.
    rhs = moment_rhs(p)
    n = 8

    def to_real(y: np.ndarray) -> np.ndarray:
        return np.concatenate([y.real, y.imag])

    def to_cplx(x: np.ndarray) -> np.ndarray:
        return x[:n] + 1j * x[n:]

    c = to_real(rhs(0.0, np.zeros(n, dtype=complex)))
    a = np.zeros((2 * n, 2 * n))
    for j in range(2 * n):
        e = np.zeros(2 * n)
        e[j] = 1.0
        a[:, j] = to_real(rhs(0.0, to_cplx(e))) - c
    return a, c, to_cplx


def steady_moments(p: SystemParams) -> MomentState:
    """Algebraic steady state of the moment system."""
    a, c, to_cplx = _real_embedding(p)
    x = np.linalg.solve(a, -c)
    return MomentState.from_vector(to_cplx(x))


def _regression_pair(p: SystemParams, taus: np.ndarray):
    """Raw two-time correlators from the quantum regression theorem.

    Returns (steady state, <b+(0) b(tau)>, <b(0) b(tau)>).  Both vector
    correlators obey v' = A v + <x(0)> (eps, 0) with the mean drift A.
    """
    ss = steady_moments(p)
    dm = drift_matrix(p)
    a = dm.matrix
    evals, vec = np.linalg.eig(a)
    vec_inv = np.linalg.inv(vec)
    src = np.array([p.epsilon, 0.0], dtype=complex)

    def solve(v0: np.ndarray, amp: complex) -> np.ndarray:
        vinf = -np.linalg.solve(a, amp * src)
        coef = vec_inv @ (v0 - vinf)
        # rows: tau, columns: (a, b) components
        ph = np.exp(np.outer(taus, evals))
        return (ph * coef) @ vec.T + vinf

    v = solve(np.array([np.conj(ss.c_ab), ss.n_bb], dtype=complex), np.conj(ss.mean_b))
    u = solve(np.array([ss.s_ab, ss.s_bb], dtype=complex), ss.mean_b)
    return ss, v[:, 1], u[:, 1]


def correlation_regression(p: SystemParams, taus, anomalous: bool = False) -> np.ndarray:
    """Exact steady-state <b+(0) b(tau)> (or <b(0) b(tau)> with ``anomalous``)."""
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    _, c_raw, d_raw = _regression_pair(p, taus)
    return d_raw if anomalous else c_raw


def g2_gaussian(p: SystemParams, taus) -> np.ndarray:
    """Exact g2(tau) for the linear model via Gaussian moment factorization.

    With beta = <b>_ss, n and the centered correlators C, D:

        g2 = 1 + [2 |beta|^2 Re C + 2 Re(conj(beta)^2 D) + |C|^2 + |D|^2]
                 / (|beta|^2 + n)^2
    """
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    ss, c_raw, d_raw = _regression_pair(p, taus)
    beta = ss.mean_b
    n = (ss.n_bb - abs(beta) ** 2).real
    c = c_raw - np.conj(beta) * beta
    dcorr = d_raw - beta * beta
    denom = (abs(beta) ** 2 + n) ** 2
    if denom == 0.0:
        raise ZeroDivisionError("steady intensity vanishes; g2 undefined")
    num = (
        2.0 * abs(beta) ** 2 * c.real
        + 2.0 * (np.conj(beta) ** 2 * dcorr).real
        + np.abs(c) ** 2
        + np.abs(dcorr) ** 2
    )
    return 1.0 + num / denom


def variance_from_moments(
    traj: MomentTrajectory | MomentState,
) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature variances (b_plus, b_minus) from exciton moments.

    Uses Delta b_pm^2 = 1 + 2<b+b> +- 2 Re<bb> - (2 Re<b>)^2 resp.
    (2 Im<b>)^2, valid with the conjugate-moment convention above.
    """
    if isinstance(traj, MomentState):
        nbb = np.asarray(traj.n_bb)
        sbb = np.asarray(traj.s_bb)
        mb = np.asarray(traj.mean_b)
    else:
        nbb, sbb, mb = traj.n_bb, traj.s_bb, traj.mean_b
    vplus = 1.0 + 2.0 * nbb.real + 2.0 * sbb.real - (2.0 * mb.real) ** 2
    vminus = 1.0 + 2.0 * nbb.real - 2.0 * sbb.real - (2.0 * mb.imag) ** 2
    return vplus, vminus


def spectrum_numeric(
    p: SystemParams,
    omegas,
    decay_tol: float = 1e-10,
    points_per_cycle: int = 60,
    horizon: float = 26.0,
) -> np.ndarray:
    """Incoherent emission spectrum by half-line Fourier transform.

    Integrates the centered correlation out to ``horizon / Gamma`` and
    checks it has decayed below ``decay_tol`` of its initial value
    (raises :class:`WindowError` otherwise).  ``omegas`` are offsets
    from the drive frequency.
    """
    d = derive(p)
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    t_max = horizon / d.Gamma
    dt = (np.pi / d.mu) / points_per_cycle
    taus = np.arange(0.0, t_max, dt)
    ss, c_raw, _ = _regression_pair(p, taus)
    c = c_raw - np.conj(ss.mean_b) * ss.mean_b
    c0 = abs(c[0])
    if c0 > 0.0 and abs(c[-1]) > decay_tol * c0:
        raise WindowError(
            f"correlation decayed to {abs(c[-1]) / c0:.2e} of its initial value "
            f"at tau = {t_max:.3g}; want below {decay_tol:.1e}"
        )
    w = np.ones_like(taus)
    w[0] = w[-1] = 0.5
    phases = np.exp(1j * np.outer(omegas, taus))
    return (dt / np.pi) * np.real(phases @ (w * c))


@dataclass(frozen=True)
class FockConfig:
    """Geometry and controls for the truncated-Fock master equation.

    ``tail_bound`` caps the allowed population of the highest retained
    Fock level of either mode; with ``strict_tail`` the bound is
    enforced by raising :class:`TruncationTailError`, otherwise a
    violation only warns (the measured tail is always reported in the
    result).
    """

    cavity_dim: int = 12
    exciton_dim: int = 6
    t_max: float = 15.0
    n_times: int = 31
    rtol: float = 1e-9
    atol: float = 1e-12
    tail_bound: float = 1e-6
    strict_tail: bool = False

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_times)


@dataclass(frozen=True)
class LindbladResult:
    times: np.ndarray
    n_aa: np.ndarray
    n_bb: np.ndarray
    var_plus: np.ndarray
    var_minus: np.ndarray
    trace_error: float
    tail_mass: float


def _destroy(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, dim)), 1)


def lindblad_evolve(
    p: SystemParams, config: FockConfig | None = None
) -> LindbladResult:
    """Integrate the full master equation from one bare exciton.

    The cavity couples to the squeezed reservoir: photon loss at
    kappa (N+1), gain at kappa N, plus the two-photon (M) terms with the
    sign convention matching the moment equations.  Trace preservation
    beyond 1e-9 or a truncation-tail violation under ``strict_tail``
    raise; the measured tail mass is part of the result either way.
    """
    d = derive(p)
    if config is None:
        config = FockConfig()
    dc, de = config.cavity_dim, config.exciton_dim
    if dc < 2 or de < 2:
        raise ValueError("Fock dimensions must be at least 2")

    ic = np.eye(dc)
    ie = np.eye(de)
    a = np.kron(_destroy(dc), ie)
    b = np.kron(ic, _destroy(de))
    ad = a.conj().T
    bd = b.conj().T
    h = p.delta * (bd @ b) + 1j * p.epsilon * (ad - a) + 1j * p.g * (ad @ b - a @ bd)
    a2 = a @ a
    ad2 = ad @ ad
    kN = p.kappa * d.N
    kN1 = p.kappa * (d.N + 1.0)
    kM = p.kappa * d.M

    def dissip(L, Ld, rho):
        return L @ rho @ Ld - 0.5 * (Ld @ L @ rho + rho @ Ld @ L)

    def rhs(t, y):
        rho = y.reshape(dc * de, dc * de)
        out = -1j * (h @ rho - rho @ h)
        out += kN1 * dissip(a, ad, rho)
        out += kN * dissip(ad, a, rho)
        out -= kM * (ad @ rho @ ad - 0.5 * (ad2 @ rho + rho @ ad2))
        out -= kM * (a @ rho @ a - 0.5 * (a2 @ rho + rho @ a2))
        out += p.gamma * dissip(b, bd, rho)
        return out.ravel()

    # |0>_cavity |1>_exciton with row-major kron(cavity, exciton)
    psi = np.zeros(dc * de, dtype=complex)
    psi[1] = 1.0
    rho0 = np.outer(psi, psi.conj())

    times = config.times()
    sol = solve_ivp(
        rhs,
        (0.0, times[-1]),
        rho0.ravel(),
        t_eval=times,
        method="DOP853",
        rtol=config.rtol,
        atol=config.atol,
    )
    if not sol.success:
        raise RuntimeError(f"master equation integration failed: {sol.message}")

    naa_op = ad @ a
    nbb_op = bd @ b
    n_aa = np.empty(len(times))
    n_bb = np.empty(len(times))
    vp = np.empty(len(times))
    vm = np.empty(len(times))
    trace_err = 0.0
    tail = 0.0
    for k in range(len(times)):
        rho = sol.y[:, k].reshape(dc * de, dc * de)
        trace_err = max(trace_err, abs(np.trace(rho).real - 1.0))
        n_aa[k] = np.trace(naa_op @ rho).real
        n_bb[k] = np.trace(nbb_op @ rho).real
        mb = np.trace(b @ rho)
        sbb = np.trace(b @ b @ rho)
        vp[k] = 1.0 + 2.0 * n_bb[k] + 2.0 * sbb.real - (2.0 * mb.real) ** 2
        vm[k] = 1.0 + 2.0 * n_bb[k] - 2.0 * sbb.real - (2.0 * mb.imag) ** 2
        blocks = rho.reshape(dc, de, dc, de)
        tail = max(
            tail,
            np.trace(blocks[dc - 1, :, dc - 1, :]).real,
            np.trace(blocks[:, de - 1, :, de - 1]).real,
        )

    if trace_err > 1e-9:
        raise RuntimeError(f"trace drifted by {trace_err:.2e} (> 1e-9)")
    if tail > config.tail_bound:
        if config.strict_tail:
            raise TruncationTailError(tail, config.tail_bound)
        warnings.warn(
            f"truncation tail population {tail:.3e} exceeds {config.tail_bound:.1e}",
            TruncationTailWarning,
            stacklevel=2,
        )
    return LindbladResult(
        times=times,
        n_aa=n_aa,
        n_bb=n_bb,
        var_plus=vp,
        var_minus=vm,
        trace_error=trace_err,
        tail_mass=tail,
    )
