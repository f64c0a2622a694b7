"""Closed-form observables for the driven cavity/exciton system.

Everything here is analytic: fluorescence intensity, the steady-state
field correlation and emission spectrum, the intensity correlation
g2(tau), quadrature variances of the exciton polarization, and the
dressed states of the coupled pair.  The forms are leading order in
kappa/g and gamma/g; the :mod:`qwfluor.oracle` module provides the exact
linear (and truncated Fock) dynamics they are checked against.

Initial condition for the transients is a single bare exciton and an
empty cavity.  Time arguments are in units of 1/gamma, frequencies in
units of gamma, both measured in the frame rotating at the drive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .envelopes import g2_coeffs, intensity_coeffs, variance_coeff_lambda4
from .params import SystemParams, derive, mu_squared

__all__ = [
    "SourceToggle",
    "SpectrumResult",
    "SpectrumPeaks",
    "DressedManifold",
    "ZeroIntensityError",
    "intensity",
    "intensity_ss",
    "correlation_bb",
    "spectrum",
    "spectrum_peaks",
    "g2",
    "quad_variance",
    "quad_variance_ss",
    "resonant_squeezing_ss",
    "dressed_manifold",
]


class ZeroIntensityError(ValueError):
    """g2 is undefined when the steady-state intensity vanishes."""


@dataclass(frozen=True)
class SourceToggle:
    """Switches the two excitation sources on or off in the intensity.

    Turning a source off removes every term it feeds (the spontaneous
    single-excitation transient is always kept, so I(0) = 1 regardless).
    """

    drive: bool = True
    squeezing: bool = True


@dataclass(frozen=True)
class SpectrumResult:
    omega: np.ndarray
    incoherent: np.ndarray
    coherent_weight: float
    variant: str = "lorentzian-pair"


@dataclass(frozen=True)
class SpectrumPeaks:
    centers: tuple[float, float]
    hwhm: float


@dataclass(frozen=True)
class DressedManifold:
    n: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, same order as eigenvalues
    basis: tuple[str, ...]
    residual: float


def intensity(p: SystemParams, t, toggles: SourceToggle | None = None) -> np.ndarray:
    """Normalized exciton population <b+ b>(t) from a single initial exciton.

    Grouped so the t = 0 value is exactly 1.0 in floating point: the
    drive and squeezing contributions each vanish identically at t = 0.
    """
    d = derive(p)
    if toggles is None:
        toggles = SourceToggle()
    t = np.atleast_1d(np.asarray(t, dtype=float))
    co = intensity_coeffs(p, t)
    mu2 = mu_squared(p)
    e1 = np.exp(-d.Gamma * t)
    e2 = e1 * e1

    out = co.lambda1 * e2
    if toggles.drive:
        out = out + (p.epsilon**2 / p.g**2) * (1.0 + co.lambda1 * e2 - 2.0 * co.lambda3 * e1)
    if toggles.squeezing:
        out = out + (p.kappa * d.N * p.g**2 / (4.0 * d.Gamma * mu2)) * (
            1.0 - e2 * (1.0 + (d.Gamma / d.mu) * np.sin(2.0 * d.mu * t))
        )
    return out


def intensity_ss(p: SystemParams, toggles: SourceToggle | None = None) -> float:
    """Steady-state intensity: coherent part eps^2/g^2 plus the squeezing part."""
    d = derive(p)
    if toggles is None:
        toggles = SourceToggle()
    out = 0.0
    if toggles.drive:
        out += p.epsilon**2 / p.g**2
    if toggles.squeezing:
        out += p.kappa * d.N * p.g**2 / (4.0 * d.Gamma * mu_squared(p))
    return out


def correlation_bb(p: SystemParams, tau) -> np.ndarray:
    """Steady-state two-time correlation <b+(t) b(t + tau)> for tau >= 0.

    The incoherent part decays with exp(-(Gamma + i delta/2) tau); the
    coherent drive contributes the constant eps^2/g^2.
    """
    d = derive(p)
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    mu = d.mu
    mu2 = mu_squared(p)
    osc = mu * np.cos(mu * tau) + d.Gamma * np.sin(mu * tau)
    incoh = (p.kappa * d.N * p.g**2 / (4.0 * d.Gamma * mu2 * mu)) * np.exp(
        -(d.Gamma + 0.5j * p.delta) * tau
    ) * osc
    return p.epsilon**2 / p.g**2 + incoh


def spectrum(p: SystemParams, omega) -> SpectrumResult:
    """Steady-state emission spectrum of the exciton line.

    ``omega`` is measured from the drive (= cavity) frequency.  The
    coherent drive contributes a delta line at omega = 0 whose weight,
    eps^2 / (2 pi g^2), is returned separately; ``incoherent`` holds the
    smooth two-Lorentzian part fed by the squeezed reservoir, peaked at
    delta/2 +- mu with half width Gamma.
    """
    d = derive(p)
    nu = np.atleast_1d(np.asarray(omega, dtype=float))
    G = d.Gamma
    mu = d.mu
    mu2 = mu_squared(p)
    t1 = (p.delta + 4.0 * mu - 2.0 * nu) / (G * G + (0.5 * p.delta + mu - nu) ** 2)
    t2 = (-p.delta + 4.0 * mu + 2.0 * nu) / (G * G + (0.5 * p.delta - mu - nu) ** 2)
    incoh = (p.kappa * d.N * p.g**2 / (16.0 * np.pi * mu2 * mu)) * (t1 + t2)
    weight = p.epsilon**2 / (2.0 * np.pi * p.g**2)
    return SpectrumResult(omega=nu, incoherent=incoh, coherent_weight=weight)


def spectrum_peaks(p: SystemParams) -> SpectrumPeaks:
    """Nominal polariton doublet: centers delta/2 -+ mu, half width Gamma."""
    d = derive(p)
    return SpectrumPeaks(
        centers=(0.5 * p.delta - d.mu, 0.5 * p.delta + d.mu), hwhm=d.Gamma
    )


def g2(p: SystemParams, tau, literal: bool = False) -> np.ndarray:
    """Normalized steady-state intensity correlation g2(tau).

    Undefined (raises :class:`ZeroIntensityError`) when both sources are
    off, i.e. epsilon = 0 and r = 0.  For pure squeezing (epsilon = 0)
    the zero-delay value is 3 + 1/N.
    """
    d = derive(p)
    iss = intensity_ss(p)
    if iss == 0.0:
        raise ZeroIntensityError(
            "steady-state intensity vanishes for epsilon = 0 and r = 0; g2 undefined"
        )
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    co = g2_coeffs(p, tau, literal=literal)
    e1 = np.exp(-d.Gamma * tau)
    e2 = e1 * e1
    num = (p.kappa**2 / 4.0) * (4.0 * d.M**2 * co.A3 + d.N**2 * co.A2**2) * e2
    num = num + (p.kappa * p.epsilon**2 / p.g**2) * (
        d.M * co.A1 + d.N * co.A2 * np.cos(0.5 * p.delta * tau)
    ) * e1
    return 1.0 + num / iss**2


def quad_variance(p: SystemParams, t, sign: int, literal: bool = False) -> np.ndarray:
    """Transient variance of the exciton quadrature b_+ (sign=+1) or b_- (sign=-1).

    Starts at exactly 3.0 (one excitation on top of the vacuum value 1)
    and relaxes to :func:`quad_variance_ss`.  ``literal`` selects the
    uncorrected transient coefficient lambda4 for comparison runs.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    d = derive(p)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    mu2 = mu_squared(p)
    G = d.Gamma
    denom = p.delta * p.delta + 4.0 * G * G
    co = intensity_coeffs(p, t)
    e2 = np.exp(-2.0 * G * t)

    npart = (p.kappa * d.N * p.g**2 / (2.0 * G * mu2)) * (
        1.0 - e2 * (1.0 + (G / d.mu) * np.sin(2.0 * d.mu * t))
    )
    # lambda4(0) = -(g^2/mu^2)(2 Gamma / denom) exactly, so mpart(0) = 0.
    lam4 = variance_coeff_lambda4(p, t, literal=literal)
    mpart = p.kappa * d.M * ((p.g * p.g / mu2) * (2.0 * G / denom) + lam4 * e2)
    return 1.0 + 2.0 * co.lambda1 * e2 + npart + sign * mpart


def quad_variance_ss(p: SystemParams, sign: int) -> float:
    """Steady-state exciton quadrature variance.

    Written with S_pm = N +- M evaluated via expm1 so the squeezed
    combination N - M = expm1(-2r)/2 keeps full relative accuracy at
    large r (a direct difference loses ~10 digits by r = 5).
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    d = derive(p)
    mu2 = mu_squared(p)
    G = d.Gamma
    denom = p.delta * p.delta + 4.0 * G * G
    if sign == +1:
        s_pm = 0.5 * math.expm1(2.0 * p.r)
    else:
        s_pm = 0.5 * math.expm1(-2.0 * p.r)
    return 1.0 + (p.kappa * p.g * p.g / mu2) * (
        d.N * p.delta * p.delta + 4.0 * G * G * s_pm
    ) / (2.0 * G * denom)


def resonant_squeezing_ss(p: SystemParams) -> float:
    """Resonant (delta = 0) steady b_- variance: 1 - kappa (1 - e^{-2r}) / (kappa + gamma).

    Bounded below by gamma / (kappa + gamma): at kappa = gamma the noise
    reduction saturates at 50%, and only an overdamped cavity
    (kappa > gamma) can push the exciton below that.
    """
    derive(p)
    return 1.0 + (p.kappa / (p.kappa + p.gamma)) * math.expm1(-2.0 * p.r)


_BASIS_LABELS = {
    1: ("|1,0>", "|0,1>"),
    2: ("|2,0>", "|1,1>", "|0,2>"),
}


def dressed_manifold(p: SystemParams, n: int) -> DressedManifold:
    """Dressed states of the n-excitation manifold (n = 1 or 2).

    Basis kets are |n_exciton, n_photon>.  Eigenvalues are returned in
    descending order; each eigenvector's largest component is made real
    and positive so the output is deterministic.  Eigenvalues are
    delta/2 +- mu for n = 1 and {delta + 2 mu, delta, delta - 2 mu} for
    n = 2 (exact for the lossless pair).
    """
    derive(p)  # admissibility gate
    if n == 1:
        h = np.array(
            [
                [p.delta, -1j * p.g],
                [1j * p.g, 0.0],
            ],
            dtype=complex,
        )
    elif n == 2:
        s2g = math.sqrt(2.0) * p.g
        h = np.array(
            [
                [2.0 * p.delta, -1j * s2g, 0.0],
                [1j * s2g, p.delta, -1j * s2g],
                [0.0, 1j * s2g, 0.0],
            ],
            dtype=complex,
        )
    else:
        raise ValueError("manifold n must be 1 or 2")

    evals, evecs = np.linalg.eigh(h)
    evals = evals[::-1].copy()
    evecs = evecs[:, ::-1].copy()
    for j in range(evecs.shape[1]):
        k = int(np.argmax(np.abs(evecs[:, j])))
        ph = evecs[k, j]
        evecs[:, j] *= np.conj(ph) / abs(ph)

    residual = max(
        float(np.linalg.norm(h @ evecs[:, j] - evals[j] * evecs[:, j]))
        for j in range(evecs.shape[1])
    )
    if residual > 1e-10:
        raise ArithmeticError(f"eigen residual {residual:.2e} above 1e-10")
    return DressedManifold(
        n=n,
        eigenvalues=evals,
        eigenvectors=evecs,
        basis=_BASIS_LABELS[n],
        residual=residual,
    )
