"""Damped Rabi envelopes and the coefficient functions built from them.

In the strong-coupling regime the linear Heisenberg equations for the
photon/exciton pair are solved, to leading order in ``kappa/g`` and
``gamma/g``, by oscillatory envelopes that all share the decaying factor
``exp(-(Gamma + i delta/2) t)``:

* ``eta1``      response of the exciton to its own initial value, /mu
* ``eta_plus``  diagonal photon envelope
* ``eta_minus`` diagonal exciton envelope
* ``eta3``      cross envelope coupling photon and exciton
* ``eta4``      integrated drive response, ``(1 - eta_plus) / g``

At t = 0: eta1 = eta3 = eta4 = 0 and eta_plus = eta_minus = 1.

The same envelopes generate the coefficient functions used by the
intensity (lambda1..lambda3), the intensity correlation (A1..A3) and the
quadrature variances (lambda4).  Functions taking a ``literal`` flag can
reproduce an earlier uncorrected printing of the coefficient; the
default is the corrected form that agrees with the numerical model (see
the verification module).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import SystemParams, derive, mu_squared

__all__ = [
    "EnvelopeSet",
    "IntensityCoeffs",
    "G2Coeffs",
    "envelopes",
    "intensity_coeffs",
    "g2_coeffs",
    "variance_coeff_lambda4",
]


@dataclass(frozen=True)
class EnvelopeSet:
    """The five envelopes evaluated on a common time grid."""

    t: np.ndarray
    eta1: np.ndarray
    eta_plus: np.ndarray
    eta_minus: np.ndarray
    eta3: np.ndarray
    eta4: np.ndarray


@dataclass(frozen=True)
class IntensityCoeffs:
    t: np.ndarray
    lambda1: np.ndarray
    lambda2: np.ndarray
    lambda3: np.ndarray


@dataclass(frozen=True)
class G2Coeffs:
    tau: np.ndarray
    A1: np.ndarray
    A2: np.ndarray
    A3: np.ndarray


def _common_factor(p: SystemParams, Gamma: float, t: np.ndarray) -> np.ndarray:
    return np.exp(-(Gamma + 0.5j * p.delta) * t)


def envelopes(p: SystemParams, t) -> EnvelopeSet:
    """Evaluate the five envelopes at times ``t`` (scalar or array)."""
    d = derive(p)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    mu = d.mu
    ph = _common_factor(p, d.Gamma, t)
    c = np.cos(mu * t)
    s = np.sin(mu * t)
    eta1 = (s / mu) * ph
    eta_plus = (c + (0.5j * p.delta / mu) * s) * ph
    eta_minus = (c - (0.5j * p.delta / mu) * s) * ph
    eta3 = (p.g / mu) * s * ph
    eta4 = (1.0 - eta_plus) / p.g
    return EnvelopeSet(
        t=t, eta1=eta1, eta_plus=eta_plus, eta_minus=eta_minus, eta3=eta3, eta4=eta4
    )


def intensity_coeffs(p: SystemParams, t) -> IntensityCoeffs:
    """Oscillatory coefficients of the fluorescence intensity.

    lambda1 = |eta_minus|^2 * e^{2 Gamma t}   (pure oscillation)
    lambda2 = -(g^2 / (4 Gamma mu^2)) (1 + (Gamma/mu) sin 2 mu t)
    lambda3 = cos(mu t) cos(delta t / 2) + (delta / 2 mu) sin(mu t) sin(delta t / 2)
    """
    d = derive(p)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    mu = d.mu
    mu2 = mu_squared(p)
    c = np.cos(mu * t)
    s = np.sin(mu * t)
    lambda1 = (0.25 * p.delta * p.delta / mu2) * s * s + c * c
    lambda2 = -(p.g * p.g / (4.0 * d.Gamma * mu2)) * (
        1.0 + (d.Gamma / mu) * np.sin(2.0 * mu * t)
    )
    lambda3 = c * np.cos(0.5 * p.delta * t) + (0.5 * p.delta / mu) * s * np.sin(
        0.5 * p.delta * t
    )
    return IntensityCoeffs(t=t, lambda1=lambda1, lambda2=lambda2, lambda3=lambda3)


def g2_coeffs(p: SystemParams, tau, literal: bool = False) -> G2Coeffs:
    """Coefficient functions of the intensity correlation g2(tau).

    A2 and A3 are common to both variants:

    A2 = (g^2 / (2 Gamma mu^3)) (mu cos mu tau + Gamma sin mu tau)
    A3 = [4 mu^2 cos^2 + delta^2 sin^2 + 4 Gamma mu sin 2 mu tau]
         / (16 mu^2 (delta^2 + 4 Gamma^2))

    The default A1 follows from the Gaussian factorization of the
    squeezed-drive cross term; ``literal=True`` selects the earlier
    printed first term, which disagrees with the numerical correlators
    at nonzero drive and squeezing.
    """
    d = derive(p)
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    mu = d.mu
    G = d.Gamma
    mu2 = mu_squared(p)
    g2_ = p.g * p.g
    c = np.cos(mu * tau)
    s = np.sin(mu * tau)
    ch = np.cos(0.5 * p.delta * tau)
    sh = np.sin(0.5 * p.delta * tau)
    denom = p.delta * p.delta + 4.0 * G * G

    A2 = (g2_ / (2.0 * G * mu2 * mu)) * (mu * c + G * s)
    A3 = (
        4.0 * mu2 * c * c
        + p.delta * p.delta * s * s
        + 4.0 * G * mu * np.sin(2.0 * mu * tau)
    ) / (16.0 * mu2 * denom)

    second = g2_ * c * (2.0 * G * ch - p.delta * sh) / (mu2 * denom)
    if literal:
        first = (2.0 * mu * c * sh - p.delta * ch * s) / (4.0 * mu2)
    else:
        first = (g2_ / (2.0 * mu2 * mu)) * s * ch
    A1 = first + second
    return G2Coeffs(tau=tau, A1=A1, A2=A2, A3=A3)


def _sin_over_2x(x: float, t: np.ndarray) -> np.ndarray:
    # sin(x t) / (2 x) with the removable singularity at x = 0 handled
    # exactly: sin(x t)/(2 x) = (t/2) sinc(x t / pi).
    return 0.5 * t * np.sinc(x * t / np.pi)


def variance_coeff_lambda4(p: SystemParams, t, literal: bool = False) -> np.ndarray:
    """Transient coefficient of the two-photon (M) part of the variances.

    Corrected form (default):

    lambda4 = (g^2/mu^2) [ (delta sin(delta t) - 2 Gamma cos(delta t)) / (delta^2 + 4 Gamma^2)
                           - sin((delta - 2 mu) t) / (2 (delta - 2 mu))
                           - sin((delta + 2 mu) t) / (2 (delta + 2 mu)) ]

    ``literal=True`` reproduces the earlier printing, which carries an
    extra factor mu^2 in the prefactor and half-argument oscillations
    sin(delta t / 2); it fails against the numerical model (kept only
    for comparison).
    """
    d = derive(p)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    G = d.Gamma
    mu = d.mu
    mu2 = mu_squared(p)
    denom = p.delta * p.delta + 4.0 * G * G
    S = _sin_over_2x(p.delta - 2.0 * mu, t) + _sin_over_2x(p.delta + 2.0 * mu, t)

    if literal:
        osc = (p.delta * np.sin(0.5 * p.delta * t) - 2.0 * G * np.cos(p.delta * t)) / (
            mu2 * denom
        )
    else:
        osc = (p.delta * np.sin(p.delta * t) - 2.0 * G * np.cos(p.delta * t)) / denom
    return (p.g * p.g / mu2) * (osc - S)
