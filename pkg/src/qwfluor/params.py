"""Parameters for a coherently driven quantum-well microcavity.

The model is a single cavity mode (photon annihilation operator ``a``)
coupled at rate ``g`` to a single exciton mode (``b``).  The cavity is
driven through one mirror by a coherent field of amplitude ``epsilon``
tuned to the cavity resonance, and damped at rate ``kappa`` into a
broadband squeezed vacuum reservoir with squeeze parameter ``r``.  The
exciton decays at rate ``gamma`` into an ordinary vacuum and is detuned
from the cavity by ``delta``.  All frequencies are measured in the frame
rotating at the cavity (= drive) frequency, so ``gamma = 1`` is the
natural unit of rate.

Derived quantities:

* ``Gamma = (kappa + gamma) / 4`` -- polariton decay rate,
* ``mu = sqrt(g**2 + delta**2 / 4)`` -- effective Rabi frequency,
* ``N = sinh(r)**2`` and ``M = sinh(r) cosh(r)`` -- reservoir photon
  number and two-photon correlation strength (``M**2 = N (N + 1)`` for
  an ideal squeezed reservoir),
* ``chi_pm = sqrt(4 g**2 + (delta pm 2 mu)**2)`` -- normalization of the
  single-excitation dressed states.

The closed-form results elsewhere in this package are derived to leading
order in ``kappa / g`` and ``gamma / g``; :func:`validate` flags weakly
coupled parameter sets where those forms degrade.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

__all__ = [
    "SystemParams",
    "DerivedParams",
    "ValidationReport",
    "ParameterError",
    "validate",
    "derive",
    "mu_squared",
    "STRONG_COUPLING_SOFT_RATIO",
]

# Below this value of g / max(kappa, gamma) the leading-order envelopes
# visibly deviate from the exact linear dynamics; warn but do not refuse.
STRONG_COUPLING_SOFT_RATIO = 3.0


class ParameterError(ValueError):
    """Raised when a computation is requested for unusable parameters.

    Carries the full :class:`ValidationReport` in ``report``.
    """

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.errors) or "invalid parameters")
        self.report = report


@dataclass(frozen=True)
class SystemParams:
    """Bare model parameters, in units of the exciton linewidth.

    Construction never raises; call :func:`validate` or :func:`derive`
    to check physical admissibility.
    """

    g: float
    kappa: float
    gamma: float = 1.0
    delta: float = 0.0
    epsilon: float = 0.0
    r: float = 0.0

    def __post_init__(self) -> None:
        # Coerce ints (e.g. from JSON) so downstream arithmetic is float.
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class DerivedParams:
    """Quantities derived from :class:`SystemParams` (see module docstring)."""

    Gamma: float
    mu: float
    N: float
    M: float
    chi_plus: float
    chi_minus: float

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class ValidationReport:
    strong_coupling_ratio: float
    warnings: tuple[str, ...]
    errors: tuple[str, ...]

    @property
    def fatal(self) -> bool:
        return bool(self.errors)

    @property
    def ok(self) -> bool:
        return not self.errors

    def as_dict(self) -> dict:
        ratio = self.strong_coupling_ratio
        return {
            # NaN (fatal report) maps to None so the dict stays JSON-safe
            "strong_coupling_ratio": None if math.isnan(ratio) else ratio,
            "warnings": list(self.warnings),
            "errors": list(self.errors),
            "fatal": self.fatal,
        }


def validate(p: SystemParams) -> ValidationReport:
    """Check admissibility and strong-coupling quality of a parameter set.

    Fatal conditions: non-finite values, non-positive g, kappa or gamma,
    negative epsilon or r.  Soft condition: coupling ratio
    ``g / max(kappa, gamma)`` below ``STRONG_COUPLING_SOFT_RATIO``.
    """
    errors: list[str] = []
    warnings: list[str] = []

    for name, value in p.as_dict().items():
        if not math.isfinite(value):
            errors.append(f"{name} must be finite, got {value!r}")

    if not errors:
        for name in ("g", "kappa", "gamma"):
            if getattr(p, name) <= 0.0:
                errors.append(f"{name} must be positive, got {getattr(p, name)!r}")
        for name in ("epsilon", "r"):
            if getattr(p, name) < 0.0:
                errors.append(f"{name} must be non-negative, got {getattr(p, name)!r}")

    if errors:
        ratio = math.nan
    else:
        ratio = p.g / max(p.kappa, p.gamma)
        if ratio < STRONG_COUPLING_SOFT_RATIO:
            warnings.append(
                f"coupling ratio g/max(kappa,gamma) = {ratio:.3g} is below "
                f"{STRONG_COUPLING_SOFT_RATIO:g}; closed forms carry O(kappa/g, gamma/g) errors"
            )

    return ValidationReport(
        strong_coupling_ratio=ratio,
        warnings=tuple(warnings),
        errors=tuple(errors),
    )


def mu_squared(p: SystemParams) -> float:
    """mu**2 computed directly from g and delta.

    Written as ``g*g + 0.25*delta*delta`` rather than ``mu**2`` so that
    the common ratio ``g**2 / mu**2`` is exactly 1.0 at delta = 0.
    """
    return p.g * p.g + 0.25 * p.delta * p.delta


def derive(p: SystemParams) -> DerivedParams:
    """Compute derived parameters, raising :class:`ParameterError` on fatal input."""
    report = validate(p)
    if report.fatal:
        raise ParameterError(report)

    Gamma = 0.25 * (p.kappa + p.gamma)
    mu = math.sqrt(mu_squared(p))
    sh = math.sinh(p.r)
    ch = math.cosh(p.r)
    N = sh * sh
    M = sh * ch
    chi_plus = math.sqrt(4.0 * p.g * p.g + (p.delta + 2.0 * mu) ** 2)
    chi_minus = math.sqrt(4.0 * p.g * p.g + (p.delta - 2.0 * mu) ** 2)
    return DerivedParams(
        Gamma=Gamma, mu=mu, N=N, M=M, chi_plus=chi_plus, chi_minus=chi_minus
    )
