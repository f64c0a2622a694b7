"""Named dataset presets reproducing the package's standard figure families.

Each preset fixes the physical parameters, the sweep variable and the
grid, and emits one dataset per curve.  Where a figure family only
specifies "several values" of a parameter, the concrete curve values
chosen here are illustrative; they are recorded in the description and
in each dataset's metadata, and carry no authority beyond this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import observables
from .datasets import Dataset, base_meta
from .params import SystemParams

__all__ = ["FigurePreset", "PRESETS", "list_presets", "build_preset"]


@dataclass(frozen=True)
class FigurePreset:
    name: str
    description: str
    build: Callable[[], list[tuple[str, Dataset]]]


def _num_label(prefix: str, value: float) -> str:
    # 0.5 -> "0p5", 7 -> "7": decimal points do not belong in filenames
    s = f"{value:g}".replace(".", "p").replace("-", "m")
    return f"{prefix}{s}"


def _grid_keys(axis: np.ndarray) -> dict[str, str]:
    return {
        "grid_start": repr(float(axis[0])),
        "grid_stop": repr(float(axis[-1])),
        "grid_count": str(len(axis)),
    }


def _intensity_dataset(p: SystemParams, times: np.ndarray, label: str) -> Dataset:
    vals = observables.intensity(p, times)
    meta = base_meta("intensity", p, extra={"curve": label, **_grid_keys(times)})
    return Dataset(meta=meta, columns=("t", "intensity"), rows=np.column_stack([times, vals]))


def _fig1() -> list[tuple[str, Dataset]]:
    times = np.linspace(0.0, 10.0, 401)
    out = []
    for eps in (3.0, 5.0, 7.0):
        p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=2.0, epsilon=eps, r=0.0)
        label = _num_label("eps", eps)
        out.append((label, _intensity_dataset(p, times, label)))
    return out


def _fig2() -> list[tuple[str, Dataset]]:
    times = np.linspace(0.0, 10.0, 401)
    out = []
    for r in (0.5, 1.0, 1.5):
        p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=2.0, epsilon=0.0, r=r)
        label = _num_label("r", r)
        out.append((label, _intensity_dataset(p, times, label)))
    return out


def _fig3() -> list[tuple[str, Dataset]]:
    times = np.linspace(0.0, 10.0, 401)
    out = []
    for delta in (0.0, 1.0, 2.0, 4.0):
        p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=delta, epsilon=7.0, r=1.8)
        label = _num_label("delta", delta)
        out.append((label, _intensity_dataset(p, times, label)))
    return out


def _spectrum_dataset(p: SystemParams, label: str) -> Dataset:
    from .params import derive

    d = derive(p)
    lo = 0.5 * p.delta - d.mu - 8.0
    hi = 0.5 * p.delta + d.mu + 8.0
    omegas = np.linspace(lo, hi, 1201)
    res = observables.spectrum(p, omegas)
    peaks = observables.spectrum_peaks(p)
    meta = base_meta(
        "spectrum",
        p,
        extra={
            "curve": label,
            **_grid_keys(omegas),
            "coherent_weight": repr(res.coherent_weight),
            "peak_lower": repr(peaks.centers[0]),
            "peak_upper": repr(peaks.centers[1]),
            "peak_hwhm": repr(peaks.hwhm),
            "spectrum_form": res.variant,
        },
    )
    return Dataset(
        meta=meta,
        columns=("omega", "incoherent"),
        rows=np.column_stack([omegas, res.incoherent]),
    )


def _fig4() -> list[tuple[str, Dataset]]:
    out = []
    for delta in (0.0, 2.0, 4.0):
        p = SystemParams(g=6.0, kappa=1.2, gamma=1.0, delta=delta, epsilon=0.0, r=1.0)
        label = _num_label("delta", delta)
        out.append((label, _spectrum_dataset(p, label)))
    return out


def _fig5() -> list[tuple[str, Dataset]]:
    # 2-D surface: incoherent spectrum over (omega, delta)
    deltas = np.linspace(0.0, 6.0, 25)
    rows = []
    for delta in deltas:
        p = SystemParams(g=6.0, kappa=1.2, gamma=1.0, delta=delta, epsilon=0.0, r=1.0)
        omegas = np.linspace(-16.0, 16.0, 321)
        res = observables.spectrum(p, omegas)
        for w, s in zip(omegas, res.incoherent):
            rows.append((delta, w, s))
    p0 = SystemParams(g=6.0, kappa=1.2, gamma=1.0, delta=0.0, epsilon=0.0, r=1.0)
    meta = base_meta(
        "spectrum",
        p0,
        extra={
            "curve": "surface",
            "sweep": "delta",
            **_grid_keys(np.linspace(-16.0, 16.0, 321)),
        },
    )
    ds = Dataset(
        meta=meta, columns=("delta", "omega", "incoherent"), rows=np.array(rows)
    )
    return [("surface", ds)]


def _fig7() -> list[tuple[str, Dataset]]:
    taus = np.linspace(0.0, 10.0, 401)
    out = []
    for eps in (0.0, 3.0, 7.0):
        p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=0.0, epsilon=eps, r=1.0)
        vals = observables.g2(p, taus)
        label = _num_label("eps", eps)
        meta = base_meta(
            "g2", p, extra={"curve": label, "a1_form": "gaussian", **_grid_keys(taus)}
        )
        out.append(
            (label, Dataset(meta=meta, columns=("tau", "g2"), rows=np.column_stack([taus, vals])))
        )
    return out


def _fig8() -> list[tuple[str, Dataset]]:
    rs = np.linspace(0.0, 3.0, 301)
    out = []
    for delta in (0.0, 0.5, 1.0, 2.0):
        vals = np.array(
            [
                observables.quad_variance_ss(
                    SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=delta, epsilon=0.0, r=r),
                    -1,
                )
                for r in rs
            ]
        )
        p0 = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=delta, epsilon=0.0, r=0.0)
        label = _num_label("delta", delta)
        meta = base_meta(
            "variance",
            p0,
            extra={"curve": label, "sweep": "r", "sign": "minus", **_grid_keys(rs)},
        )
        out.append(
            (label, Dataset(meta=meta, columns=("r", "var_minus"), rows=np.column_stack([rs, vals])))
        )
    return out


def _fig9() -> list[tuple[str, Dataset]]:
    times = np.linspace(0.0, 10.0, 401)
    out = []
    for delta in (0.0, 0.5, 1.0, 2.0):
        p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=delta, epsilon=0.0, r=1.0)
        vals = observables.quad_variance(p, times, -1)
        label = _num_label("delta", delta)
        meta = base_meta(
            "variance",
            p,
            extra={
                "curve": label,
                "sign": "minus",
                "lambda4_form": "corrected",
                **_grid_keys(times),
            },
        )
        out.append(
            (label, Dataset(meta=meta, columns=("t", "var_minus"), rows=np.column_stack([times, vals])))
        )
    return out


PRESETS: dict[str, FigurePreset] = {
    "fig1": FigurePreset(
        "fig1",
        "Intensity transients under pure coherent driving (r=0), g=5, kappa=1.2, "
        "delta=2; pump amplitudes 3, 5, 7.",
        _fig1,
    ),
    "fig2": FigurePreset(
        "fig2",
        "Intensity transients fed only by the squeezed reservoir (epsilon=0), g=5, "
        "kappa=1.2, delta=2; squeeze parameters 0.5, 1.0, 1.5 (illustrative values).",
        _fig2,
    ),
    "fig3": FigurePreset(
        "fig3",
        "Intensity transients with both sources on (epsilon=7, r=1.8), g=5, "
        "kappa=1.2; detunings 0, 1, 2, 4 (illustrative values).",
        _fig3,
    ),
    "fig4": FigurePreset(
        "fig4",
        "Incoherent emission spectra, g=6, kappa=1.2, r=1; detunings 0, 2, 4.",
        _fig4,
    ),
    "fig5": FigurePreset(
        "fig5",
        "Incoherent spectrum surface over (omega, delta), g=6, kappa=1.2, r=1; "
        "delta grid 0..6 (illustrative range).",
        _fig5,
    ),
    "fig7": FigurePreset(
        "fig7",
        "Intensity correlation g2(tau), g=5, kappa=1.2, delta=0, r=1; pump "
        "amplitudes 0, 3, 7 (illustrative values).",
        _fig7,
    ),
    "fig8": FigurePreset(
        "fig8",
        "Steady b_minus variance versus squeeze parameter r in [0, 3], g=5, "
        "kappa=1.2; detunings 0, 0.5, 1, 2 (illustrative values).",
        _fig8,
    ),
    "fig9": FigurePreset(
        "fig9",
        "Transient b_minus variance, r=1, g=5, kappa=1.2; detunings 0, 0.5, 1, 2 "
        "(illustrative values).",
        _fig9,
    ),
}


def list_presets() -> list[FigurePreset]:
    return [PRESETS[k] for k in sorted(PRESETS)]


def build_preset(name: str) -> list[tuple[str, Dataset]]:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}")
    return PRESETS[name].build()
