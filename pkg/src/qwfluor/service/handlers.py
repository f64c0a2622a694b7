"""Request handlers shared by the FastAPI routes and the in-process CLI path.

Handlers take a request model and return a response model.  They raise
:class:`qwfluor.params.ParameterError` for inadmissible parameters (the
HTTP layer maps that to 422, the CLI to exit code 2) and ValueError for
malformed grids.
"""

from __future__ import annotations

import numpy as np

from .. import observables, oracle
from ..datasets import Dataset, apply_unit, base_meta
from ..params import SystemParams, derive, validate
from ..presets import PRESETS, build_preset
from ..verify import run_verification
from . import models


def _to_model(ds: Dataset, unit: float) -> models.DatasetModel:
    if unit != 1.0:
        ds = apply_unit(ds, unit)
    return models.DatasetModel(
        meta=ds.meta, columns=list(ds.columns), rows=[list(map(float, r)) for r in ds.rows]
    )


def _grid_meta(grid: models.GridModel) -> dict[str, str]:
    return {
        "grid_start": repr(grid.start),
        "grid_stop": repr(grid.stop),
        "grid_count": str(grid.count),
    }


def handle_derive(req: models.DeriveRequest) -> models.DerivedResponse:
    d = derive(req.params.to_params())
    return models.DerivedResponse(**d.as_dict())


def handle_validate(req: models.ValidateRequest) -> models.ValidationResponse:
    rep = validate(req.params.to_params())
    ratio = rep.strong_coupling_ratio
    return models.ValidationResponse(
        strong_coupling_ratio=None if np.isnan(ratio) else ratio,
        warnings=list(rep.warnings),
        errors=list(rep.errors),
        fatal=rep.fatal,
    )


def handle_envelopes(req: models.EnvelopesRequest) -> models.DatasetModel:
    from ..envelopes import envelopes

    p = req.params.to_params()
    t = req.grid.values()
    es = envelopes(p, t)
    cols = ["t"]
    data = [t]
    for name, arr in (
        ("eta1", es.eta1),
        ("eta_plus", es.eta_plus),
        ("eta_minus", es.eta_minus),
        ("eta3", es.eta3),
        ("eta4", es.eta4),
    ):
        cols += [f"{name}_re", f"{name}_im"]
        data += [arr.real, arr.imag]
    meta = base_meta("envelopes", p, extra=_grid_meta(req.grid))
    ds = Dataset(meta=meta, columns=tuple(cols), rows=np.column_stack(data))
    return _to_model(ds, req.unit)


def handle_intensity(req: models.IntensityRequest) -> models.DatasetModel:
    p = req.params.to_params()
    t = req.grid.values()
    toggles = req.toggles.to_toggle()
    if req.source == "oracle":
        traj = oracle.integrate_moments(p, t)
        vals = traj.n_bb.real
    else:
        vals = observables.intensity(p, t, toggles)
    meta = base_meta(
        "intensity",
        p,
        source=req.source,
        extra=_grid_meta(req.grid)
        | {
            "toggle_drive": "on" if toggles.drive else "off",
            "toggle_squeezing": "on" if toggles.squeezing else "off",
        },
    )
    ds = Dataset(meta=meta, columns=("t", "intensity"), rows=np.column_stack([t, vals]))
    return _to_model(ds, req.unit)


def handle_spectrum(req: models.SpectrumRequest) -> models.DatasetModel:
    p = req.params.to_params()
    d = derive(p)
    grid = req.grid
    if grid is None:
        half = d.mu + 8.0 * max(1.0, d.Gamma)
        grid = models.GridModel(
            start=0.5 * p.delta - half, stop=0.5 * p.delta + half, count=1201
        )
    omegas = grid.values()
    res = observables.spectrum(p, omegas)
    if req.source == "oracle":
        vals = oracle.spectrum_numeric(p, omegas)
        variant = "fourier-numeric"
    else:
        vals = res.incoherent
        variant = res.variant
    peaks = observables.spectrum_peaks(p)
    meta = base_meta(
        "spectrum",
        p,
        source=req.source,
        extra=_grid_meta(grid)
        | {
            "coherent_weight": repr(res.coherent_weight),
            "peak_lower": repr(peaks.centers[0]),
            "peak_upper": repr(peaks.centers[1]),
            "peak_hwhm": repr(peaks.hwhm),
            "spectrum_form": variant,
        },
    )
    ds = Dataset(meta=meta, columns=("omega", "incoherent"), rows=np.column_stack([omegas, vals]))
    return _to_model(ds, req.unit)


def handle_g2(req: models.G2Request) -> models.DatasetModel:
    p = req.params.to_params()
    taus = req.grid.values()
    if req.source == "oracle":
        vals = oracle.g2_gaussian(p, taus)
        form = "gaussian-oracle"
    else:
        vals = observables.g2(p, taus, literal=req.paper_literal)
        form = "printed" if req.paper_literal else "gaussian"
    meta = base_meta(
        "g2", p, source=req.source, extra=_grid_meta(req.grid) | {"a1_form": form}
    )
    ds = Dataset(meta=meta, columns=("tau", "g2"), rows=np.column_stack([taus, vals]))
    return _to_model(ds, req.unit)


def handle_variance(req: models.VarianceRequest) -> models.DatasetModel:
    p = req.params.to_params()
    t = req.grid.values()
    cols: list[str] = ["t"]
    data: list[np.ndarray] = [t]
    if req.source == "oracle":
        traj = oracle.integrate_moments(p, t)
        vp, vm = oracle.variance_from_moments(traj)
        if req.sign in ("plus", "both"):
            cols.append("var_plus")
            data.append(vp)
        if req.sign in ("minus", "both"):
            cols.append("var_minus")
            data.append(vm)
        form = "moment-oracle"
    else:
        if req.sign in ("plus", "both"):
            cols.append("var_plus")
            data.append(observables.quad_variance(p, t, +1, literal=req.paper_literal))
        if req.sign in ("minus", "both"):
            cols.append("var_minus")
            data.append(observables.quad_variance(p, t, -1, literal=req.paper_literal))
        form = "literal" if req.paper_literal else "corrected"
    meta = base_meta(
        "variance",
        p,
        source=req.source,
        extra=_grid_meta(req.grid) | {"sign": req.sign, "lambda4_form": form},
    )
    ds = Dataset(meta=meta, columns=tuple(cols), rows=np.column_stack(data))
    return _to_model(ds, req.unit)


def handle_dressed(req: models.DressedRequest) -> models.DressedResponse:
    p = req.params.to_params()
    man = observables.dressed_manifold(p, req.n)
    vecs = man.eigenvectors
    return models.DressedResponse(
        n=man.n,
        basis=list(man.basis),
        eigenvalues=[float(v) for v in man.eigenvalues],
        eigenvectors_re=[[float(x) for x in vecs[:, j].real] for j in range(vecs.shape[1])],
        eigenvectors_im=[[float(x) for x in vecs[:, j].imag] for j in range(vecs.shape[1])],
        residual=man.residual,
    )


def handle_verify(req: models.VerifyRequest) -> models.VerifyResponse:
    p = req.params.to_params()
    rep = run_verification(p, tolerance=req.tolerance, literal=req.paper_literal)
    return models.VerifyResponse(
        params=models.ParamsModel.from_params(rep.params),
        tolerance=rep.tolerance,
        variant="paper-literal" if rep.literal else "corrected",
        passed=rep.passed,
        entries=[models.VerifyEntryModel(**e.as_dict()) for e in rep.entries],
    )


def list_figures() -> list[models.FigureInfo]:
    return [
        models.FigureInfo(name=PRESETS[k].name, description=PRESETS[k].description)
        for k in sorted(PRESETS)
    ]


def handle_figure(name: str) -> models.FigureResponse:
    preset = PRESETS.get(name)
    if preset is None:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}")
    curves = build_preset(name)
    return models.FigureResponse(
        name=preset.name,
        description=preset.description,
        datasets=[
            models.NamedDataset(label=label, dataset=_to_model(ds, 1.0))
            for label, ds in curves
        ],
    )
