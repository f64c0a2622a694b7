"""Flat dataset emission: CSV with a metadata header block, or JSON.

CSV layout:

    # key=value            (one line per metadata key, sorted)
    col1,col2,...          (header row)
    1.23,4.56,...          (data rows, 17 significant digits)

Everything is deterministic: metadata keys sorted, floats printed with
repr-exact precision, newline endings fixed, no timestamps.  Reparsing
an emitted file recovers the metadata and the numbers bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from .params import SystemParams, derive

__all__ = [
    "Dataset",
    "base_meta",
    "to_csv",
    "from_csv",
    "to_json",
    "from_json",
    "dumps",
    "loads",
    "apply_unit",
    "COLUMN_UNIT_POWERS",
]

# Power of the rate unit carried by each known column: -1 for times and
# other 1/rate quantities, +1 for frequencies.  Columns not listed are
# dimensionless.  Used by apply_unit for physical-unit output.
COLUMN_UNIT_POWERS: dict[str, int] = {
    "t": -1,
    "tau": -1,
    "omega": +1,
    "incoherent": -1,
    "eta1_re": -1,
    "eta1_im": -1,
    "eta4_re": -1,
    "eta4_im": -1,
    "delta": +1,
}

# Frequency-like metadata entries that apply_unit must rescale to stay
# consistent with the data columns.
_META_UNIT_POWERS: dict[str, int] = {
    "peak_lower": +1,
    "peak_upper": +1,
    "peak_hwhm": +1,
}


@dataclass(frozen=True)
class Dataset:
    meta: dict[str, str]
    columns: tuple[str, ...]
    rows: np.ndarray  # float array, shape (n_rows, n_columns)

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != len(self.columns):
            raise ValueError(
                f"rows shape {rows.shape} does not match {len(self.columns)} columns"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "columns", tuple(self.columns))


def base_meta(
    command: str,
    p: SystemParams,
    source: str = "analytic",
    extra: dict[str, str] | None = None,
) -> dict[str, str]:
    """Standard metadata block: parameters, derived constants, version, source."""
    from . import __version__

    d = derive(p)
    meta = {
        "command": command,
        "source": source,
        "version": __version__,
        "g": repr(p.g),
        "kappa": repr(p.kappa),
        "gamma": repr(p.gamma),
        "delta": repr(p.delta),
        "epsilon": repr(p.epsilon),
        "r": repr(p.r),
        "Gamma": repr(d.Gamma),
        "mu": repr(d.mu),
        "N": repr(d.N),
        "M": repr(d.M),
    }
    if extra:
        meta.update(extra)
    return meta


def _format_value(x: float) -> str:
    return format(float(x), ".17g")


def to_csv(ds: Dataset) -> str:
    lines = [f"# {k}={ds.meta[k]}" for k in sorted(ds.meta)]
    lines.append(",".join(ds.columns))
    for row in ds.rows:
        lines.append(",".join(_format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> Dataset:
    meta: dict[str, str] = {}
    columns: tuple[str, ...] | None = None
    rows: list[list[float]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                k, v = body.split("=", 1)
                meta[k.strip()] = v.strip()
            continue
        if columns is None:
            columns = tuple(c.strip() for c in line.split(","))
            continue
        rows.append([float(v) for v in line.split(",")])
    if columns is None:
        raise ValueError("no header row found")
    data = np.array(rows, dtype=float).reshape(len(rows), len(columns))
    return Dataset(meta=meta, columns=columns, rows=data)


def to_json(ds: Dataset) -> str:
    payload = {
        "meta": ds.meta,
        "columns": list(ds.columns),
        "rows": [[float(v) for v in row] for row in ds.rows],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def from_json(text: str) -> Dataset:
    payload = json.loads(text)
    rows = np.array(payload["rows"], dtype=float).reshape(
        len(payload["rows"]), len(payload["columns"])
    )
    return Dataset(
        meta={str(k): str(v) for k, v in payload["meta"].items()},
        columns=tuple(payload["columns"]),
        rows=rows,
    )


def dumps(ds: Dataset, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(ds)
    if fmt == "json":
        return to_json(ds)
    raise ValueError(f"unknown format {fmt!r}")


def loads(text: str, fmt: str) -> Dataset:
    if fmt == "csv":
        return from_csv(text)
    if fmt == "json":
        return from_json(text)
    raise ValueError(f"unknown format {fmt!r}")


def apply_unit(ds: Dataset, unit: float) -> Dataset:
    """Rescale to physical units when the rate unit is ``unit`` (e.g. gamma in rad/ns).

    Columns carrying rate^k are multiplied by unit^k (so times divide,
    frequencies multiply); dimensionless columns pass through.  A
    ``unit`` entry is recorded in the metadata.  unit=1 is the identity
    apart from the metadata entry.
    """
    if unit <= 0.0:
        raise ValueError("unit must be positive")
    rows = ds.rows.copy()
    for j, col in enumerate(ds.columns):
        k = COLUMN_UNIT_POWERS.get(col, 0)
        if k:
            rows[:, j] *= unit**k
    meta = dict(ds.meta)
    for key, k in _META_UNIT_POWERS.items():
        if key in meta:
            meta[key] = repr(float(meta[key]) * unit**k)
    meta["unit"] = repr(float(unit))
    return replace(ds, meta=meta, rows=rows)
