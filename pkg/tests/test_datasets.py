"""Dataset container, CSV/JSON serialization, unit rescaling."""

import numpy as np
import pytest

from qwfluor.datasets import (
    Dataset,
    apply_unit,
    base_meta,
    dumps,
    from_csv,
    from_json,
    loads,
    to_csv,
    to_json,
)
from qwfluor.params import SystemParams


def _sample():
    p = SystemParams(g=5.0, kappa=1.2, gamma=1.0, delta=2.0, epsilon=3.0, r=1.0)
    meta = base_meta("intensity", p, extra={"curve": "demo"})
    rows = np.column_stack(
        [np.linspace(0.0, 1.0, 7), np.array([1.0, 1 / 3, 0.1, 1e-17, 2.5e8, np.pi, 7.0])]
    )
    return Dataset(meta=meta, columns=("t", "intensity"), rows=rows)


def test_base_meta_records_params_and_derived():
    ds = _sample()
    for key in ("command", "source", "version", "g", "kappa", "gamma",
                "delta", "epsilon", "r", "Gamma", "mu", "N", "M"):
        assert key in ds.meta
    assert ds.meta["command"] == "intensity"
    assert ds.meta["source"] == "analytic"
    assert float(ds.meta["mu"]) == 5.0990195135927845


def test_csv_round_trip_is_lossless():
    ds = _sample()
    back = from_csv(to_csv(ds))
    assert back.meta == ds.meta
    assert back.columns == ds.columns
    assert np.array_equal(back.rows, ds.rows)


def test_json_round_trip_is_lossless():
    ds = _sample()
    back = from_json(to_json(ds))
    assert back.meta == ds.meta
    assert back.columns == ds.columns
    assert np.array_equal(back.rows, ds.rows)


def test_dumps_loads_both_formats():
    ds = _sample()
    for fmt in ("csv", "json"):
        back = loads(dumps(ds, fmt), fmt)
        assert np.array_equal(back.rows, ds.rows)
    with pytest.raises(ValueError):
        dumps(ds, "yaml")


def test_serialization_is_deterministic():
    a, b = _sample(), _sample()
    assert to_csv(a) == to_csv(b)
    assert to_json(a) == to_json(b)


def test_csv_layout():
    text = to_csv(_sample())
    lines = text.splitlines()
    meta_lines = [ln for ln in lines if ln.startswith("# ")]
    assert meta_lines == sorted(meta_lines)
    header_idx = len(meta_lines)
    assert lines[header_idx] == "t,intensity"
    assert len(lines) == header_idx + 1 + 7
    assert text.endswith("\n")


def test_seventeen_digit_floats_survive():
    # repr-length decimal survives the 17-significant-digit format
    vals = np.array([[1 / 3, np.pi], [1e-300, 1.2345678901234567]])
    ds = Dataset(meta={"command": "demo"}, columns=("a", "b"), rows=vals)
    back = from_csv(to_csv(ds))
    assert np.array_equal(back.rows, vals)


def test_shape_validation():
    with pytest.raises(ValueError):
        Dataset(meta={}, columns=("a", "b"), rows=np.zeros((3, 3)))


def test_apply_unit_scales_time_and_frequency_columns():
    ds = _sample()
    scaled = apply_unit(ds, 2.0)
    # time carries unit^-1, the dimensionless intensity is untouched
    assert np.array_equal(scaled.rows[:, 0], ds.rows[:, 0] / 2.0)
    assert np.array_equal(scaled.rows[:, 1], ds.rows[:, 1])
    assert scaled.meta["unit"] == repr(2.0)

    p = SystemParams(g=6.0, kappa=1.2, gamma=1.0, delta=2.0, epsilon=0.0, r=1.0)
    meta = base_meta("spectrum", p, extra={"peak_lower": repr(-5.0), "peak_upper": repr(7.0), "peak_hwhm": repr(0.55)})
    rows = np.column_stack([np.linspace(-10, 10, 5), np.ones(5)])
    sp = Dataset(meta=meta, columns=("omega", "incoherent"), rows=rows)
    scaled_sp = apply_unit(sp, 3.0)
    assert np.array_equal(scaled_sp.rows[:, 0], rows[:, 0] * 3.0)
    assert np.array_equal(scaled_sp.rows[:, 1], rows[:, 1] / 3.0)
    assert float(scaled_sp.meta["peak_lower"]) == -15.0
    assert float(scaled_sp.meta["peak_hwhm"]) == 0.55 * 3.0


def test_apply_unit_rejects_nonpositive():
    ds = _sample()
    for bad in (0.0, -1.0):
        with pytest.raises(ValueError):
            apply_unit(ds, bad)


def test_unit_identity_preserves_rows():
    ds = _sample()
    same = apply_unit(ds, 1.0)
    assert np.array_equal(same.rows, ds.rows)
