"""Command-line front end.

Thin client over the same handlers the HTTP service uses: every
subcommand builds a request model, executes it in process (or against a
remote service with ``--server``), and emits the resulting dataset as
CSV or JSON with a reproducible metadata header.

Exit codes: 0 success, 1 verification failed beyond tolerance,
2 invalid parameters / unknown preset / degenerate request,
3 I/O problems (unwritable output, malformed config file).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from .datasets import Dataset, dumps
from .observables import ZeroIntensityError
from .oracle import WindowError
from .params import ParameterError
from .service import handlers, models

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_VALIDATION = 2
EXIT_IO = 3

PARAM_KEYS = ("g", "kappa", "gamma", "delta", "epsilon", "r")

DEFAULTS: dict[str, Any] = {
    "g": 5.0,
    "kappa": 1.2,
    "gamma": 1.0,
    "delta": 0.0,
    "epsilon": 0.0,
    "r": 0.0,
    "tmax": 10.0,
    "points": None,  # 401 for time grids, 1201 for spectra
    "omega_min": None,
    "omega_max": None,
    "format": None,  # per-command default: csv for datasets, json for reports
    "out": None,
    "unit": 1.0,
    "tol": 0.02,
    "sign": "both",
    "n": 1,
    "source": "analytic",
    "toggle_drive": "on",
    "toggle_squeezing": "on",
    "paper_literal": False,
    "preset": None,
    "server": None,
    "host": "127.0.0.1",
    "port": 8000,
}

# Config-file value parsers, keyed by normalized option name.
_BOOL_STRINGS = {"true": True, "1": True, "yes": True, "on": True,
                 "false": False, "0": False, "no": False, "off": False}


def _parse_bool(s: str) -> bool:
    try:
        return _BOOL_STRINGS[s.strip().lower()]
    except KeyError:
        raise ValueError(f"not a boolean: {s!r}") from None


KEY_TYPES: dict[str, Callable[[str], Any]] = {
    "g": float, "kappa": float, "gamma": float, "delta": float,
    "epsilon": float, "r": float, "tmax": float, "omega_min": float,
    "omega_max": float, "unit": float, "tol": float,
    "points": int, "n": int, "port": int,
    "format": str, "out": str, "sign": str, "source": str,
    "toggle_drive": str, "toggle_squeezing": str, "preset": str,
    "server": str, "host": str,
    "paper_literal": _parse_bool,
}


class ConfigError(Exception):
    pass


class UsageError(Exception):
    pass


def load_config(path: str) -> dict[str, Any]:
    """Flat key=value file, UTF-8, # comments; keys match the CLI flags."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        norm = key.replace("-", "_")
        if norm not in KEY_TYPES:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[norm] = KEY_TYPES[norm](value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {exc}") from exc
    return out


@dataclass(frozen=True)
class RunConfig:
    """Everything that determines one CLI run; round-trips through dataset metadata."""

    command: str
    g: float
    kappa: float
    gamma: float
    delta: float
    epsilon: float
    r: float
    start: float
    stop: float
    count: int
    toggle_drive: bool = True
    toggle_squeezing: bool = True
    fmt: str = "csv"
    out: str | None = None
    unit: float = 1.0
    tol: float = 0.02
    sign: str = "both"
    n: int = 1
    source: str = "analytic"
    paper_literal: bool = False
    preset: str | None = None

    def to_meta(self) -> dict[str, str]:
        meta = {
            "command": self.command,
            "g": repr(self.g),
            "kappa": repr(self.kappa),
            "gamma": repr(self.gamma),
            "delta": repr(self.delta),
            "epsilon": repr(self.epsilon),
            "r": repr(self.r),
            "grid_start": repr(self.start),
            "grid_stop": repr(self.stop),
            "grid_count": str(self.count),
            "toggle_drive": "on" if self.toggle_drive else "off",
            "toggle_squeezing": "on" if self.toggle_squeezing else "off",
            "format": self.fmt,
            "unit": repr(self.unit),
            "tol": repr(self.tol),
            "sign": self.sign,
            "n": str(self.n),
            "source": self.source,
            "paper_literal": "true" if self.paper_literal else "false",
        }
        if self.out is not None:
            meta["out"] = self.out
        if self.preset is not None:
            meta["preset"] = self.preset
        return meta

    @classmethod
    def from_meta(cls, meta: dict[str, str]) -> "RunConfig":
        return cls(
            command=meta["command"],
            g=float(meta["g"]),
            kappa=float(meta["kappa"]),
            gamma=float(meta["gamma"]),
            delta=float(meta["delta"]),
            epsilon=float(meta["epsilon"]),
            r=float(meta["r"]),
            start=float(meta["grid_start"]),
            stop=float(meta["grid_stop"]),
            count=int(meta["grid_count"]),
            toggle_drive=meta["toggle_drive"] == "on",
            toggle_squeezing=meta["toggle_squeezing"] == "on",
            fmt=meta["format"],
            out=meta.get("out"),
            unit=float(meta["unit"]),
            tol=float(meta["tol"]),
            sign=meta["sign"],
            n=int(meta["n"]),
            source=meta["source"],
            paper_literal=meta["paper_literal"] == "true",
            preset=meta.get("preset"),
        )


# ---------------------------------------------------------------------------
# transport: in-process handlers by default, httpx against --server otherwise

_client_factory: Callable[[str], Any] | None = None


def set_client_factory(factory: Callable[[str], Any] | None) -> None:
    """Install a client factory for --server mode (tests inject a TestClient)."""
    global _client_factory
    _client_factory = factory


class RemoteError(Exception):
    def __init__(self, status_code: int, detail: Any):
        super().__init__(f"server returned {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


def _remote_call(server: str, method: str, path: str, payload: Any = None) -> Any:
    if _client_factory is not None:
        client = _client_factory(server)
    else:
        import httpx

        client = httpx.Client(base_url=server, timeout=120.0)
    with client:
        if method == "GET":
            resp = client.get(path)
        else:
            resp = client.post(path, json=payload)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except Exception:
            detail = resp.text
        raise RemoteError(resp.status_code, detail)
    return resp.json()


def _run_request(server: str | None, path: str, request, response_model):
    """Execute a request model locally or against a server."""
    if server is None:
        handler = {
            "/params/derive": handlers.handle_derive,
            "/params/validate": handlers.handle_validate,
            "/envelopes": handlers.handle_envelopes,
            "/intensity": handlers.handle_intensity,
            "/spectrum": handlers.handle_spectrum,
            "/g2": handlers.handle_g2,
            "/variance": handlers.handle_variance,
            "/dressed": handlers.handle_dressed,
            "/verify": handlers.handle_verify,
        }[path]
        return handler(request)
    data = _remote_call(server, "POST", path, request.model_dump(mode="json"))
    return response_model.model_validate(data)


# ---------------------------------------------------------------------------
# argparse construction

def _add_param_flags(sp: argparse.ArgumentParser) -> None:
    for key in PARAM_KEYS:
        sp.add_argument(f"--{key}", type=float, default=None,
                        help=f"{key} (default {DEFAULTS[key]:g})")
    sp.add_argument("--config", default=None, metavar="FILE",
                    help="flat key=value config file; CLI flags override it")
    sp.add_argument("--server", default=None, metavar="URL",
                    help="run against a qwfluor service instead of in process")
    sp.add_argument("--format", choices=("csv", "json"), default=None, dest="format")
    sp.add_argument("--out", default=None, metavar="PATH",
                    help="output file (figure: output directory); default stdout")
    sp.add_argument("--unit", type=float, default=None,
                    help="physical value of the unit rate; rescales time/frequency columns")


def _add_time_grid(sp: argparse.ArgumentParser, what: str = "time") -> None:
    sp.add_argument("--tmax", type=float, default=None,
                    help=f"{what} grid end (default {DEFAULTS['tmax']:g})")
    sp.add_argument("--points", type=int, default=None,
                    help=f"grid size (default {DEFAULTS['points']})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwfluor",
        description="Driven quantum-well microcavity with a squeezed reservoir: "
                    "closed-form observables, numerical oracles, figure datasets.",
    )
    parser.add_argument("--version", action="version", version=f"qwfluor {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("intensity", help="fluorescence intensity <b+b>(t)")
    _add_param_flags(sp)
    _add_time_grid(sp)
    sp.add_argument("--toggle-drive", choices=("on", "off"), default=None)
    sp.add_argument("--toggle-squeezing", choices=("on", "off"), default=None)
    sp.add_argument("--source", choices=("analytic", "oracle"), default=None)

    sp = sub.add_parser("envelopes", help="strong-coupling envelopes eta(t)")
    _add_param_flags(sp)
    _add_time_grid(sp)

    sp = sub.add_parser("spectrum", help="steady-state emission spectrum")
    _add_param_flags(sp)
    sp.add_argument("--omega-min", type=float, default=None,
                    help="grid start, offset from the drive frequency (default: auto)")
    sp.add_argument("--omega-max", type=float, default=None,
                    help="grid end (default: auto window around the peaks)")
    sp.add_argument("--points", type=int, default=None,
                    help="grid size (default 1201 for spectra)")
    sp.add_argument("--source", choices=("analytic", "oracle"), default=None)

    sp = sub.add_parser("g2", help="intensity correlation g2(tau)")
    _add_param_flags(sp)
    _add_time_grid(sp, what="delay")
    sp.add_argument("--paper-literal", action="store_true", default=None,
                    help="use the uncorrected printed A1 coefficient")
    sp.add_argument("--source", choices=("analytic", "oracle"), default=None)

    sp = sub.add_parser("variance", help="exciton quadrature variances")
    _add_param_flags(sp)
    _add_time_grid(sp)
    sp.add_argument("--sign", choices=("plus", "minus", "both"), default=None)
    sp.add_argument("--paper-literal", action="store_true", default=None,
                    help="use the uncorrected printed lambda4 coefficient")
    sp.add_argument("--source", choices=("analytic", "oracle"), default=None)

    sp = sub.add_parser("dressed", help="dressed states of an excitation manifold")
    _add_param_flags(sp)
    sp.add_argument("--n", type=int, choices=(1, 2), default=None,
                    help="excitation manifold (default 1)")

    sp = sub.add_parser("verify", help="closed forms vs numerical oracles")
    _add_param_flags(sp)
    sp.add_argument("--tol", type=float, default=None,
                    help=f"max relative error tolerance (default {DEFAULTS['tol']})")
    sp.add_argument("--paper-literal", action="store_true", default=None,
                    help="verify the uncorrected printed coefficients instead")

    sp = sub.add_parser("figure", help="emit a named figure dataset family")
    _add_param_flags(sp)
    sp.add_argument("--preset", default=None, help="preset name, e.g. fig1 .. fig9")
    sp.add_argument("--list", action="store_true", dest="list_presets",
                    help="list available presets and exit")

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default=None)
    sp.add_argument("--port", type=int, default=None)

    return parser


def _resolve(args: argparse.Namespace, config: dict[str, Any]) -> dict[str, Any]:
    """CLI flag > config file > built-in default, per option."""
    merged: dict[str, Any] = {}
    for key, fallback in DEFAULTS.items():
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            merged[key] = cli_val
        elif key in config:
            merged[key] = config[key]
        else:
            merged[key] = fallback
    return merged


# ---------------------------------------------------------------------------
# emission helpers

def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


def _dataset_from_model(model: models.DatasetModel, cfg: RunConfig) -> Dataset:
    meta = dict(model.meta)
    meta.update(cfg.to_meta())
    rows = np.array(model.rows, dtype=float).reshape(len(model.rows), len(model.columns))
    return Dataset(meta=meta, columns=tuple(model.columns), rows=rows)


def _cfg_with_response_grid(cfg: RunConfig, meta: dict[str, str]) -> RunConfig:
    # auto-chosen grids (spectrum) come back in the response metadata
    from dataclasses import replace

    if "grid_start" in meta:
        return replace(
            cfg,
            start=float(meta["grid_start"]),
            stop=float(meta["grid_stop"]),
            count=int(meta["grid_count"]),
        )
    return cfg


def _emit_dataset(model: models.DatasetModel, cfg: RunConfig) -> None:
    cfg = _cfg_with_response_grid(cfg, model.meta)
    ds = _dataset_from_model(model, cfg)
    _write_text(dumps(ds, cfg.fmt), cfg.out)


# ---------------------------------------------------------------------------
# subcommand implementations

def _params_model(v: dict[str, Any]) -> models.ParamsModel:
    return models.ParamsModel(**{k: v[k] for k in PARAM_KEYS})


def _base_cfg(command: str, v: dict[str, Any], start: float, stop: float,
              count: int, fmt: str) -> RunConfig:
    return RunConfig(
        command=command,
        g=v["g"], kappa=v["kappa"], gamma=v["gamma"], delta=v["delta"],
        epsilon=v["epsilon"], r=v["r"],
        start=start, stop=stop, count=count,
        toggle_drive=v["toggle_drive"] == "on",
        toggle_squeezing=v["toggle_squeezing"] == "on",
        fmt=fmt, out=v["out"], unit=v["unit"], tol=v["tol"],
        sign=v["sign"], n=v["n"], source=v["source"],
        paper_literal=bool(v["paper_literal"]), preset=v["preset"],
    )


def _grid_points(v: dict[str, Any], fallback: int = 401) -> int:
    return v["points"] if v["points"] is not None else fallback


def _cmd_intensity(v: dict[str, Any]) -> int:
    fmt = v["format"] or "csv"
    count = _grid_points(v)
    cfg = _base_cfg("intensity", v, 0.0, v["tmax"], count, fmt)
    req = models.IntensityRequest(
        params=_params_model(v),
        grid=models.GridModel(start=0.0, stop=v["tmax"], count=count),
        toggles=models.TogglesModel(drive=cfg.toggle_drive, squeezing=cfg.toggle_squeezing),
        source=v["source"],
        unit=v["unit"],
    )
    resp = _run_request(v["server"], "/intensity", req, models.DatasetModel)
    _emit_dataset(resp, cfg)
    return EXIT_OK


def _cmd_envelopes(v: dict[str, Any]) -> int:
    fmt = v["format"] or "csv"
    count = _grid_points(v)
    cfg = _base_cfg("envelopes", v, 0.0, v["tmax"], count, fmt)
    req = models.EnvelopesRequest(
        params=_params_model(v),
        grid=models.GridModel(start=0.0, stop=v["tmax"], count=count),
        unit=v["unit"],
    )
    resp = _run_request(v["server"], "/envelopes", req, models.DatasetModel)
    _emit_dataset(resp, cfg)
    return EXIT_OK


def _cmd_spectrum(v: dict[str, Any]) -> int:
    fmt = v["format"] or "csv"
    if (v["omega_min"] is None) != (v["omega_max"] is None):
        raise UsageError("--omega-min and --omega-max must be given together")
    if v["omega_min"] is not None:
        count = _grid_points(v, fallback=1201)
        grid = models.GridModel(start=v["omega_min"], stop=v["omega_max"], count=count)
    else:
        grid = None
    req = models.SpectrumRequest(
        params=_params_model(v), grid=grid, source=v["source"], unit=v["unit"]
    )
    resp = _run_request(v["server"], "/spectrum", req, models.DatasetModel)
    # placeholder grid; the response metadata carries the grid actually used
    cfg = _base_cfg("spectrum", v, 0.0, 1.0, 2, fmt)
    _emit_dataset(resp, cfg)
    return EXIT_OK


def _cmd_g2(v: dict[str, Any]) -> int:
    fmt = v["format"] or "csv"
    count = _grid_points(v)
    cfg = _base_cfg("g2", v, 0.0, v["tmax"], count, fmt)
    req = models.G2Request(
        params=_params_model(v),
        grid=models.GridModel(start=0.0, stop=v["tmax"], count=count),
        paper_literal=cfg.paper_literal,
        source=v["source"],
        unit=v["unit"],
    )
    resp = _run_request(v["server"], "/g2", req, models.DatasetModel)
    _emit_dataset(resp, cfg)
    return EXIT_OK


def _cmd_variance(v: dict[str, Any]) -> int:
    fmt = v["format"] or "csv"
    count = _grid_points(v)
    cfg = _base_cfg("variance", v, 0.0, v["tmax"], count, fmt)
    req = models.VarianceRequest(
        params=_params_model(v),
        grid=models.GridModel(start=0.0, stop=v["tmax"], count=count),
        sign=v["sign"],
        paper_literal=cfg.paper_literal,
        source=v["source"],
        unit=v["unit"],
    )
    resp = _run_request(v["server"], "/variance", req, models.DatasetModel)
    _emit_dataset(resp, cfg)
    return EXIT_OK


def _cmd_dressed(v: dict[str, Any]) -> int:
    import json

    fmt = v["format"] or "json"
    req = models.DressedRequest(params=_params_model(v), n=v["n"])
    resp = _run_request(v["server"], "/dressed", req, models.DressedResponse)
    if fmt == "json":
        payload = resp.model_dump()
        payload["params"] = _params_model(v).model_dump()
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
        _write_text(text, v["out"])
        return EXIT_OK
    cfg = _base_cfg("dressed", v, 0.0, 1.0, 2, fmt)
    cols = ["eigenvalue"]
    for label in resp.basis:
        stem = label.strip("|>").replace(",", "_")
        cols += [f"c{stem}_re", f"c{stem}_im"]
    rows = []
    for k, ev in enumerate(resp.eigenvalues):
        row = [ev]
        for j in range(len(resp.basis)):
            row += [resp.eigenvectors_re[k][j], resp.eigenvectors_im[k][j]]
        rows.append(row)
    meta = {"basis": ";".join(resp.basis), "residual": repr(resp.residual)}
    meta.update(cfg.to_meta())
    ds = Dataset(meta=meta, columns=tuple(cols), rows=np.array(rows))
    _write_text(dumps(ds, "csv"), v["out"])
    return EXIT_OK


def _cmd_verify(v: dict[str, Any]) -> int:
    import json

    fmt = v["format"] or "json"
    req = models.VerifyRequest(
        params=_params_model(v), tolerance=v["tol"], paper_literal=bool(v["paper_literal"])
    )
    resp = _run_request(v["server"], "/verify", req, models.VerifyResponse)
    if fmt == "json":
        text = json.dumps(resp.model_dump(), sort_keys=True, indent=2) + "\n"
        _write_text(text, v["out"])
    else:
        cfg = _base_cfg("verify", v, 0.0, 1.0, 2, fmt)
        meta = cfg.to_meta()
        meta["variant"] = resp.variant
        meta["passed"] = "true" if resp.passed else "false"
        meta["notes"] = "; ".join(
            f"{e.observable}: {e.note}" for e in resp.entries if e.note
        )
        rows = np.array(
            [
                [i, e.max_rel_error, e.tolerance, 1.0 if e.passed else 0.0]
                for i, e in enumerate(resp.entries)
            ]
        )
        meta["observables"] = ";".join(e.observable for e in resp.entries)
        ds = Dataset(
            meta=meta,
            columns=("index", "max_rel_error", "tolerance", "passed"),
            rows=rows,
        )
        _write_text(dumps(ds, "csv"), v["out"])
    if not resp.passed:
        print(
            f"verification FAILED at tolerance {resp.tolerance:g} "
            f"(variant: {resp.variant})",
            file=sys.stderr,
        )
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _cmd_figure(v: dict[str, Any]) -> int:
    if v.get("list_presets"):
        if v["server"] is None:
            infos = handlers.list_figures()
        else:
            data = _remote_call(v["server"], "GET", "/figures")
            infos = [models.FigureInfo.model_validate(x) for x in data]
        for info in infos:
            sys.stdout.write(f"{info.name}: {info.description}\n")
        return EXIT_OK
    name = v["preset"]
    if not name:
        raise UsageError("figure requires --preset NAME (or --list)")
    if v["server"] is None:
        resp = handlers.handle_figure(name)
    else:
        data = _remote_call(v["server"], "POST", f"/figures/{name}")
        resp = models.FigureResponse.model_validate(data)
    fmt = v["format"] or "csv"
    out_dir = v["out"]
    chunks = []
    for named in resp.datasets:
        cfg = _base_cfg(named.dataset.meta.get("command", "figure"), v, 0.0, 1.0, 2, fmt)
        cfg = _cfg_with_response_grid(cfg, named.dataset.meta)
        from dataclasses import replace

        cfg = replace(
            cfg,
            preset=name,
            g=float(named.dataset.meta["g"]),
            kappa=float(named.dataset.meta["kappa"]),
            gamma=float(named.dataset.meta["gamma"]),
            delta=float(named.dataset.meta["delta"]),
            epsilon=float(named.dataset.meta["epsilon"]),
            r=float(named.dataset.meta["r"]),
        )
        ds = _dataset_from_model(named.dataset, cfg)
        text = dumps(ds, fmt)
        if out_dir is None:
            chunks.append(text)
        else:
            directory = Path(out_dir)
            directory.mkdir(parents=True, exist_ok=True)
            (directory / f"{name}_{named.label}.{fmt}").write_text(text, encoding="utf-8")
    if out_dir is None:
        sys.stdout.write("\n".join(chunks))
    return EXIT_OK


def _cmd_serve(v: dict[str, Any]) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=v["host"], port=v["port"])
    return EXIT_OK


_COMMANDS = {
    "intensity": _cmd_intensity,
    "envelopes": _cmd_envelopes,
    "spectrum": _cmd_spectrum,
    "g2": _cmd_g2,
    "variance": _cmd_variance,
    "dressed": _cmd_dressed,
    "verify": _cmd_verify,
    "figure": _cmd_figure,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if getattr(args, "config", None) else {}
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_IO

    v = _resolve(args, config)
    v["list_presets"] = getattr(args, "list_presets", False)

    try:
        return _COMMANDS[args.command](v)
    except ParameterError as exc:
        print("invalid parameters:", file=sys.stderr)
        for msg in exc.report.errors:
            print(f"  {msg}", file=sys.stderr)
        return EXIT_VALIDATION
    except ZeroIntensityError as exc:
        print(f"degenerate request: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (KeyError, WindowError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RemoteError as exc:
        print(f"server error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION if exc.status_code in (404, 422) else EXIT_IO
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
