"""Command-line front end: parameter scans, verification tables, file export.

Subcommands
-----------
exponents   exponent sets and the L-cancellation residual for all channels
sumrule     brute-force vs closed-form momentum sums of |F_a|^2
spectral    finite-size histogram vs continuum closed form around an edge
shiftcheck  high-energy shift reduction deviation vs particle position
dsf         small-k density structure factor band

Output is CSV (header row, '.' decimal separator, 17 significant digits,
LF line endings) or JSON; identical configurations produce byte-identical
files.  Exit codes: 0 success, 2 configuration error, 3 degenerate
channel, 4 numeric failure (any non-finite value is fatal).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .channels import (
    ChannelSpec,
    DegenerateChannelError,
    LuttingerParams,
    all_channels,
    epsilon_lower,
    epsilon_upper,
    exponents_for_channel,
    threshold_energy,
)
from .formfactors import (
    GammaPoleError,
    ParticleHoleConfig,
    enumerate_configs,
    shift_reduction_check,
    sum_rule_bruteforce,
    sum_rule_closed,
)
from .spectral import (
    FitWindowError,
    amplitude_ratio,
    continuum_hole,
    continuum_particle,
    default_bins,
    finite_L_sum,
    power_fit,
    resolve_ff_norm,
)

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


class NumericFailure(RuntimeError):
    pass


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise NumericFailure(f"non-finite value in output: {x!r}")
        return f"{float(x):.17g}"
    return str(x)


def _write_csv(path: str | None, header: list[str], rows: list[list]) -> None:
    text = "\n".join([",".join(header)] + [",".join(_fmt(v) for v in row) for row in rows]) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _write_json(path: str | None, payload: dict) -> None:
    def guard(obj):
        if isinstance(obj, float) and not math.isfinite(obj):
            raise NumericFailure(f"non-finite value in output: {obj!r}")
        if isinstance(obj, dict):
            for v in obj.values():
                guard(v)
        elif isinstance(obj, (list, tuple)):
            for v in obj:
                guard(v)

    guard(payload)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _rows_to_json(header: list[str], rows: list[list]) -> list[dict]:
    return [dict(zip(header, row)) for row in rows]


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad numeric list {text!r}") from exc


# ---------------------------------------------------------------- run config


@dataclass
class OmegaGrid:
    """Frequency sampling. 'log-offset-from-threshold' samples |domega| in
    [min, max] geometrically on both sides of the edge; 'linear' samples
    omega itself in [min, max]."""

    min: float = 0.3
    max: float = 2.8
    count: int = 25
    spacing: str = "log-offset-from-threshold"

    def validate(self) -> None:
        if self.count < 2:
            raise ConfigError("omega_grid.count must be >= 2")
        if self.spacing not in ("log-offset-from-threshold", "linear"):
            raise ConfigError(f"unknown omega_grid.spacing {self.spacing!r}")
        if not (0 < self.min < self.max):
            raise ConfigError("need 0 < omega_grid.min < omega_grid.max")


DEMO_PARAMS = {"xi": 2.0, "v": 0.19, "m_eff": 1.0, "L": 2.0 * math.pi * 200.0}


@dataclass
class RunConfig:
    """Scan configuration for the `spectral` subcommand; every field has a
    default.  The demo setup (xi=2, v=0.19, m=1, L=2pi*200, k=2, qmax=2000)
    keeps the two grid velocities incommensurate and close enough that both
    sides of the particle edge expose a clean fitted decade."""

    params: LuttingerParams = field(default_factory=lambda: LuttingerParams(**DEMO_PARAMS))
    channel: ChannelSpec = field(default_factory=lambda: ChannelSpec.from_name("fermion_particle"))
    k_list: list[float] = field(default_factory=lambda: [2.0])
    omega_grid: OmegaGrid = field(default_factory=OmegaGrid)
    qmax: int = 2000
    bins_per_decade: int = 8
    out_path: str = "spectral.csv"
    out_format: str = "csv"
    seed: int = 0

    def validate(self) -> None:
        self.omega_grid.validate()
        if self.qmax < 10:
            raise ConfigError("qmax must be >= 10")
        if self.out_format not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.out_format!r}")
        if not self.k_list or any(k <= 0 for k in self.k_list):
            raise ConfigError("k_list must contain positive momenta")
        if self.bins_per_decade < 1:
            raise ConfigError("bins_per_decade must be >= 1")


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a single JSON object")

    p = dict(data.get("params", {}))
    if getattr(args, "xi", None) is not None:
        p["xi"] = args.xi
    for flag, key in (("v", "v"), ("m_eff", "m_eff"), ("L", "L"),
                      ("c0", "c0"), ("ff_norm", "ff_norm")):
        val = getattr(args, flag, None)
        if val is not None:
            p[key] = val
    for key, val in DEMO_PARAMS.items():
        p.setdefault(key, val)
    try:
        params = LuttingerParams(**p)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad params: {exc}") from exc

    channel_name = getattr(args, "channel", None) or data.get("channel", "fermion_particle")
    try:
        channel = ChannelSpec.from_name(channel_name, data.get("omega_sign"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    try:
        grid = OmegaGrid(**data.get("omega_grid", {}))
    except TypeError as exc:
        raise ConfigError(f"bad omega_grid: {exc}") from exc
    k_list = data.get("k_list", [2.0])
    if getattr(args, "k", None) is not None:
        k_list = [args.k]
    out = dict(data.get("output", {}))
    cfg = RunConfig(
        params=params,
        channel=channel,
        k_list=[float(k) for k in k_list],
        omega_grid=grid,
        qmax=int(getattr(args, "qmax", None) or data.get("qmax", 2000)),
        bins_per_decade=int(data.get("bins_per_decade", 8)),
        out_path=getattr(args, "out", None) or out.get("path", "spectral.csv"),
        out_format=getattr(args, "format", None) or out.get("format", "csv"),
        seed=int(data.get("seed", 0)),
    )
    cfg.validate()
    return cfg


# ---------------------------------------------------------------- subcommands


def cmd_exponents(args: argparse.Namespace) -> None:
    xi_list = _parse_float_list(args.xi_list)
    header = ["channel", "omega_sign", "xi", "a", "delta1", "delta2", "alpha", "mu",
              "residual", "degenerate"]
    rows = []
    for xi in xi_list:
        for channel in all_channels():
            e = exponents_for_channel(channel, xi)
            rows.append([
                channel.name, channel.omega_sign.value, xi, e.a, e.delta1, e.delta2,
                e.alpha, e.mu, e.cancellation_residual(), e.degenerate_reason() or "",
            ])
    if args.format == "json":
        _write_json(args.out, {"schema_version": SCHEMA_VERSION,
                               "rows": _rows_to_json(header, rows)})
    else:
        _write_csv(args.out, header, rows)


def cmd_sumrule(args: argparse.Namespace) -> None:
    a_list = _parse_float_list(args.a_list)
    header = ["m", "a", "configs", "bruteforce", "closed", "rel_err"]
    rows = []
    for m in range(args.m_max + 1):
        n_configs = len(enumerate_configs(m, cap=args.cap))
        for a in a_list:
            brute = sum_rule_bruteforce(m, a, cap=args.cap)
            closed = sum_rule_closed(m, a * a)
            rows.append([m, a, n_configs, brute, closed, abs(brute / closed - 1.0)])
    if args.format == "json":
        _write_json(args.out, {"schema_version": SCHEMA_VERSION,
                               "rows": _rows_to_json(header, rows)})
    else:
        _write_csv(args.out, header, rows)


def cmd_shiftcheck(args: argparse.Namespace) -> None:
    p_list = [int(p) for p in _parse_float_list(args.p_list)]
    pair = ParticleHoleConfig((1,), (0,))
    empty = ParticleHoleConfig((), ())
    rows = []
    for p in p_list:
        rows.append([p, shift_reduction_check(p, empty, args.a),
                     shift_reduction_check(p, pair, args.a)])
    logs = [(math.log(r[0]), math.log(r[2])) for r in rows if r[2] > 0]
    if len(logs) >= 2:
        xs, ys = zip(*logs)
        slope = np.polyfit(xs, ys, 1)[0]
    else:
        slope = 0.0
    header = ["p", "deviation_empty", "deviation_pair", "fitted_decay"]
    rows = [r + [float(slope)] for r in rows]
    if args.format == "json":
        _write_json(args.out, {"schema_version": SCHEMA_VERSION, "fitted_decay": float(slope),
                               "rows": _rows_to_json(header, rows)})
    else:
        _write_csv(args.out, header, rows)


def _sidecar_path(out_path: str) -> str:
    return str(Path(out_path).with_suffix("")) + ".meta.json"


def _spectral_series(cfg: RunConfig, k: float) -> tuple[list[list], dict]:
    channel, params = cfg.channel, cfg.params
    exps = exponents_for_channel(channel, params.xi)
    bins = default_bins(channel, k, params, cfg.qmax, cfg.bins_per_decade)
    hist = finite_L_sum(channel, k, params, cfg.qmax, bins=bins)
    eps = threshold_energy(channel, k, params)

    grid = cfg.omega_grid
    if grid.spacing == "linear":
        targets = [w - eps for w in np.linspace(grid.min, grid.max, grid.count)]
    else:
        offsets = np.geomspace(grid.min, grid.max, grid.count)
        targets = sorted([-d for d in offsets] + [+d for d in offsets])

    # each requested offset is snapped to the geometric center of its
    # histogram bin so the binned density and the closed form are compared
    # at the same point; offsets sharing a bin collapse to one row
    edges = hist.bin_edges
    i0 = hist.threshold_index
    rows = []
    seen: set[int] = set()
    for target in targets:
        idx = int(np.searchsorted(edges, target) - 1)
        if not (0 <= idx < hist.weights.size) or idx == i0 or idx in seen:
            continue
        seen.add(idx)
        lo, hi = edges[idx], edges[idx + 1]
        if lo > 0:
            dw = math.sqrt(lo * hi)
        elif hi < 0:
            dw = -math.sqrt(lo * hi)
        else:
            continue
        omega = eps + dw
        a_fin = float(hist.weights[idx])
        if exps.hole:
            a_cont = continuum_hole(omega, k, params, channel).a_value
        else:
            a_cont = continuum_particle(omega, k, params, channel).a_value
        if a_cont > 0.0:
            rel = abs(a_fin / a_cont - 1.0)
        else:
            rel = 0.0 if a_fin == 0.0 else float("inf")
        rows.append([channel.name, params.xi, k, omega, dw, a_fin, a_cont, rel])

    entry: dict = {
        "k": k,
        "threshold": eps,
        "mu": exps.mu,
        "analytic_slope": -exps.mu,
        "alpha": exps.alpha,
        "fits": {},
    }
    for side, name in ((1, "positive"), (-1, "negative")):
        if side < 0 and exps.hole:
            continue
        try:
            fit = power_fit(hist, side)
        except FitWindowError:
            continue
        entry["fits"][name] = {
            "fitted_slope": fit.slope,
            "analytic_slope": -exps.mu,
            "log_amplitude": fit.log_amplitude,
            "n_bins": fit.n_bins,
            "window": list(fit.window),
            "decades": fit.decades,
        }
    if not exps.hole:
        analytic_ratio = math.sin(math.pi * exps.beta2) / math.sin(math.pi * exps.beta1)
        try:
            entry["amplitude_ratio"] = {
                "fitted": amplitude_ratio(hist),
                "analytic": analytic_ratio,
            }
        except FitWindowError:
            entry["amplitude_ratio"] = {"analytic": analytic_ratio}
    return rows, entry


def cmd_spectral(args: argparse.Namespace) -> None:
    cfg = _load_run_config(args)
    header = ["channel", "xi", "k", "omega", "domega", "A_finiteL", "A_continuum", "rel_dev"]
    rows: list[list] = []
    series = []
    for k in cfg.k_list:
        k_rows, entry = _spectral_series(cfg, k)
        rows.extend(k_rows)
        series.append(entry)
    exps = exponents_for_channel(cfg.channel, cfg.params.xi)
    meta = {
        "schema_version": SCHEMA_VERSION,
        "kind": "spectral",
        "channel": cfg.channel.name,
        "omega_sign": cfg.channel.omega_sign.value,
        "xi": cfg.params.xi,
        "v": cfg.params.v,
        "m_eff": cfg.params.m_eff,
        "L": cfg.params.L,
        "ff_norm": resolve_ff_norm(cfg.params, exps.alpha),
        "qmax": cfg.qmax,
        "bins_per_decade": cfg.bins_per_decade,
        "series": series,
    }
    if cfg.out_format == "json":
        _write_json(cfg.out_path, {**meta, "rows": _rows_to_json(header, rows)})
    else:
        _write_csv(cfg.out_path, header, rows)
        _write_json(_sidecar_path(cfg.out_path), meta)


def cmd_dsf(args: argparse.Namespace) -> None:
    from .spectral import dsf_step

    try:
        params = LuttingerParams(xi=args.xi, v=args.v or 1.0, m_eff=args.m_eff or 1.0,
                                 L=args.L or 2.0 * math.pi * 1.0e3)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    k = args.k
    if k is None or k <= 0:
        raise ConfigError("dsf requires --k > 0")
    e_lo, e_hi = epsilon_lower(k, params), epsilon_upper(k, params)
    pad = 0.25 * (e_hi - e_lo)
    omegas = np.linspace(e_lo - pad, e_hi + pad, args.count)
    header = ["omega", "value"]
    rows = [[float(w), dsf_step(float(w), k, params)] for w in omegas]
    meta = {
        "schema_version": SCHEMA_VERSION,
        "kind": "dsf",
        "xi": params.xi,
        "k": k,
        "band": [e_lo, e_hi],
        "height": params.m_eff / (k * params.xi),
        "integral": k / params.xi,
    }
    if args.format == "json":
        _write_json(args.out, {**meta, "rows": _rows_to_json(header, rows)})
    else:
        _write_csv(args.out, header, rows)
        if args.out and args.out != "-":
            _write_json(_sidecar_path(args.out), meta)


# ---------------------------------------------------------------- entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlll", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None, help="output path ('-' = stdout)")
        p.add_argument("--format", default="csv", choices=["csv", "json"])

    p = sub.add_parser("exponents", help="exponent sets for all channels")
    p.add_argument("--xi", dest="xi_list", default="0.25,0.5,1.0,2.0,4.0",
                   help="comma-separated xi values")
    add_common(p)
    p.set_defaults(func=cmd_exponents)

    p = sub.add_parser("sumrule", help="brute-force vs closed momentum sums")
    p.add_argument("--m-max", type=int, default=12)
    p.add_argument("--a-list", default="0.3,0.7,1.25,1.9")
    p.add_argument("--cap", type=int, default=40, help="enumeration cap on m")
    add_common(p)
    p.set_defaults(func=cmd_sumrule)

    p = sub.add_parser("shiftcheck", help="high-energy shift reduction deviations")
    p.add_argument("--p-list", default="100,1000,10000")
    p.add_argument("--a", type=float, default=1.25)
    add_common(p)
    p.set_defaults(func=cmd_shiftcheck)

    p = sub.add_parser("spectral", help="finite-size vs continuum edge scan")
    p.add_argument("--config", default=None, help="JSON run configuration")
    p.add_argument("--xi", type=float, default=None)
    p.add_argument("--channel", default=None)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--qmax", type=int, default=None)
    p.add_argument("--v", type=float, default=None)
    p.add_argument("--m-eff", dest="m_eff", type=float, default=None)
    p.add_argument("--L", type=float, default=None)
    p.add_argument("--c0", type=float, default=None)
    p.add_argument("--ff-norm", dest="ff_norm", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", default=None, choices=["csv", "json"])
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("dsf", help="small-k density structure factor band")
    p.add_argument("--k", type=float, default=0.1)
    p.add_argument("--xi", type=float, default=2.0)
    p.add_argument("--v", type=float, default=None)
    p.add_argument("--m-eff", dest="m_eff", type=float, default=None)
    p.add_argument("--L", type=float, default=None)
    p.add_argument("--count", type=int, default=201)
    add_common(p)
    p.set_defaults(func=cmd_dsf)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (DegenerateChannelError, GammaPoleError) as exc:
        print(f"degenerate channel: {exc}", file=sys.stderr)
        return 3
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
