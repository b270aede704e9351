"""Command-line runner: ``zeroexp <subcommand> [--config FILE] [--key value ...]``.

Every setting can come from a key=value config file and be overridden by a
flag of the same name (dashes or underscores). Exit status: 0 on success,
1 when an invariant fails, 2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .construct import sample_point
from .dyadic import DyadicRational
from .measure import cylinder_measure
from .params import DepthError, ParameterError, ProcessParams
from .stats.bounds import bound_report
from .stats.complexity import complexity, complexity_bound, complexity_level
from .stats.experiment import grid_table, run_return_experiment
from .stats.mixing import correlation_profile
from .verify import run_suites

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE = 0, 1, 2

COMMAND_PRESETS = {
    "verify": "tiny",
    "measure": "ladder",
    "return-stats": "fast",
    "complexity": "tiny",
    "mixing": "fast",
    "sample": "tiny",
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    preset: str | None = None
    b: str | None = None
    depth: int | None = None
    seed: int = 0
    prefix_length: int | None = None
    n_texts: int = 32
    ns: str = "auto"
    n_max: int = 256
    min_gaps: int = 500
    word: str | None = None
    words: str | None = None
    grid: str = "0.05:5:0.05"
    output: str = "-"
    format: str = "text"
    fault: bool = False
    cap: int = 1 << 20
    suites: str | None = None
    lengths: str = "1-16"
    pairs: str = "1:1,1:2,10:2"
    lags: str = "100,1000,10000"

    def params(self, command: str) -> ProcessParams:
        try:
            if self.b:
                b = tuple(int(x) for x in self.b.split(","))
                pp = ProcessParams(b)
            else:
                pp = ProcessParams.preset(self.preset or COMMAND_PRESETS[command])
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.depth is not None:
            if not 1 <= self.depth <= pp.depth:
                raise ConfigError(f"depth {self.depth} outside 1..{pp.depth}")
            pp = ProcessParams(pp.b[: self.depth])
        return pp


_BOOL = {"1": True, "true": True, "yes": True, "on": True, "0": False, "false": False, "no": False, "off": False}


def _coerce(name: str, raw: str):
    kinds = {f.name: f.type for f in fields(RunConfig)}
    kind = kinds[name]
    try:
        if "bool" in kind:
            return _BOOL[raw.strip().lower()]
        if "int" in kind:
            return int(raw.strip().replace("_", ""))
    except (KeyError, ValueError):
        raise ConfigError(f"bad value for {name}: {raw!r}") from None
    return raw.strip()


def read_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        value = value.strip()
        if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
            value = value[1:-1]
        out[key.strip().replace("-", "_")] = value
    return out


def build_config(file_values: dict[str, str], overrides: dict[str, str]) -> RunConfig:
    names = {f.name for f in fields(RunConfig)}
    merged = {**file_values, **{k: v for k, v in overrides.items() if v is not None}}
    unknown = sorted(set(merged) - names)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return RunConfig(**{k: _coerce(k, str(v)) for k, v in merged.items()})


def parse_int_list(text: str) -> list[int]:
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part:
                lo, hi = part.split("-")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise ConfigError(f"bad integer list {text!r}") from None
    return out


def parse_grid(text: str) -> np.ndarray:
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise ConfigError(f"grid must be start:stop:step, got {text!r}") from None
    if step <= 0 or stop < start or start <= 0:
        raise ConfigError(f"empty or invalid grid {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(count), 10)


def dec(x: float) -> str:
    """Shortest positional decimal for a finite float."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x}")
    return np.format_float_positional(x, trim="-")


def exact(d: DyadicRational) -> str:
    return str(d)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output in ("-", ""):
        sys.stdout.write(text)
    else:
        with open(cfg.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _check_prefix(params: ProcessParams, length: int) -> None:
    if length < 1:
        raise ConfigError("prefix_length must be positive")
    if length > params.a[-1]:
        raise ConfigError(f"prefix_length {length} exceeds a_{params.depth} = {params.a[-1]}")


def cmd_verify(cfg: RunConfig) -> int:
    params = cfg.params("verify")
    names = cfg.suites.split(",") if cfg.suites else None
    results = run_suites(params, fault=cfg.fault, cap=cfg.cap, names=names)
    report = json.dumps([r.as_dict() for r in results], indent=2) + "\n"
    failed = [r for r in results if not r.passed]
    if cfg.format == "json":
        _emit(report, cfg)
    else:
        lines = [f"{r.status.upper()} {r.suite}: {r.case}" for r in results]
        for r in failed:
            lines.append(f"  failed invariant {r.suite}/{r.case}: expected {r.expected}, got {r.actual}")
        lines.append(f"{len(results) - len(failed)} passed, {len(failed)} failed ({params})")
        sys.stdout.write("\n".join(lines) + "\n")
        if cfg.output not in ("-", ""):
            _emit(report, cfg)
    return EXIT_INVARIANT if failed else EXIT_OK


def measure_record(word: str, params: ProcessParams) -> dict:
    cm = cylinder_measure(word, params)
    rec: dict = {"word": word, "params": str(params)}

    def put(key: str, val: DyadicRational) -> None:
        rec[key] = exact(val)
        rec[key + "_decimal"] = dec(float(val))

    put("theta", cm.theta)
    rec["g"] = cm.g
    rec["g0"] = cm.g0
    put("mu", cm.mu)
    rec["reason"] = cm.reason
    rec["bounds"] = None
    if cm.in_language and word and word[0] != "0":
        try:
            br = bound_report(word, params)
        except DepthError as exc:
            rec["bounds_unavailable"] = str(exc)
        else:
            bounds = {"k": br.k}
            for key in ("term1", "term2", "term3", "combined", "ode_slack", "horizon"):
                val = getattr(br, key)
                bounds[key] = exact(val)
                bounds[key + "_decimal"] = dec(float(val))
            rec["bounds"] = bounds
    return rec


def cmd_measure(cfg: RunConfig) -> int:
    params = cfg.params("measure")
    words = [cfg.word] if cfg.word else []
    if cfg.words:
        words += [w.strip() for w in cfg.words.split(",") if w.strip()]
    if not words:
        raise ConfigError("measure needs --word (or --words)")
    recs = []
    for w in words:
        if not w or set(w) - set("012"):
            raise ConfigError(f"word {w!r} is not a non-empty word over 0,1,2")
        recs.append(measure_record(w, params))
    if cfg.format == "json":
        _emit(json.dumps(recs if len(recs) > 1 else recs[0], indent=2) + "\n", cfg)
        return EXIT_OK
    out = []
    for rec in recs:
        out.append(f"word: {rec['word']}  [{rec['params']}]")
        out.append(f"  theta: {rec['theta']} = {rec['theta_decimal']}")
        out.append(f"  g: {rec['g']}  g0: {rec['g0']}")
        out.append(f"  mu: {rec['mu']} = {rec['mu_decimal']}")
        if rec["reason"]:
            out.append(f"  reason: {rec['reason']}")
        if rec["bounds"]:
            bd = rec["bounds"]
            out.append(f"  level k: {bd['k']}")
            for key in ("term1", "term2", "term3", "combined", "ode_slack", "horizon"):
                out.append(f"  {key}: {bd[key]} = {bd[key + '_decimal']}")
        elif "bounds_unavailable" in rec:
            out.append(f"  bounds: unavailable ({rec['bounds_unavailable']})")
    _emit("\n".join(out) + "\n", cfg)
    return EXIT_OK


RETURN_HEADER = [
    "n", "word", "g", "k", "mu", "mu_exact", "t", "F", "F_tilde", "exp1", "ks_F", "ks_Ftilde",
    "bound_combined", "bound_combined_exact", "horizon_ok", "n_gaps",
]


def cmd_return_stats(cfg: RunConfig) -> int:
    params = cfg.params("return-stats")
    length = cfg.prefix_length or 10**6
    _check_prefix(params, length)
    grid = parse_grid(cfg.grid)
    ns = None if cfg.ns == "auto" else parse_int_list(cfg.ns)
    words = [w.strip() for w in cfg.words.split(",")] if cfg.words else ([cfg.word] if cfg.word else None)
    n_max = max(cfg.n_max, max(ns) if ns else 0)
    exp = run_return_experiment(
        params, seed=cfg.seed, prefix_length=length, n_texts=cfg.n_texts, ns=ns,
        min_gaps=cfg.min_gaps, n_max=n_max, words=words, t_cap=float(grid[-1]),
    )
    rows = []
    for r in sorted(exp.rows, key=lambda r: (r.n, r.word)):
        if r.bounds is None:
            raise ConfigError(f"no bound report for {r.word!r} (leading zero or depth too small)")
        tab = grid_table(r, grid)
        ks_f, ks_ft = dec(r.ks_F), dec(r.ks_F_tilde)
        comb = r.bounds.combined
        horizon = float(r.bounds.horizon)
        for t, f, ft, e in zip(tab["t"], tab["F"], tab["F_tilde"], tab["exp1"]):
            rows.append([
                r.n, r.word, r.g, r.k, dec(float(r.mu)), exact(r.mu), dec(t), dec(f), dec(ft), dec(e),
                ks_f, ks_ft, dec(float(comb)), exact(comb), int(t <= horizon), r.n_gaps,
            ])
    _emit(_csv(RETURN_HEADER, rows), cfg)
    return EXIT_OK


def cmd_complexity(cfg: RunConfig) -> int:
    params = cfg.params("complexity")
    rows = []
    for n in parse_int_list(cfg.lengths):
        if n < 1:
            raise ConfigError("lengths must be positive")
        c = complexity(n, params, cap=cfg.cap)
        k = complexity_level(n, params)
        rows.append([n, k, c, dec(math.log2(c) / n), complexity_bound(k, params)])
    _emit(_csv(["n", "k", "complexity", "log2_complexity_per_symbol", "bound_at_a_k"], rows), cfg)
    return EXIT_OK


def cmd_mixing(cfg: RunConfig) -> int:
    params = cfg.params("mixing")
    length = cfg.prefix_length or 10**6
    _check_prefix(params, length)
    lags = parse_int_list(cfg.lags)
    pairs = []
    for item in cfg.pairs.split(","):
        if item.count(":") != 1:
            raise ConfigError(f"pair {item!r} must be u:v")
        u, v = (x.strip() for x in item.split(":"))
        if not u or not v or set(u + v) - set("012"):
            raise ConfigError(f"pair {item!r} is not over 0,1,2")
        pairs.append((u, v))
    text = sample_point(params, length, cfg.seed).array()
    rows = []
    for u, v in pairs:
        prof = correlation_profile(u, v, lags, text)
        rows.extend([u, v, n, dec(prof[n])] for n in sorted(prof))
    _emit(_csv(["u", "v", "n", "alpha"], rows), cfg)
    return EXIT_OK


def cmd_sample(cfg: RunConfig) -> int:
    params = cfg.params("sample")
    length = cfg.prefix_length or min(64, params.a[-1])
    _check_prefix(params, length)
    pt = sample_point(params, length, cfg.seed)
    if cfg.format == "json":
        _emit(json.dumps({"params": str(params), "seed": cfg.seed, "level": pt.level, "prefix": pt.prefix}) + "\n", cfg)
    else:
        _emit(pt.prefix + "\n", cfg)
    return EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "measure": cmd_measure,
    "return-stats": cmd_return_stats,
    "complexity": cmd_complexity,
    "mixing": cmd_mixing,
    "sample": cmd_sample,
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zeroexp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="key=value file")
        for f in fields(RunConfig):
            flag = "--" + f.name.replace("_", "-")
            if f.name == "fault":
                sp.add_argument(flag, dest=f.name, nargs="?", const="true", default=None,
                                help="inject a faulty negation (verify)")
            else:
                sp.add_argument(flag, dest=f.name, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    overrides = {f.name: getattr(args, f.name) for f in fields(RunConfig)}
    try:
        file_values = read_config_file(args.config) if args.config else {}
        cfg = build_config(file_values, overrides)
        if cfg.format not in ("text", "json", "csv"):
            raise ConfigError(f"unknown format {cfg.format!r}")
        return COMMANDS[args.command](cfg)
    except (ConfigError, ParameterError, DepthError) as exc:
        print(f"zeroexp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
