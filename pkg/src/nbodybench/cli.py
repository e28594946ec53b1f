"""Command-line surface: run, bench, validate, and report subcommands with
reproducible configuration, a fixed CSV schema, and markdown report tables.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import kernels
from .core import (Layout, Precision, Seed, SimParams, format_checksum,
                   init_system)
from .harness import BenchResult, SweepPlan, gflops, run_sweep
from .kernels import KernelVariant, MathForm
from .validation import cross_validate, diagnostics

__all__ = [
    "UsageError",
    "ReportError",
    "CliConfig",
    "parse_args",
    "emit_csv",
    "render_report",
    "read_rows",
    "main",
    "entry",
    "CSV_HEADER",
]

log = logging.getLogger(__name__)

CSV_HEADER = [
    "variant", "layout", "math_form", "block_size", "threads", "precision",
    "n_bodies", "steps", "seed", "repetitions", "best_time_s", "mean_time_s",
    "gflops_best", "gflops_mean", "checksum", "status", "host_label",
    "timestamp_utc",
]

DEFAULTS = {
    "n": "256,512,1024,2048,4096,8192,16384,32768",
    "threads": "1",
    "variant": "all",
    "precision": "double",
    "block": "none",
    "math": "pow",
    "steps": 100,
    "dt": 0.01,
    "softening_sq": 1e-9,
    "g": 1.0,
    "seed": 42,
    "reps": 5,
    "warmup": 1,
    "out": "results.csv",
    "backend": "default",
}

_CONFIG_KEYS = {
    "n", "threads", "variant", "precision", "block", "math", "steps", "dt",
    "softening_sq", "g", "seed", "reps", "warmup", "out", "backend", "resume",
}


class UsageError(Exception):
    """Bad flags, malformed lists, or invalid flag combinations."""


class ReportError(Exception):
    """Malformed benchmark CSV content."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we own exit codes
        raise UsageError(message)


# ---------------------------------------------------------------------------
# flag/list parsing

def _parse_int_list(text: str, flag: str) -> Tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in str(text).split(",") if tok != "")
    except ValueError:
        raise UsageError(f"{flag}: expected a comma-separated integer list, got {text!r}")
    if not values:
        raise UsageError(f"{flag}: empty list")
    return values


def _parse_block_list(text: str) -> Tuple[Optional[int], ...]:
    blocks: List[Optional[int]] = []
    for tok in str(text).split(","):
        tok = tok.strip()
        if tok in ("none", "0", ""):
            blocks.append(None)
        else:
            try:
                blocks.append(int(tok))
            except ValueError:
                raise UsageError(f"--block: expected integers or 'none', got {tok!r}")
    return tuple(blocks) or (None,)


def _parse_precisions(text: str) -> Tuple[Precision, ...]:
    if text == "both":
        return (Precision.DOUBLE, Precision.SINGLE)
    try:
        return (Precision.parse(text),)
    except ValueError as exc:
        raise UsageError(f"--precision: {exc}")


def _parse_maths(text: str) -> Tuple[MathForm, ...]:
    if text == "both":
        return (MathForm.POW_THEN_DIVIDE, MathForm.RECIPROCAL_MULTIPLY)
    try:
        return (MathForm.parse(text),)
    except ValueError as exc:
        raise UsageError(f"--math: {exc}")


def _parse_layout_tokens(text: str) -> Tuple[str, ...]:
    tokens = tuple(tok.strip() for tok in str(text).split(",") if tok.strip())
    if "all" in tokens:
        return ("aos", "soa")
    for tok in tokens:
        if tok not in ("aos", "soa"):
            raise UsageError(f"--variant: unknown variant {tok!r} (expected aos, soa, or all)")
    if not tokens:
        raise UsageError("--variant: empty list")
    return tokens


def _build_templates(tokens, maths, blocks, thread_counts) -> Tuple[KernelVariant, ...]:
    """Variant templates = layout tokens crossed with math and block axes.

    The aos rung is fixed at (pow, unblocked, sequential); a requested token
    that yields no valid combination at all is a usage error, while mixed
    plans simply skip the invalid cross terms at sweep time.
    """
    templates: List[KernelVariant] = []
    for tok in tokens:
        if tok == "aos":
            if MathForm.POW_THEN_DIVIDE not in maths:
                raise UsageError("--variant aos requires the pow math form")
            if None not in blocks:
                raise UsageError("--variant aos does not support blocking")
            if 1 not in thread_counts:
                raise UsageError("--variant aos is sequential-only (include threads=1)")
            templates.append(KernelVariant(Layout.AOS))
        else:
            for m in maths:
                for b in blocks:
                    templates.append(KernelVariant(Layout.SOA, m, b, 1))
    return tuple(templates)


# ---------------------------------------------------------------------------
# config file

def _read_config_file(path: str) -> Dict[str, str]:
    """Flat `key = value` lines; '#' starts a comment; lists are comma-separated."""
    if not os.path.exists(path):
        raise UsageError(f"--config: file not found: {path}")
    values: Dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"--config: {path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CONFIG_KEYS:
                raise UsageError(f"--config: {path}:{lineno}: unknown key {key!r}")
            values[key] = value
    return values


# ---------------------------------------------------------------------------
# parse_args

@dataclass
class CliConfig:
    """Fully resolved invocation: every field has an explicit or default value."""

    subcommand: str
    values: Dict[str, object] = field(default_factory=dict)
    csv_path: Optional[str] = None  # report subcommand input

    def sim_params(self) -> SimParams:
        v = self.values
        return SimParams(v["g"], v["dt"], v["softening_sq"], v["steps"])

    def sweep_plan(self) -> SweepPlan:
        v = self.values
        return SweepPlan(
            n_values=v["n"], thread_counts=v["threads"], variants=v["templates"],
            precisions=v["precision"], steps=v["steps"], seed=Seed(v["seed"]),
            repetitions=v["reps"], warmup_runs=v["warmup"],
            gravitational_constant=v["g"], dt=v["dt"], softening_sq=v["softening_sq"],
        )

    def describe(self) -> str:
        skip = {"templates"}
        parts = []
        for key in sorted(self.values):
            if key in skip:
                continue
            value = self.values[key]
            if isinstance(value, tuple):
                value = ",".join(_token(x) for x in value)
            parts.append(f"{key}={value}")
        if "templates" in self.values:
            parts.append("variants=" + ",".join(t.name for t in self.values["templates"]))
        return " ".join(parts)


def _token(value) -> str:
    if isinstance(value, (Precision, Layout, MathForm)):
        return value.value
    if value is None:
        return "none"
    return str(value)


def _add_shared_flags(sub: argparse.ArgumentParser, single: bool) -> None:
    """Flags shared by run/bench/validate; `single` switches list flags to scalars."""
    if single:
        sub.add_argument("--n", default=None)
        sub.add_argument("--threads", default=None)
        sub.add_argument("--variant", default=None)
        sub.add_argument("--precision", default=None, choices=["single", "double"])
        sub.add_argument("--block", default=None)
        sub.add_argument("--math", default=None, choices=["pow", "recip"])
    else:
        sub.add_argument("--n", default=None, help="comma-separated body counts")
        sub.add_argument("--threads", default=None, help="comma-separated thread counts")
        sub.add_argument("--variant", default=None, help="aos, soa, all (comma-separated)")
        sub.add_argument("--precision", default=None, choices=["single", "double", "both"])
        sub.add_argument("--block", default=None, help="comma-separated block sizes; 'none'/'0' = unblocked")
        sub.add_argument("--math", default=None, choices=["pow", "recip", "both"])
    sub.add_argument("--steps", default=None)
    sub.add_argument("--dt", default=None)
    sub.add_argument("--softening-sq", dest="softening_sq", default=None)
    sub.add_argument("--g", default=None)
    sub.add_argument("--seed", default=None)
    sub.add_argument("--config", default=None, help="key = value file; flags override it")
    sub.add_argument("--backend", default=None, choices=["cext", "numpy", "both", "default"])


def _resolve(args: argparse.Namespace, file_values: Dict[str, str], key: str,
             convert, default):
    """Explicit flag > config-file value > documented default."""
    explicit = getattr(args, key, None)
    if explicit is not None:
        return convert(explicit)
    if key in file_values:
        return convert(file_values[key])
    return convert(default) if isinstance(default, str) else default


def parse_args(argv: Sequence[str]) -> CliConfig:
    """Total: every argv either yields a fully resolved CliConfig or raises
    UsageError naming the offending flag."""
    parser = _Parser(prog="nbodybench", description=__doc__)
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p_run = subs.add_parser("run", help="run one simulation and print its checksum")
    _add_shared_flags(p_run, single=True)

    p_bench = subs.add_parser("bench", help="measure a sweep and write CSV")
    _add_shared_flags(p_bench, single=False)
    p_bench.add_argument("--reps", default=None)
    p_bench.add_argument("--warmup", default=None)
    p_bench.add_argument("--out", default=None)
    p_bench.add_argument("--resume", action="store_true", default=False,
                         help="skip combinations already present in --out")

    p_val = subs.add_parser("validate", help="cross-check the variant ladder against the oracle")
    _add_shared_flags(p_val, single=False)

    p_rep = subs.add_parser("report", help="render markdown tables from a results CSV")
    p_rep.add_argument("csv_path")
    p_rep.add_argument("--out", default=None)

    args = parser.parse_args(list(argv))
    sub = args.subcommand

    file_values: Dict[str, str] = {}
    if getattr(args, "config", None):
        file_values = _read_config_file(args.config)

    cfg = CliConfig(subcommand=sub)
    if sub == "report":
        cfg.csv_path = args.csv_path
        cfg.values["out"] = args.out
        return cfg

    v = cfg.values
    v["steps"] = _resolve(args, file_values, "steps", int, DEFAULTS["steps"])
    v["dt"] = _resolve(args, file_values, "dt", float, DEFAULTS["dt"])
    v["softening_sq"] = _resolve(args, file_values, "softening_sq", float, DEFAULTS["softening_sq"])
    v["g"] = _resolve(args, file_values, "g", float, DEFAULTS["g"])
    v["seed"] = _resolve(args, file_values, "seed", int, DEFAULTS["seed"])
    v["backend"] = _resolve(args, file_values, "backend", str, DEFAULTS["backend"])
    if v["steps"] < 1:
        raise UsageError("--steps must be >= 1")
    if v["dt"] <= 0:
        raise UsageError("--dt must be positive")
    if v["softening_sq"] < 0:
        raise UsageError("--softening-sq must be non-negative")
    if not 0 <= v["seed"] < 2**64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    _check_backend(v["backend"])

    if sub == "run":
        v["n"] = _resolve(args, file_values, "n", int, 1024)
        if v["n"] < 1:
            raise UsageError("--n must be >= 1")
        v["threads"] = _resolve(args, file_values, "threads", int, 1)
        v["precision"] = Precision.parse(
            _resolve(args, file_values, "precision", str, DEFAULTS["precision"]))
        layout_tok = _resolve(args, file_values, "variant", str, "soa")
        if layout_tok not in ("aos", "soa"):
            raise UsageError(f"--variant: run expects 'aos' or 'soa', got {layout_tok!r}")
        math_form = _parse_maths(_resolve(args, file_values, "math", str, DEFAULTS["math"]))[0]
        block = _parse_block_list(_resolve(args, file_values, "block", str, DEFAULTS["block"]))[0]
        try:
            v["variant"] = KernelVariant(Layout.parse(layout_tok), math_form, block, v["threads"])
            v["variant"].validate_for(v["n"])
        except ValueError as exc:
            raise UsageError(str(exc))
        return cfg

    # bench and validate share the sweep axes
    v["n"] = _parse_int_list(_resolve(args, file_values, "n", str,
                                      DEFAULTS["n"] if sub == "bench" else "1024"), "--n")
    if any(n < 1 for n in v["n"]):
        raise UsageError("--n values must be >= 1")
    v["threads"] = _parse_int_list(
        _resolve(args, file_values, "threads", str,
                 DEFAULTS["threads"] if sub == "bench" else "1,2,4"), "--threads")
    if any(t < 1 for t in v["threads"]):
        raise UsageError("--threads values must be >= 1")
    v["precision"] = _parse_precisions(
        _resolve(args, file_values, "precision", str,
                 DEFAULTS["precision"] if sub == "bench" else "both"))
    maths = _parse_maths(_resolve(args, file_values, "math", str,
                                  DEFAULTS["math"] if sub == "bench" else "both"))
    blocks = _parse_block_list(_resolve(args, file_values, "block", str,
                                        DEFAULTS["block"] if sub == "bench" else "none,8,64,256"))
    tokens = _parse_layout_tokens(_resolve(args, file_values, "variant", str, DEFAULTS["variant"]))
    v["templates"] = _build_templates(tokens, maths, blocks, v["threads"])

    if sub == "bench":
        v["reps"] = _resolve(args, file_values, "reps", int, DEFAULTS["reps"])
        v["warmup"] = _resolve(args, file_values, "warmup", int, DEFAULTS["warmup"])
        if v["reps"] < 1:
            raise UsageError("--reps must be >= 1")
        if v["warmup"] < 0:
            raise UsageError("--warmup must be >= 0")
        v["out"] = _resolve(args, file_values, "out", str, DEFAULTS["out"])
        v["resume"] = bool(args.resume or file_values.get("resume") in ("1", "true", "yes"))
    else:
        v["steps"] = _resolve(args, file_values, "steps", int, 10)
    return cfg


def _check_backend(name: str) -> None:
    if name == "default":
        return
    wanted = ["cext", "numpy"] if name == "both" else [name]
    for b in wanted:
        if b not in kernels.available_backends():
            raise UsageError(f"--backend: {b!r} is not available in this build")


# ---------------------------------------------------------------------------
# CSV emission and parsing

def _fmt_float(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def _result_row(result: BenchResult) -> List[str]:
    cfg = result.config
    variant = cfg.variant
    return [
        result.variant_label,
        variant.layout.value,
        variant.math_form.value,
        "" if variant.block is None else str(variant.block),
        str(result.threads),
        cfg.precision.value,
        str(cfg.n_bodies),
        str(cfg.steps),
        str(cfg.seed.value),
        str(cfg.repetitions),
        _fmt_float(result.best_time_s),
        _fmt_float(result.mean_time_s),
        _fmt_float(result.gflops_best),
        _fmt_float(result.gflops_mean),
        "" if result.checksum is None else format_checksum(result.checksum),
        result.status,
        result.host_label.replace(",", ";"),
        result.timestamp_utc,
    ]


def emit_csv(results: Sequence[BenchResult], path: str, append: bool = False) -> None:
    """Write results in the fixed schema; header first, one row per result.
    With append=True an existing header is kept and rows are added."""
    try:
        need_header = not (append and os.path.exists(path) and os.path.getsize(path) > 0)
        mode = "a" if append else "w"
        with open(path, mode, encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            if need_header:
                writer.writerow(CSV_HEADER)
            for result in results:
                writer.writerow(_result_row(result))
    except OSError as exc:
        raise RuntimeError(f"cannot write CSV {path}: {exc}") from exc


def read_rows(path: str) -> List[Dict[str, str]]:
    """Parse a results CSV; raises ReportError naming the offending line."""
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise ReportError(f"{path}: empty file")
            if header != CSV_HEADER:
                raise ReportError(f"{path}: line 1: unexpected header {header!r}")
            rows = []
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                if len(row) != len(CSV_HEADER):
                    raise ReportError(
                        f"{path}: line {lineno}: expected {len(CSV_HEADER)} columns, got {len(row)}")
                record = dict(zip(CSV_HEADER, row))
                record["_line"] = str(lineno)
                if record["status"] == "ok":
                    try:
                        for key in ("best_time_s", "mean_time_s", "gflops_best",
                                    "gflops_mean", "checksum"):
                            float(record[key])
                        for key in ("threads", "n_bodies", "steps", "seed", "repetitions"):
                            int(record[key])
                    except ValueError as exc:
                        raise ReportError(f"{path}: line {lineno}: {exc}")
                rows.append(record)
            return rows
    except OSError as exc:
        raise ReportError(f"cannot read CSV {path}: {exc}") from exc


def completed_keys(path: str) -> Set[tuple]:
    """Resume keys of rows that do not need re-running (ok or skipped)."""
    keys: Set[tuple] = set()
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return keys
    for row in read_rows(path):
        if row["status"] in ("ok", "skipped"):
            keys.add((row["variant"], int(row["n_bodies"]), int(row["threads"]),
                      row["precision"]))
    return keys


# ---------------------------------------------------------------------------
# report rendering

def _md_table(headers: List[str], rows: List[List[str]]) -> str:
    lines = ["| " + " | ".join(headers) + " |",
             "| " + " | ".join("---" for _ in headers) + " |"]
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines)


def render_report(csv_path: str) -> str:
    """Markdown report: GFLOPS by variant and N, plus SoA/AoS, single/double,
    and thread-speedup ratio tables derived from the ok rows."""
    rows = read_rows(csv_path)
    ok = [r for r in rows if r["status"] == "ok"]
    other = [r for r in rows if r["status"] != "ok"]
    out = [f"# Benchmark report", "", f"source: `{csv_path}`",
           f"rows: {len(ok)} ok, {len(other)} skipped/error", ""]

    if ok:
        n_values = sorted({int(r["n_bodies"]) for r in ok})
        groups: Dict[tuple, Dict[int, Dict[str, str]]] = {}
        for r in ok:
            key = (r["variant"], r["precision"], int(r["threads"]))
            groups.setdefault(key, {})[int(r["n_bodies"])] = r

        out += ["## GFLOPS (best of repetitions)", ""]
        headers = ["variant", "precision", "T"] + [f"N={n}" for n in n_values]
        table = []
        for key in sorted(groups):
            variant, precision, threads = key
            cells = [variant, precision, str(threads)]
            for n in n_values:
                r = groups[key].get(n)
                cells.append(f"{float(r['gflops_best']):.3f}" if r else "-")
            table.append(cells)
        out += [_md_table(headers, table), ""]

        speedups = _speedup_rows(groups, n_values)
        if speedups:
            out += ["## Thread speedup (time T=1 / time T)", "",
                    _md_table(["variant", "precision", "N", "T", "speedup", "efficiency"],
                              speedups), ""]

        soa_aos = _ratio_rows(groups, n_values, axis="layout")
        if soa_aos:
            out += ["## SoA / AoS throughput", "",
                    _md_table(["precision", "T", "N", "gflops soa", "gflops aos", "ratio"],
                              soa_aos), ""]

        prec = _ratio_rows(groups, n_values, axis="precision")
        if prec:
            out += ["## single / double throughput", "",
                    _md_table(["variant", "T", "N", "gflops single", "gflops double", "ratio"],
                              prec), ""]

    if other:
        out += ["## Skipped / failed rows", ""]
        for r in other:
            out.append(f"- line {r['_line']}: {r['variant']} N={r['n_bodies']} "
                       f"T={r['threads']} {r['precision']}: {r['status']}")
        out.append("")
    return "\n".join(out)


def _speedup_rows(groups, n_values) -> List[List[str]]:
    rows = []
    base = {(v, p): data for (v, p, t), data in groups.items() if t == 1}
    for (variant, precision, threads), data in sorted(groups.items()):
        if threads == 1 or (variant, precision) not in base:
            continue
        for n in n_values:
            r1 = base[(variant, precision)].get(n)
            rt = data.get(n)
            if r1 is None or rt is None:
                continue
            speedup = float(r1["best_time_s"]) / float(rt["best_time_s"])
            rows.append([variant, precision, str(n), str(threads),
                         f"{speedup:.2f}", f"{speedup / threads:.2f}"])
    return rows


def _ratio_rows(groups, n_values, axis: str) -> List[List[str]]:
    rows = []
    if axis == "layout":
        for (variant, precision, threads), data in sorted(groups.items()):
            if variant != "soa":
                continue
            aos = groups.get(("aos", precision, threads))
            if not aos:
                continue
            for n in n_values:
                rs, ra = data.get(n), aos.get(n)
                if rs is None or ra is None:
                    continue
                gs, ga = float(rs["gflops_best"]), float(ra["gflops_best"])
                rows.append([precision, str(threads), str(n),
                             f"{gs:.3f}", f"{ga:.3f}", f"{gs / ga:.2f}"])
    else:
        for (variant, precision, threads), data in sorted(groups.items()):
            if precision != "single":
                continue
            dbl = groups.get((variant, "double", threads))
            if not dbl:
                continue
            for n in n_values:
                rs, rd = data.get(n), dbl.get(n)
                if rs is None or rd is None:
                    continue
                gs, gd = float(rs["gflops_best"]), float(rd["gflops_best"])
                rows.append([variant, str(threads), str(n),
                             f"{gs:.3f}", f"{gd:.3f}", f"{gs / gd:.2f}"])
    return rows


# ---------------------------------------------------------------------------
# subcommands

def _cmd_run(cfg: CliConfig) -> int:
    v = cfg.values
    log.info("resolved config: %s", cfg.describe())
    variant: KernelVariant = v["variant"]
    _apply_backend(v["backend"])
    sys0 = init_system(v["n"], Seed(v["seed"]), v["precision"], variant.layout)
    params = cfg.sim_params()
    t0 = time.perf_counter()
    final = kernels.simulate(sys0, params, variant)
    elapsed = time.perf_counter() - t0
    diag = diagnostics(final, params)
    print(f"variant:   {variant.name} T={variant.threads} {v['precision'].value} "
          f"backend={kernels.get_backend()}")
    print(f"n={v['n']} steps={v['steps']} seed={v['seed']}")
    print(f"time:      {elapsed:.6f} s ({gflops(v['n'], v['steps'], elapsed):.3f} GFLOPS)")
    print(f"checksum:  {format_checksum(diag.checksum)}")
    print(f"energy:    kinetic={diag.kinetic_energy:.9g} potential={diag.potential_energy:.9g}")
    print(f"momentum:  |p|={diag.momentum_magnitude:.3e}")
    return 0


def _apply_backend(name: str) -> None:
    if name not in ("default", "both"):
        kernels.set_backend(name)


def _cmd_bench(cfg: CliConfig) -> int:
    v = cfg.values
    log.info("resolved config: %s", cfg.describe())
    plan = cfg.sweep_plan()
    out_path = v["out"]
    skip: Set[tuple] = set()
    if v["resume"]:
        skip = completed_keys(out_path)
        log.info("resume: %d completed rows in %s", len(skip), out_path)
    elif os.path.exists(out_path) and os.path.getsize(out_path) > 0:
        log.info("overwriting existing %s (use --resume to keep finished rows)", out_path)
        os.remove(out_path)

    if not (os.path.exists(out_path) and os.path.getsize(out_path) > 0):
        emit_csv([], out_path, append=False)

    def sink(result: BenchResult) -> None:
        emit_csv([result], out_path, append=True)

    backends = (["cext", "numpy"] if v["backend"] == "both"
                else [kernels.get_backend() if v["backend"] == "default" else v["backend"]])
    total = 0
    for backend in backends:
        previous = kernels.set_backend(backend)
        try:
            total += len(run_sweep(plan, sink=sink, skip_keys=skip))
        finally:
            kernels.set_backend(previous)
    log.info("wrote %d new rows to %s", total, out_path)
    return 0


def _cmd_validate(cfg: CliConfig) -> int:
    v = cfg.values
    log.info("resolved config: %s", cfg.describe())
    _apply_backend(v["backend"])
    variants = []
    for template in v["templates"]:
        for threads in v["threads"]:
            try:
                variant = template.with_threads(threads)
                variant.validate_for(max(v["n"]))
            except ValueError:
                continue
            variants.append(variant)
    report = cross_validate(max(v["n"]), v["steps"], Seed(v["seed"]),
                            cfg.sim_params(), variants, v["precision"])
    print(report.render())
    return 0 if report.all_passed else 2


def _cmd_report(cfg: CliConfig) -> int:
    text = render_report(cfg.csv_path)
    out = cfg.values.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        log.info("wrote report to %s", out)
    else:
        print(text)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = parse_args(argv if argv is not None else sys.argv[1:])
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        if cfg.subcommand == "run":
            return _cmd_run(cfg)
        if cfg.subcommand == "bench":
            return _cmd_bench(cfg)
        if cfg.subcommand == "validate":
            return _cmd_validate(cfg)
        return _cmd_report(cfg)
    except (ReportError, RuntimeError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return 3


def entry() -> None:
    sys.exit(main())
