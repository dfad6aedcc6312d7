"""Command-line front end: ``eval``, ``verify`` and ``scan-beta``.

Reports go to stdout as JSON lines (default) or CSV.  Exit codes: 0 all
checks pass, 1 some check failed, 2 invalid input, 3 no failures but at
least one hypothesis violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .errors import MLPartialError
from .series import (
    RatioCase,
    RatioKind,
    eval_ml,
    eval_normalized,
    eval_normalized_derivative,
    eval_partial_sum,
    eval_partial_sum_derivative,
    eval_ratio,
)
from .special import MLParams, build_table
from .verify import (
    COROLLARIES,
    BoundReport,
    Status,
    VerifyConfig,
    scan_beta,
    univalence_spot_check,
    verify_corollary,
    verify_lemma,
    verify_theorem,
)

log = logging.getLogger("mlpartial")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3

REPORT_FIELDS = [
    "case", "alpha", "beta", "m", "paper_bound", "empirical_inf", "empirical_sup",
    "argmin_theta", "margin", "samples_used", "status",
]

# Keys accepted in --config files, with the type used to parse them.
CONFIG_KEYS = {
    "alpha": float, "beta": float, "m": int, "case": str, "samples": int,
    "refine": int, "tol": float, "radius": float, "seed": int, "format": str,
    "id": str, "what": str,
}
DEFAULTS = {
    "samples": 4096, "refine": 60, "tol": 1e-9, "radius": 1.0, "seed": 0,
    "format": "jsonl", "m": 0,
}


class UsageError(Exception):
    pass


def _fmt(x: Any) -> str:
    """Serialize with floats at 17 significant digits; non-finite floats become null."""
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            return "null"
        text = format(float(x), ".17g")
        return text if any(ch in text for ch in ".en") else text + ".0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return json.dumps(str(x.value) if hasattr(x, "value") else x)


def load_config(path: str | Path) -> dict[str, Any]:
    """Read ``key = value`` lines; ``#`` starts a comment, quotes are stripped."""
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("["):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = CONFIG_KEYS[key](value.strip("\"'"))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return out


def _resolve(args: argparse.Namespace) -> dict[str, Any]:
    """Merge defaults < config file < explicit flags."""
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(load_config(args.config))
    for key in CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _verify_config(opts: dict[str, Any]) -> VerifyConfig:
    return VerifyConfig(
        radius=opts["radius"], boundary_samples=opts["samples"], refine_iters=opts["refine"],
        tol=opts["tol"], seed=opts["seed"],
    )


def _need(opts: dict[str, Any], *keys: str) -> None:
    missing = [k for k in keys if opts.get(k) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + k for k in missing))


def _manifest(command: str, opts: dict[str, Any], cfg: VerifyConfig | None) -> dict[str, Any]:
    params = None
    if opts.get("alpha") is not None and opts.get("beta") is not None:
        params = {"alpha": float(opts["alpha"]), "beta": float(opts["beta"])}
    return {
        "command": command,
        "params": params,
        "m": opts.get("m"),
        "config": asdict(cfg) if cfg is not None else None,
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _report_record(report: BoundReport, manifest: dict[str, Any]) -> dict[str, Any]:
    record = report.to_dict()
    record["manifest"] = manifest
    return record


def _emit(reports: Sequence[BoundReport], manifest: dict[str, Any], fmt: str, out) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(REPORT_FIELDS)
        for r in reports:
            row = r.to_dict()
            writer.writerow(["" if row[k] is None else (_fmt(row[k]).strip('"') if not isinstance(row[k], str) else row[k]) for k in REPORT_FIELDS])
        out.write(buf.getvalue())
    else:
        for r in reports:
            out.write(_fmt(_report_record(r, manifest)) + "\n")
    out.flush()


def _exit_code(reports: Sequence[BoundReport]) -> int:
    statuses = {r.status for r in reports}
    if Status.FAIL in statuses:
        return EXIT_FAIL
    if Status.HYPOTHESIS_VIOLATED in statuses:
        return EXIT_HYPOTHESIS
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, out) -> int:
    opts = _resolve(args)
    _need(opts, "alpha", "beta")
    what = opts.get("what") or "normalized"
    re_, im = args.z if args.z is not None else (0.0, 0.0)
    z = complex(re_, im)
    table = build_table(MLParams(opts["alpha"], opts["beta"]))
    m = opts["m"]
    tail = table.tail_bound
    if what == "ml":
        value = eval_ml(table, z)
    elif what == "normalized":
        value = eval_normalized(table, z)
    elif what == "derivative":
        value = eval_normalized_derivative(table, z)
        tail = table.weighted_tail_bound
    elif what == "partial":
        value = eval_partial_sum(table, m, z)
        tail = 0.0
    elif what == "partial-derivative":
        value = eval_partial_sum_derivative(table, m, z)
        tail = 0.0
    elif what == "ratio":
        _need(opts, "case")
        case = RatioCase(RatioKind(opts["case"]), m)
        value = eval_ratio(table, case, z)
        tail = table.weighted_tail_bound if case.kind.is_derivative else table.tail_bound
    else:
        raise UsageError(f"unknown --what {what!r}")
    record = {
        "re": value.real, "im": value.imag, "abs": abs(value),
        "truncation_index": table.truncation_index, "tail_bound": tail,
    }
    out.write(_fmt(record) + "\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out) -> int:
    opts = _resolve(args)
    cfg = _verify_config(opts)
    target = args.target
    if target == "corollary":
        ident = opts.get("id") or "all"
        ids = sorted(COROLLARIES) if ident == "all" else [ident]
        reports = [verify_corollary(i, cfg) for i in ids]
    elif target == "theorem":
        _need(opts, "alpha", "beta", "case")
        kinds = list(RatioKind) if opts["case"] == "all" else [RatioKind(opts["case"])]
        params = MLParams(opts["alpha"], opts["beta"])
        reports = [verify_theorem(RatioCase(k, opts["m"]), params, cfg=cfg) for k in kinds]
    elif target == "lemma":
        _need(opts, "alpha", "beta")
        reports = verify_lemma(MLParams(opts["alpha"], opts["beta"]), cfg)
    elif target == "univalence":
        _need(opts, "alpha", "beta")
        reports = [univalence_spot_check(MLParams(opts["alpha"], opts["beta"]), cfg)]
    else:  # argparse restricts choices
        raise UsageError(f"unknown target {target!r}")
    _emit(reports, _manifest(f"verify {target}", opts, cfg), opts["format"], out)
    return _exit_code(reports)


def cmd_scan_beta(args: argparse.Namespace, out) -> int:
    opts = _resolve(args)
    _need(opts, "alpha", "case")
    lo, hi, steps = args.beta_min, args.beta_max, args.steps
    if not (0 < lo < hi) or steps < 2:
        raise UsageError("need 0 < --beta-min < --beta-max and --steps >= 2")
    cfg = _verify_config(opts)
    grid = np.linspace(lo, hi, steps)
    reports = scan_beta(RatioKind(opts["case"]), opts["alpha"], opts["m"], grid, cfg)
    _emit(reports, _manifest("scan-beta", opts, cfg), opts["format"], out)
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--m", type=int, help="partial-sum order (default 0)")
    p.add_argument("--case", choices=[k.value for k in RatioKind] + ["all"])
    p.add_argument("--samples", type=int, help="boundary samples (default 4096)")
    p.add_argument("--refine", type=int, help="golden-section steps (default 60)")
    p.add_argument("--tol", type=float, help="comparison slack (default 1e-9)")
    p.add_argument("--radius", type=float, help="disk radius in (0, 1] (default 1)")
    p.add_argument("--seed", type=int, help="seed for interior spot checks (default 0)")
    p.add_argument("--format", choices=["jsonl", "json", "csv"])
    p.add_argument("--config", help="file of key = value defaults, overridden by flags")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mlpartial", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a series at one point")
    _add_common(p_eval)
    p_eval.add_argument("--z", nargs=2, type=float, metavar=("RE", "IM"))
    p_eval.add_argument(
        "--what", choices=["ml", "normalized", "derivative", "partial", "partial-derivative", "ratio"]
    )
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify", help="check a bound and print reports")
    p_verify.add_argument("target", choices=["lemma", "theorem", "corollary", "univalence"])
    _add_common(p_verify)
    p_verify.add_argument("--id", choices=sorted(COROLLARIES) + ["all"])
    p_verify.set_defaults(func=cmd_verify)

    p_scan = sub.add_parser("scan-beta", help="permissive theorem checks over a beta grid")
    _add_common(p_scan)
    p_scan.add_argument("--beta-min", type=float, required=True)
    p_scan.add_argument("--beta-max", type=float, required=True)
    p_scan.add_argument("--steps", type=int, default=11)
    p_scan.set_defaults(func=cmd_scan_beta)
    return parser


def _setup_logging() -> None:
    level = os.environ.get("ML_PARTIAL_LOG", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Sequence[str] | None = None, out=None) -> int:
    _setup_logging()
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, MLPartialError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
