"""Command-line front end.

Subcommands: check-condition, classify, gram, eval-kernel, von-mangoldt.
Reports are JSON (source of truth) with a CSV projection where tabular;
every report embeds its resolved config, so a report file can be passed
back via --config to reproduce the run.  Exit codes: 0 nonnegative/PSD,
1 config or usage error, 2 certified violation/indefinite, 3 inconclusive.

Progress and diagnostics go to stderr; stdout carries machine-readable
content only (when --stdout is set or for the query-style subcommands).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone

from . import condition, kernel, weights
from .arith import first_primes

SCHEMA_VERSION = "1.0"

_COMMON_KEYS = {
    "family", "delta", "k", "n_max", "methods", "tol", "mode",
    "kernel", "grid", "alpha", "n", "s", "u", "out", "timestamp",
}

_EXIT_BY_VERDICT = {
    condition.NONNEG_EXACT: 0,
    condition.NONNEG_TOL: 0,
    condition.NEGATIVE: 2,
    condition.INCONCLUSIVE: 3,
    kernel.PSD_TOL: 0,
    kernel.INDEFINITE: 2,
    kernel.INCONCLUSIVE: 3,
}


class ConfigError(ValueError):
    pass


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    if "schema_version" in data and "config" in data:
        data = data["config"]  # a previous report: rerun from its embedded config
    unknown = set(data) - _COMMON_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def _merge(cfg: dict, args, keys) -> dict:
    out = dict(cfg)
    for key in keys:
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            out[key] = val
    return out


def _family(cfg: dict) -> weights.WeightFamily:
    fam_cfg = cfg.get("family")
    if fam_cfg is None:
        raise ConfigError("a weight family is required ('family' in the config)")
    try:
        return weights.family_from_config(fam_cfg)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _apply_mode(fam: weights.WeightFamily, cfg: dict, delta) -> None:
    mode = cfg.get("mode", "auto")
    if mode not in ("auto", "exact", "float"):
        raise ConfigError(f"mode must be auto/exact/float, got {mode!r}")
    if mode == "float":
        fam.exact = False
    elif mode == "exact":
        d = fam.delta if delta is None else float(delta)
        if not (fam.exact and d == 0.0):
            raise ConfigError(
                "exact mode needs rational weights and delta = 0 "
                f"(family {fam.name}, delta {d})"
            )


def _report_envelope(command: str, cfg: dict, result: dict) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": cfg,
        "result": result,
    }
    if cfg.get("timestamp", True):
        out["timestamp"] = datetime.now(timezone.utc).isoformat()
    return out


def _emit(report: dict, cfg: dict, default_prefix: str | None, csv_rows=None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    out_prefix = cfg.get("out")
    to_stdout = cfg.get("stdout_flag", False)
    if out_prefix is None and not to_stdout:
        if default_prefix is None:
            to_stdout = True
        else:
            out_prefix = default_prefix
    if out_prefix:
        json_path = f"{out_prefix}.json"
        with open(json_path, "w") as fh:
            fh.write(text)
        print(f"wrote {json_path}", file=sys.stderr)
        if csv_rows is not None:
            csv_path = f"{out_prefix}.csv"
            with open(csv_path, "w", newline="") as fh:
                writer = csv.writer(fh)
                for row in csv_rows:
                    writer.writerow(row)
            print(f"wrote {csv_path}", file=sys.stderr)
    if to_stdout:
        sys.stdout.write(text)


def _clean_config(cfg: dict) -> dict:
    """The resolved config embedded in reports (drops runtime-only bits)."""
    return {k: v for k, v in cfg.items() if k != "stdout_flag"}


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_check_condition(args) -> int:
    cfg = _merge(_load_config(args.config), args,
                 ["delta", "k", "n_max", "tol", "mode", "out"])
    if args.methods is not None:
        cfg["methods"] = [m.strip() for m in args.methods.split(",") if m.strip()]
    if args.no_timestamp:
        cfg["timestamp"] = False
    cfg.setdefault("n_max", 1000)
    cfg["stdout_flag"] = args.stdout

    fam = _family(cfg)
    delta = cfg.get("delta")
    _apply_mode(fam, cfg, delta)
    methods = tuple(cfg.get("methods", ["divisor_sum"]))
    tol = float(cfg.get("tol", condition.DEFAULT_TOL))

    print(f"checking condition for {fam.name} up to n = {cfg['n_max']}", file=sys.stderr)
    report = condition.check_range(
        fam, delta, cfg.get("k"), int(cfg["n_max"]), methods=methods, tol=tol
    )
    result = report.to_json_dict()
    envelope = _report_envelope("check-condition", _clean_config(cfg), result)
    csv_rows = [["n", "value", "method", "verdict", "margin"]]
    csv_rows += [
        [r.n, condition._scalar_json(r.value), r.method, r.verdict, r.margin]
        for r in report.records
    ]
    _emit(envelope, cfg, "condition_report", csv_rows)
    print(f"verdict: {report.verdict}", file=sys.stderr)
    return _EXIT_BY_VERDICT[report.verdict]


def cmd_classify(args) -> int:
    cfg = _merge(_load_config(args.config), args, ["delta", "n_max", "tol", "out"])
    if args.no_timestamp:
        cfg["timestamp"] = False
    cfg.setdefault("n_max", 2000)
    cfg["stdout_flag"] = args.stdout

    fam = _family(cfg)
    delta = cfg.get("delta")
    n_max = int(cfg["n_max"])
    tol = float(cfg.get("tol", condition.DEFAULT_TOL))

    result: dict = {
        "family": fam.name,
        "kind": fam.kind,
        "start_index": fam.start_index,
        "sigma": fam.sigma,
        "delta": fam.delta,
        "growth_bound": list(fam.growth_bound),
        "exact_values": fam.exact,
    }
    routes = []

    if fam.kind == "multiplicative":
        law_ok = weights.audit_structure(fam, pairs=100, limit=min(n_max, 10000))
        growth = weights.check_multiplicative_growth(fam)
        result["multiplicative_law_sampled"] = law_ok
        result["growth_check"] = growth.to_json_dict()
        if law_ok and growth.passed:
            routes.append("multiplicative product route")
    elif fam.kind == "additive":
        law_ok = weights.audit_structure(fam, pairs=100, limit=min(n_max, 10000))
        growth = weights.check_additive_growth(fam)
        result["additive_law_sampled"] = law_ok
        result["growth_check"] = growth.to_json_dict()
        if law_ok and growth.passed and growth.delta_nonpositive:
            routes.append("additive per-term route")

    base = fam.params.get("base")
    if isinstance(base, weights.WeightFamily) and base.kind == "multiplicative":
        increasing = all(
            float(base.value(p**j)) <= float(base.value(p ** (j + 1)))
            for p in first_primes(10)
            for j in range(0, 5)
        )
        result["one_plus_base"] = {
            "name": base.name,
            "prime_power_values_increasing_sampled": increasing,
        }
        if increasing:
            routes.append("one-plus composition route")

    report = condition.check_range(fam, delta, None, n_max, tol=tol)
    result["condition_sample"] = {
        "n_max": n_max,
        "verdict": report.verdict,
        "counts": report.counts(),
    }
    if report.verdict in (condition.NONNEG_EXACT, condition.NONNEG_TOL):
        routes.append("direct condition route")

    try:
        result["smooth_sum_diagnostic"] = weights.smooth_growth_diagnostic(
            fam, max(fam.delta, 0.0) + 0.5, 3
        )
    except ValueError:
        pass
    result["applicable_routes"] = routes

    envelope = _report_envelope("classify", _clean_config(cfg), result)
    _emit(envelope, cfg, None)
    return 0


def _parse_points(grid_cfg) -> list[complex] | None:
    if grid_cfg is None:
        return None
    pts = grid_cfg.get("points")
    if pts is None:
        return None
    return [complex(p[0], p[1]) for p in pts]


def cmd_gram(args) -> int:
    cfg = _merge(_load_config(args.config), args, ["delta", "tol", "kernel", "out"])
    if args.no_timestamp:
        cfg["timestamp"] = False
    if args.points:
        pts = []
        for chunk in args.points.split(";"):
            pts.append(complex(chunk.strip()))
        cfg["grid"] = {"points": [[p.real, p.imag] for p in pts]}
    if args.n_points is not None:
        cfg.setdefault("grid", {})["n_points"] = args.n_points
    cfg["stdout_flag"] = args.stdout

    fam = _family(cfg)
    grid_cfg = cfg.get("grid") or {}
    unknown = set(grid_cfg) - {"points", "n_points"}
    if unknown:
        raise ConfigError(f"unknown grid keys: {sorted(unknown)}")
    points = _parse_points(grid_cfg)
    route = cfg.get("kernel", "series")
    tol = float(cfg.get("tol", 1e-10))

    print(f"gram check for {fam.name} via {route} kernel", file=sys.stderr)
    check = kernel.gram_psd(
        fam,
        delta=cfg.get("delta"),
        points=points,
        kernel=route,
        tol=tol,
        n_points=int(grid_cfg.get("n_points", 8)),
    )
    envelope = _report_envelope("gram", _clean_config(cfg), check.to_json_dict())
    _emit(envelope, cfg, "gram_report")
    print(
        f"min eigenvalue {check.min_eigenvalue:.3e}, "
        f"budget {check.budget:.3e}, verdict {check.verdict}",
        file=sys.stderr,
    )
    return _EXIT_BY_VERDICT[check.verdict]


def cmd_eval_kernel(args) -> int:
    cfg = _merge(_load_config(args.config), args, ["delta", "tol", "kernel", "out"])
    if args.no_timestamp:
        cfg["timestamp"] = False
    if args.s is not None:
        cfg["s"] = [complex(args.s).real, complex(args.s).imag]
    if args.u is not None:
        cfg["u"] = [complex(args.u).real, complex(args.u).imag]
    cfg["stdout_flag"] = args.stdout

    fam = _family(cfg)
    if "s" not in cfg:
        raise ConfigError("eval-kernel needs a point --s")
    s = complex(*cfg["s"])
    u = complex(*cfg["u"]) if "u" in cfg else s
    route = cfg.get("kernel", "weight")
    tol = float(cfg.get("tol", 1e-8))
    delta = cfg.get("delta")

    try:
        if route == "weight":
            ev = kernel.weight_kernel(fam, s, u, tol=tol)
        elif route == "ratio":
            ev = kernel.condition_kernel_ratio(fam, s, u, delta=delta, tol=tol)
        elif route == "series":
            ev = kernel.condition_kernel_series(fam, delta, s, u, tol=tol)
        else:
            raise ConfigError(f"unknown kernel route {route!r}")
    except ValueError as e:
        raise ConfigError(str(e)) from e

    result = {
        "kernel": route,
        "s": [s.real, s.imag],
        "u": [u.real, u.imag],
        "value": [ev.value.real, ev.value.imag],
        "tail_bound": ev.tail_bound if ev.certified else "inf",
        "certified": ev.certified,
        "n_terms": ev.n_terms,
    }
    envelope = _report_envelope("eval-kernel", _clean_config(cfg), result)
    _emit(envelope, cfg, None)
    return 0 if ev.certified else 3


def cmd_von_mangoldt(args) -> int:
    cfg = _merge(_load_config(args.config), args, ["alpha", "n", "n_max", "out"])
    if args.no_timestamp:
        cfg["timestamp"] = False
    cfg["stdout_flag"] = args.stdout
    alpha = int(cfg.get("alpha", 1))

    if "n" in cfg and cfg["n"] is not None:
        ns = [int(cfg["n"])]
    else:
        ns = list(range(2, int(cfg.get("n_max", 100)) + 1))
    values = [(n, condition.von_mangoldt_alpha(n, alpha)) for n in ns]
    result = {
        "alpha": alpha,
        "values": [{"n": n, "value": v} for n, v in values],
        # diagnostic only: classical vanishing past alpha distinct primes
        "zero_count": sum(1 for _, v in values if v == 0.0),
        "min_value": min((v for _, v in values), default=0.0),
    }
    envelope = _report_envelope("von-mangoldt", _clean_config(cfg), result)
    csv_rows = [["n", "value"]] + [[n, v] for n, v in values]
    _emit(envelope, cfg, None, csv_rows if cfg.get("out") else None)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file (or a previous report)")
    p.add_argument("--delta", type=float, default=None,
                   help="override the family's declared delta")
    p.add_argument("--tol", type=float, default=None, help="numeric tolerance")
    p.add_argument("--out", default=None, help="output path prefix (.json/.csv)")
    p.add_argument("--no-timestamp", action="store_true",
                   help="omit the timestamp for byte-identical reruns")
    p.add_argument("--stdout", action="store_true",
                   help="print the JSON report to stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirweight",
        description="Weighted Dirichlet series toolkit: condition checks, "
                    "growth audits, kernel evaluation, Gram diagnostics.",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("check-condition",
                       help="evaluate the Mobius-convolution condition on a range")
    _add_common(p)
    p.add_argument("--k", type=int, default=None, help="start index of the sum")
    p.add_argument("--n-max", type=int, default=None, dest="n_max")
    p.add_argument("--methods", default=None,
                   help="comma list from divisor_sum,mult_product,additive_Tt")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--float", dest="mode", action="store_const", const="float")
    p.set_defaults(mode=None, func=cmd_check_condition)

    p = sub.add_parser("classify",
                       help="audit structure/growth and report applicable routes")
    _add_common(p)
    p.add_argument("--n-max", type=int, default=None, dest="n_max")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gram", help="Gram positivity witness on a point grid")
    _add_common(p)
    p.add_argument("--kernel", choices=kernel.ROUTES, default=None)
    p.add_argument("--points", default=None,
                   help="semicolon list of complex points, e.g. '1.2;1.5+0.3j'")
    p.add_argument("--n-points", type=int, default=None, dest="n_points")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("eval-kernel", help="evaluate one kernel entry")
    _add_common(p)
    p.add_argument("--kernel", choices=kernel.ROUTES, default=None)
    p.add_argument("--s", default=None, help="complex point, e.g. '1.2+0.3j'")
    p.add_argument("--u", default=None, help="second point (defaults to s)")
    p.set_defaults(func=cmd_eval_kernel)

    p = sub.add_parser("von-mangoldt",
                       help="generalized von Mangoldt values (Mobius * log^alpha)")
    _add_common(p)
    p.add_argument("--alpha", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="single index")
    p.add_argument("--n-max", type=int, default=None, dest="n_max")
    p.set_defaults(func=cmd_von_mangoldt)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_help(sys.stderr)
        return 1
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
