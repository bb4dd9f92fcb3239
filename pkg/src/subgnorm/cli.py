"""Command-line front end.

Subcommands: estimate (norm estimators on a data file), ci (confidence
half-lengths), sgplot (max-of-prefixes diagnostic data plus a tail verdict),
compare-norms (proxy half-length table on centered Bernoulli families), and
bandit (regret experiments from a JSON config).

Exit codes: 0 success, 2 usage, 3 bad data or config, 4 infeasible request.
Every file written through --out gets a sibling <out>.manifest.json recording
the command, its parameters, the seed, and the tool version.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .concentration import (
    be_clt_ci,
    be_clt_min_n,
    hoeffding_ci,
    intrinsic_ci,
    wrong_hoeffding_gaussian_ci,
)
from .diagnostics import subgauss_plot_data, tendency_fit
from .distributions import Sample
from .estimators import (
    SaturationError,
    bootstrap_median_estimate,
    de_estimate,
    kappa_policy,
    loo_hl_estimate,
    mom_estimate,
    mom_locv_estimate,
    sigma_opt_plugin,
)
from .norms import ci_half_length_table
from .distributions import BernoulliCentered
from . import bandit as bd

__all__ = ["main"]


class _DataError(Exception):
    """Anything wrong with user-supplied data or config files."""


def _fmt(value) -> str:
    """CSV cell formatting; floats use repr so they round-trip exactly."""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _jsonable(value):
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, Path):
        return str(value)
    return value


def _read_column(path_str: str) -> np.ndarray:
    """One-column numeric text file; a single non-numeric first row is a header."""
    path = Path(path_str)
    try:
        text = path.read_text()
    except OSError as exc:
        raise _DataError(f"cannot read {path_str}: {exc}") from exc
    rows = [
        (i + 1, line.strip())
        for i, line in enumerate(text.splitlines())
        if line.strip()
    ]
    if not rows:
        raise _DataError(f"{path_str} contains no data")
    start = 0
    try:
        float(rows[0][1])
    except ValueError:
        start = 1  # header row
    if start == len(rows):
        raise _DataError(f"{path_str} contains a header but no data")
    values = np.empty(len(rows) - start)
    for out_i, (lineno, token) in enumerate(rows[start:]):
        try:
            values[out_i] = float(token)
        except ValueError:
            raise _DataError(
                f"{path_str} line {lineno}: could not parse {token!r}"
            ) from None
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        lineno = rows[start + bad][0]
        raise _DataError(f"{path_str} line {lineno}: non-finite value")
    return values


def _write_manifest(out_path: Path, command: str, params: dict, seed) -> None:
    manifest = {
        "command": command,
        "parameters": {k: _jsonable(v) for k, v in params.items()},
        "master_seed": seed,
        "tool_version": __version__,
    }
    manifest_path = out_path.with_name(out_path.name + ".manifest.json")
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n")


def _cli_params(args: argparse.Namespace) -> dict:
    skip = {"func"}
    return {k: _jsonable(v) for k, v in vars(args).items() if k not in skip}


def _deliver(args, text: str, seed) -> None:
    """Send rendered output to --out (with manifest) or stdout."""
    if getattr(args, "out", None):
        out_path = Path(args.out)
        out_path.write_text(text if text.endswith("\n") else text + "\n")
        _write_manifest(out_path, args.command, _cli_params(args), seed)
    else:
        print(text)


def _rows_to_csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- estimate


def _load_sample(args) -> Sample:
    values = _read_column(args.input)
    try:
        return Sample(values, known_mean=args.mean)
    except ValueError as exc:
        raise _DataError(str(exc)) from exc


def _cmd_estimate(args) -> int:
    sample = _load_sample(args)
    n = len(sample)
    kappa = args.kappa if args.kappa is not None else kappa_policy(n)
    if args.b is not None and args.method != "mom":
        raise _DataError("--b only applies to --method mom")
    try:
        if args.method == "op":
            value = sigma_opt_plugin(sample)
            payload = {
                "method": "op_proxy",
                "n": n,
                "value": value,
                "k_star": None,
                "kappa_n": None,
                "seed": args.seed,
            }
        else:
            if args.method == "de":
                est = de_estimate(sample, kappa)
            elif args.method == "mom":
                b = args.b
                if b is None:
                    b = max(1, min(n, 2 * math.ceil(math.log(n)))) if n > 1 else 1
                est = mom_estimate(sample, b, kappa, seed=args.seed)
            elif args.method == "mom-locv":
                est = mom_locv_estimate(sample, kappa, seed=args.seed)
            elif args.method == "boot":
                est = bootstrap_median_estimate(sample, kappa, seed=args.seed)
            else:  # loo-hl
                est = loo_hl_estimate(sample, kappa)
            payload = {
                "method": est.method,
                "n": n,
                "value": est.value,
                "k_star": est.k_star,
                "kappa_n": est.kappa_n,
                "seed": args.seed,
            }
            if est.block is not None:
                payload["b"] = est.block.b
    except (ValueError, SaturationError, OverflowError) as exc:
        raise _DataError(str(exc)) from exc
    if args.format == "csv":
        header = list(payload)
        text = _rows_to_csv(header, [[payload[k] if payload[k] is not None else "" for k in header]])
    else:
        text = json.dumps({k: _jsonable(v) for k, v in payload.items()}, indent=2)
    _deliver(args, text, args.seed)
    return 0


# ---------------------------------------------------------------------- ci


def _ci_center_n(args) -> tuple[float, int]:
    if args.input is not None:
        values = _read_column(args.input)
        center = float(values.mean()) if args.mean is None else args.mean
        n = len(values) if args.n is None else args.n
        return center, n
    if args.n is None:
        raise _DataError("need --n (or --input) to size the interval")
    return (0.0 if args.mean is None else args.mean), args.n


def _cmd_ci(args) -> int:
    center, n = _ci_center_n(args)
    try:
        if args.method == "intrinsic":
            if args.norm is None:
                raise _DataError("--norm is required for the intrinsic method")
            ci = intrinsic_ci(center, args.norm, n, args.delta, symmetric=args.symmetric)
        elif args.method == "hoeffding":
            if args.a is None or args.b is None:
                raise _DataError("--a and --b are required for the hoeffding method")
            ci = hoeffding_ci(center, args.a, args.b, n, args.delta)
        elif args.method == "be-clt":
            ci = be_clt_ci(n, args.delta)
        else:  # wrong-hoeffding
            if args.sigma is None:
                raise _DataError("--sigma is required for the wrong-hoeffding method")
            ci = wrong_hoeffding_gaussian_ci(n, args.sigma, args.alpha)
    except ValueError as exc:
        raise _DataError(str(exc)) from exc
    if not ci.feasible:
        payload = {
            "method": ci.method,
            "n": n,
            "delta": args.delta,
            "feasible": False,
            "min_feasible_n": be_clt_min_n(args.delta),
        }
        print(json.dumps(payload, indent=2))
        return 4
    # be-clt and wrong-hoeffding come back centered at zero; shift to the
    # requested center, since the half-width never depends on it
    payload = {
        "method": ci.method,
        "center": center,
        "half_width": ci.half_width,
        "lower": center - ci.half_width,
        "upper": center + ci.half_width,
        "level": ci.level,
        "n": n,
        "feasible": True,
    }
    if args.format == "csv":
        header = list(payload)
        text = _rows_to_csv(header, [[payload[k] for k in header]])
    else:
        text = json.dumps({k: _jsonable(v) for k, v in payload.items()}, indent=2)
    _deliver(args, text, None)
    return 0


# ------------------------------------------------------------------ sgplot


def _cmd_sgplot(args) -> int:
    values = _read_column(args.input)
    try:
        sample = Sample(values)
        data = subgauss_plot_data(sample, seed=args.seed)
    except ValueError as exc:
        raise _DataError(str(exc)) from exc
    rows = [[j, x, y] for j, x, y in data.rows()]
    out_path = Path(args.out)
    out_path.write_text(_rows_to_csv(["j", "x", "y"], rows))
    _write_manifest(out_path, args.command, _cli_params(args), args.seed)
    if data.n >= 10:
        report = tendency_fit(data)
        payload = {
            "n": data.n,
            "r2_sqrtlog": report.r2_sqrtlog,
            "r2_log": report.r2_log,
            "verdict": report.verdict,
        }
    else:
        payload = {
            "n": data.n,
            "r2_sqrtlog": None,
            "r2_log": None,
            "verdict": "inconclusive",
        }
    print(json.dumps({k: _jsonable(v) for k, v in payload.items()}, indent=2))
    return 0


# ----------------------------------------------------------- compare-norms


def _parse_grid(spec_str: str) -> list[float]:
    parts = spec_str.split(":")
    if len(parts) != 3:
        raise _DataError("--mu-grid expects lo:hi:step")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise _DataError("--mu-grid expects numeric lo:hi:step") from None
    if step <= 0 or hi < lo:
        raise _DataError("--mu-grid needs step > 0 and hi >= lo")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(count)]


def _cmd_compare_norms(args) -> int:
    if (args.mu is None) == (args.mu_grid is None):
        raise _DataError("give exactly one of --mu or --mu-grid")
    mus = [args.mu] if args.mu is not None else _parse_grid(args.mu_grid)
    rows = []
    for mu in mus:
        if not (0.0 < mu < 1.0):
            raise _DataError(f"success probability must lie in (0, 1), got {mu}")
        table = ci_half_length_table(BernoulliCentered(mu), args.delta)
        rows.append(
            [mu, table.opt_proxy, table.intrinsic, table.psi2, table.w2, table.std_dev]
        )
    header = ["mu", "sigma_opt", "intrinsic", "psi2", "w2", "std"]
    if args.format == "json":
        text = json.dumps(
            [dict(zip(header, (float(c) for c in row))) for row in rows], indent=2
        )
    else:
        text = _rows_to_csv(header, rows)
    _deliver(args, text, None)
    return 0


# ------------------------------------------------------------------ bandit


_POLICY_KEYS = {
    "kind", "alpha_rule", "alpha", "bootstrap_reps", "min_pulls", "prior_var", "label",
}


def _parse_policy(entry) -> bd.PolicySpec:
    if isinstance(entry, str):
        entry = {"kind": entry}
    if not isinstance(entry, dict):
        raise _DataError(f"policy entries must be names or objects, got {entry!r}")
    unknown = set(entry) - _POLICY_KEYS
    if unknown:
        raise _DataError(f"unknown policy keys {sorted(unknown)}")
    if "kind" not in entry:
        raise _DataError("policy objects need a 'kind'")
    try:
        return bd.PolicySpec(**entry)
    except (TypeError, ValueError) as exc:
        raise _DataError(str(exc)) from exc


def _cmd_bandit(args) -> int:
    path = Path(args.config)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise _DataError(f"cannot read {args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _DataError(f"{args.config}: invalid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise _DataError("bandit config must be a JSON object")
    known = {
        "env", "K", "T", "policies", "replications", "master_seed",
        "contamination", "cauchy_scale", "means", "mix_p",
    }
    unknown = set(raw) - known
    if unknown:
        raise _DataError(f"unknown config keys {sorted(unknown)}")
    policies = raw.get("policies")
    if not policies:
        raise _DataError("config needs a non-empty 'policies' list")
    specs = tuple(_parse_policy(p) for p in policies)
    try:
        config = bd.ExperimentConfig(
            env_kind=raw.get("env", "eg1"),
            n_arms=int(raw.get("K", 10)),
            horizon=int(raw.get("T", 1000)),
            policies=specs,
            replications=int(raw.get("replications", 1)),
            master_seed=int(raw.get("master_seed", 0)),
            contamination_prob=float(raw.get("contamination", 0.15)),
            cauchy_scale=float(raw.get("cauchy_scale", 0.01)),
            means=tuple(raw["means"]) if raw.get("means") is not None else None,
            mix_p=tuple(raw["mix_p"]) if raw.get("mix_p") is not None else None,
        )
        result = bd.run_experiment(config)
    except ValueError as exc:
        raise _DataError(str(exc)) from exc
    rows = []
    for label in (p.label for p in config.policies):
        curve = result.curves[label]
        for i, t in enumerate(result.rounds):
            rows.append([label, int(t), curve.mean_regret[i], curve.se_regret[i]])
    text = _rows_to_csv(["policy", "round", "mean_regret", "se_regret"], rows)
    if args.out:
        out_path = Path(args.out)
        out_path.write_text(text)
        _write_manifest(out_path, args.command, _cli_params(args), config.master_seed)
    else:
        print(text, end="")
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subgnorm",
        description="Sub-Gaussian norm estimation, confidence intervals, and bandits.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="estimate a sub-Gaussian scale from data")
    p_est.add_argument("--input", required=True, help="one-column numeric file")
    p_est.add_argument(
        "--method",
        choices=["de", "mom", "mom-locv", "boot", "loo-hl", "op"],
        default="de",
    )
    p_est.add_argument("--b", type=int, default=None, help="block count for mom")
    p_est.add_argument("--kappa", type=int, default=None, help="moment order cap")
    p_est.add_argument("--seed", type=int, default=0)
    p_est.add_argument("--mean", type=float, default=None, help="known population mean")
    p_est.add_argument("--out", default=None)
    p_est.add_argument("--format", choices=["json", "csv"], default="json")
    p_est.set_defaults(func=_cmd_estimate)

    p_ci = sub.add_parser("ci", help="confidence interval half-lengths")
    p_ci.add_argument(
        "--method",
        choices=["intrinsic", "hoeffding", "be-clt", "wrong-hoeffding"],
        required=True,
    )
    p_ci.add_argument("--input", default=None, help="data file giving center and n")
    p_ci.add_argument("--mean", type=float, default=None, help="interval center")
    p_ci.add_argument("--n", type=int, default=None)
    p_ci.add_argument("--delta", type=float, default=0.05)
    p_ci.add_argument("--alpha", type=float, default=0.05)
    p_ci.add_argument("--norm", type=float, default=None, help="sub-Gaussian norm")
    p_ci.add_argument(
        "--symmetric", action="store_true", help="treat the population as symmetric"
    )
    p_ci.add_argument("--sigma", type=float, default=None)
    p_ci.add_argument("--a", type=float, default=None, help="lower support bound")
    p_ci.add_argument("--b", type=float, default=None, help="upper support bound")
    p_ci.add_argument("--out", default=None)
    p_ci.add_argument("--format", choices=["json", "csv"], default="json")
    p_ci.set_defaults(func=_cmd_ci)

    p_sg = sub.add_parser("sgplot", help="max-of-prefixes tail diagnostic")
    p_sg.add_argument("--input", required=True)
    p_sg.add_argument("--seed", type=int, default=0)
    p_sg.add_argument("--out", required=True, help="CSV destination for j,x,y rows")
    p_sg.set_defaults(func=_cmd_sgplot)

    p_cn = sub.add_parser(
        "compare-norms", help="proxy half-length table for centered Bernoulli"
    )
    p_cn.add_argument("--mu", type=float, default=None)
    p_cn.add_argument("--mu-grid", default=None, help="lo:hi:step")
    p_cn.add_argument("--delta", type=float, default=0.05)
    p_cn.add_argument("--out", default=None)
    p_cn.add_argument("--format", choices=["json", "csv"], default="csv")
    p_cn.set_defaults(func=_cmd_compare_norms)

    p_bd = sub.add_parser("bandit", help="regret experiment from a JSON config")
    p_bd.add_argument("--config", required=True)
    p_bd.add_argument("--out", default=None, help="CSV destination for regret curves")
    p_bd.set_defaults(func=_cmd_bandit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return args.func(args)
    except _DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
