"""Command-line front end: scenarios, figure presets, CSV tables, comparison reports.

Exit codes: 0 success, 1 usage/config error, 2 comparison failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np
import yaml

from . import af, df
from .channel import SystemParams, db_to_linear
from .montecarlo import MIN_TAIL_EVENTS, Strategy, draw_stats, empirical_soc, run_trials
from .optimize import optimize_snr_r

log = logging.getLogger(__name__)

DEFAULT_TRIALS = 200_000
DEFAULT_SEED = 0
# Rows at epsilon below this stay closed-form only unless trials >= DEEP_TAIL_TRIALS.
DEEP_TAIL_EPSILON = 1e-3
DEEP_TAIL_TRIALS = 1_000_000

SWEEP_VARIABLES = ("alpha_re", "snr_r_db", "rho", "epsilon")
PARAM_KEYS = tuple(f.name for f in fields(SystemParams))
CONFIG_KEYS = PARAM_KEYS + (
    "snr_s_db",
    "snr_r_db",
    "trials",
    "seed",
    "strategy",
    "sweep_variable",
    "sweep_lo",
    "sweep_hi",
    "sweep_points",
)

COLUMNS = (
    "preset",
    "strategy",
    "sweep_variable",
    "sweep_value",
    "alpha_re",
    "rho",
    "epsilon",
    "snr_s_db",
    "snr_r_db",
    "closed_form_soc_bps",
    "empirical_soc_bps",
    "empirical_ci_halfwidth",
    "interception_prob_closed",
    "interception_prob_empirical",
    "trials",
    "seed",
)
FLOAT_COLUMNS = COLUMNS[3:14]
INT_COLUMNS = ("trials", "seed")


class ScenarioError(ValueError):
    """Bad configuration; the message starts with the offending key."""


@dataclass(frozen=True)
class SweepAxis:
    variable: str
    lo: float
    hi: float
    points: int

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)


@dataclass(frozen=True)
class Scenario:
    params: SystemParams = SystemParams()
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    strategy: str = "BOTH"
    sweep: SweepAxis | None = None

    @property
    def strategies(self):
        if self.strategy == "BOTH":
            return [Strategy.AF, Strategy.DF]
        return [Strategy(self.strategy)]


def _number(key, value, kind=float):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{key}: expected a number, got {value!r}")
    if kind is int:
        if int(value) != value:
            raise ScenarioError(f"{key}: expected an integer, got {value!r}")
        return int(value)
    if not math.isfinite(value):
        raise ScenarioError(f"{key}: must be finite, got {value!r}")
    return float(value)


def _check_sweep(axis: SweepAxis):
    key = "sweep_variable"
    if axis.variable not in SWEEP_VARIABLES:
        raise ScenarioError(f"{key}: must be one of {', '.join(SWEEP_VARIABLES)}, got {axis.variable!r}")
    if axis.points < 1:
        raise ScenarioError(f"sweep_points: must be >= 1, got {axis.points}")
    if axis.hi < axis.lo:
        raise ScenarioError(f"sweep_hi: must be >= sweep_lo ({axis.lo}), got {axis.hi}")
    lo, hi = axis.lo, axis.hi
    if axis.variable == "rho" and not (0.0 <= lo and hi <= 1.0):
        raise ScenarioError(f"sweep_lo/sweep_hi: rho sweep must stay within [0, 1], got [{lo}, {hi}]")
    if axis.variable == "epsilon" and not (0.0 < lo and hi < 1.0):
        raise ScenarioError(f"sweep_lo/sweep_hi: epsilon sweep must stay within (0, 1), got [{lo}, {hi}]")
    if axis.variable == "alpha_re" and lo < 0:
        raise ScenarioError(f"sweep_lo: alpha_re sweep must be >= 0, got {lo}")


def parse_scenario(text: str) -> Scenario:
    """Parse a flat YAML mapping; omitted keys take the default operating point."""
    try:
        doc = yaml.safe_load(text) if text and text.strip() else {}
    except yaml.YAMLError as exc:
        raise ScenarioError(f"<document>: malformed YAML: {exc}") from exc
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ScenarioError(f"<document>: expected a key-value mapping, got {type(doc).__name__}")
    for key in doc:
        if key not in CONFIG_KEYS:
            raise ScenarioError(f"{key}: unknown key (allowed: {', '.join(CONFIG_KEYS)})")
    for lin, db in (("p_s", "snr_s_db"), ("p_r", "snr_r_db")):
        if lin in doc and db in doc:
            raise ScenarioError(f"{db}: conflicts with {lin}; give one of them")

    kwargs = {}
    for key in PARAM_KEYS:
        if key in doc:
            kwargs[key] = _number(key, doc[key], int if key == "n_r" else float)
    for lin, db in (("p_s", "snr_s_db"), ("p_r", "snr_r_db")):
        kwargs.setdefault(lin, db_to_linear(_number(db, doc.get(db, 20.0))))
    try:
        params = SystemParams(**kwargs)
    except ValueError as exc:
        # SystemParams messages start with the field name.
        raise ScenarioError(str(exc).replace(" must", ": must", 1)) from exc

    trials = _number("trials", doc.get("trials", DEFAULT_TRIALS), int)
    if trials < 1:
        raise ScenarioError(f"trials: must be >= 1, got {trials}")
    seed = _number("seed", doc.get("seed", DEFAULT_SEED), int)
    if not 0 <= seed < 2**64:
        raise ScenarioError(f"seed: must be an unsigned 64-bit integer, got {seed}")
    strategy = str(doc.get("strategy", "BOTH")).upper()
    if strategy not in ("AF", "DF", "BOTH"):
        raise ScenarioError(f"strategy: must be AF, DF or BOTH, got {doc['strategy']!r}")

    sweep = None
    sweep_keys = [k for k in ("sweep_variable", "sweep_lo", "sweep_hi", "sweep_points") if k in doc]
    if sweep_keys:
        missing = {"sweep_variable", "sweep_lo", "sweep_hi", "sweep_points"} - set(sweep_keys)
        if missing:
            raise ScenarioError(f"{sorted(missing)[0]}: required when any sweep_* key is given")
        sweep = SweepAxis(
            variable=str(doc["sweep_variable"]),
            lo=_number("sweep_lo", doc["sweep_lo"]),
            hi=_number("sweep_hi", doc["sweep_hi"]),
            points=_number("sweep_points", doc["sweep_points"], int),
        )
        _check_sweep(sweep)
    return Scenario(params=params, trials=trials, seed=seed, strategy=strategy, sweep=sweep)


def load_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"<config>: cannot read {path}: {exc}") from exc
    return parse_scenario(text)


# --- evaluation ---------------------------------------------------------------


def apply_axis(params: SystemParams, variable: str, value: float) -> SystemParams:
    if variable == "snr_r_db":
        return params.with_(p_r=db_to_linear(value))
    return params.with_(**{variable: float(value)})


def closed_form(strategy, params: SystemParams):
    """(secrecy outage capacity, interception probability) from the closed forms."""
    if Strategy.parse(strategy) is Strategy.AF:
        return af.soc_af_closed(params), af.interception_prob_af_closed(params)
    return df.soc_df_closed(params), df.interception_prob_df_closed(params)


def make_row(preset, strategy, variable, value, params, trials, seed, stats=None) -> dict:
    """One table row.  Empirical columns are None when ``stats`` is None."""
    soc, p0 = closed_form(strategy, params)
    row = {
        "preset": preset,
        "strategy": Strategy.parse(strategy).value,
        "sweep_variable": variable,
        "sweep_value": float(value),
        "alpha_re": params.alpha_re,
        "rho": params.rho,
        "epsilon": params.epsilon,
        "snr_s_db": params.snr_s_db,
        "snr_r_db": params.snr_r_db,
        "closed_form_soc_bps": soc,
        "empirical_soc_bps": None,
        "empirical_ci_halfwidth": None,
        "interception_prob_closed": p0,
        "interception_prob_empirical": None,
        "trials": trials,
        "seed": seed,
    }
    if stats is not None:
        summary = empirical_soc(run_trials(strategy, params, trials, seed, stats=stats))
        row["empirical_soc_bps"] = summary.soc_empirical
        row["empirical_ci_halfwidth"] = summary.quantile_ci_halfwidth
        row["interception_prob_empirical"] = summary.interception_prob_empirical
    return row


def _simulate_row(params: SystemParams, trials: int) -> bool:
    return params.epsilon >= DEEP_TAIL_EPSILON or trials >= DEEP_TAIL_TRIALS


def evaluate_scenario(scenario: Scenario, preset: str = "custom", workers: int = 1, simulate: bool = True):
    """Rows for every sweep value and strategy; the draws are shared across all of them."""
    p = scenario.params
    if scenario.sweep is None:
        variable, values = "none", [0.0]
    else:
        variable, values = scenario.sweep.variable, scenario.sweep.values()
    stats = draw_stats(p.n_r, scenario.trials, scenario.seed, workers=workers) if simulate else None
    rows = []
    for strategy in scenario.strategies:
        for v in values:
            q = p if variable == "none" else apply_axis(p, variable, v)
            use = stats if stats is not None and _simulate_row(q, scenario.trials) else None
            rows.append(make_row(preset, strategy, variable, v, q, scenario.trials, scenario.seed, use))
    return rows


# --- figure presets -----------------------------------------------------------

ALPHA_GRID = np.linspace(0.1, 2.0, 20)
# Interception probabilities only leave ~1e-39 territory once alpha_re is O(10).
ALPHA_GRID_INTERCEPTION = np.geomspace(1.0, 100.0, 21)
SNR_R_GRID = np.arange(0, 81) * 0.5
EPSILONS = (1e-4, 1e-2, 5e-2)
RHOS = (0.8, 0.9, 1.0)

# name -> (strategy, swept variable, grid, curve parameter, curve values)
PRESETS = {
    "fig2": (Strategy.AF, "alpha_re", ALPHA_GRID, "epsilon", EPSILONS),
    "fig3": (Strategy.DF, "alpha_re", ALPHA_GRID, "epsilon", EPSILONS),
    "fig4": (Strategy.AF, "alpha_re", ALPHA_GRID, "rho", RHOS),
    "fig5": (Strategy.DF, "alpha_re", ALPHA_GRID_INTERCEPTION, "rho", RHOS),
    "fig6": (Strategy.AF, "snr_r_db", SNR_R_GRID, "epsilon", (1e-2,)),
    "fig7": (Strategy.DF, "snr_r_db", SNR_R_GRID, "epsilon", (1e-2,)),
}


def run_figure_preset(name: str, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, workers: int = 1):
    if name not in PRESETS:
        raise ScenarioError(f"figure: unknown preset {name!r} (known: {', '.join(PRESETS)})")
    strategy, variable, grid, curve_key, curve_values = PRESETS[name]
    base = SystemParams()
    stats = draw_stats(base.n_r, trials, seed, workers=workers)
    rows = []
    for cv in curve_values:
        curve = base.with_(**{curve_key: cv})
        for v in grid:
            q = apply_axis(curve, variable, v)
            use = stats if _simulate_row(q, trials) else None
            rows.append(make_row(name, strategy, variable, v, q, trials, seed, use))
    return rows


# --- CSV ----------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in COLUMNS])
    return buf.getvalue()


def csv_to_rows(text: str):
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(reader.fieldnames) != COLUMNS:
        raise ScenarioError(f"<table>: header must be {','.join(COLUMNS)}")
    rows = []
    for lineno, raw in enumerate(reader, start=2):
        row = dict(raw)
        try:
            for c in FLOAT_COLUMNS:
                row[c] = float(row[c]) if row[c] != "" else None
            for c in INT_COLUMNS:
                row[c] = int(row[c])
        except (TypeError, ValueError) as exc:
            raise ScenarioError(f"<table>: line {lineno}: {exc}") from exc
        rows.append(row)
    return rows


# --- comparison ---------------------------------------------------------------

REL_TOL = 0.03
CI_FACTOR = 3.0


@dataclass(frozen=True)
class RowVerdict:
    index: int
    status: str  # "pass", "fail" or "under-resolved"
    closed: float
    empirical: float | None
    tolerance: float | None


def compare_report(rows):
    """Verdict per row: empirical SOC within max(3 CI half-widths, 3% of closed form)."""
    verdicts = []
    for i, row in enumerate(rows):
        closed, emp, ci = row["closed_form_soc_bps"], row["empirical_soc_bps"], row["empirical_ci_halfwidth"]
        if emp is None or row["epsilon"] * row["trials"] < MIN_TAIL_EVENTS:
            verdicts.append(RowVerdict(i, "under-resolved", closed, emp, None))
            continue
        tol = max(CI_FACTOR * (ci or 0.0), REL_TOL * abs(closed))
        status = "pass" if abs(emp - closed) <= tol else "fail"
        verdicts.append(RowVerdict(i, status, closed, emp, tol))
    return verdicts


def format_report(rows, verdicts) -> str:
    lines = []
    for v in verdicts:
        r = rows[v.index]
        label = f"{r['preset']} {r['strategy']} {r['sweep_variable']}={r['sweep_value']:.6g} eps={r['epsilon']:g} rho={r['rho']:g}"
        if v.status == "under-resolved":
            lines.append(f"UNDER-RESOLVED  {label}")
        else:
            lines.append(
                f"{v.status.upper():<15} {label}  closed={v.closed:.1f}  empirical={v.empirical:.1f}  tol={v.tolerance:.1f}"
            )
    n_fail = sum(v.status == "fail" for v in verdicts)
    n_pass = sum(v.status == "pass" for v in verdicts)
    lines.append(f"{n_pass} pass, {n_fail} fail, {len(verdicts) - n_pass - n_fail} under-resolved")
    return "\n".join(lines) + "\n"


# --- argparse -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat YAML scenario file")
    common.add_argument("--trials", type=int, help="Monte Carlo trials (overrides config)")
    common.add_argument("--seed", type=int, help="base seed (overrides config)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--workers", type=int, default=1, help="worker processes for trial sampling")

    parser = _Parser(prog="lsmimo-secrecy", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("analyze", parents=[common], help="closed-form evaluation at one point")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo at one point")
    sw = sub.add_parser("sweep", parents=[common], help="sweep one variable (from config or flags)")
    sw.add_argument("--variable", choices=SWEEP_VARIABLES)
    sw.add_argument("--lo", type=float, help="sweep lower bound")
    sw.add_argument("--hi", type=float, help="sweep upper bound")
    sw.add_argument("--points", type=int)
    sw.add_argument("--closed-only", action="store_true", help="skip Monte Carlo")
    fig = sub.add_parser("figure", parents=[common], help="figure-reproduction preset")
    fig.add_argument("name", choices=sorted(PRESETS))
    opt = sub.add_parser("optimize", parents=[common], help="search SNR_R maximizing the closed-form SOC")
    opt.add_argument("--lo", type=float, default=0.0, help="lower SNR_R bound in dB")
    opt.add_argument("--hi", type=float, default=40.0, help="upper SNR_R bound in dB")
    opt.add_argument("--tol", type=float, default=0.01, help="absolute tolerance in dB")
    cmp_ = sub.add_parser("compare", help="check a table's empirical vs closed-form columns")
    cmp_.add_argument("table")
    cmp_.add_argument("--out")
    return parser


def _scenario_from_args(args) -> Scenario:
    scenario = load_scenario(args.config) if args.config else Scenario()
    changes = {}
    if args.trials is not None:
        if args.trials < 1:
            raise ScenarioError(f"trials: must be >= 1, got {args.trials}")
        changes["trials"] = args.trials
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise ScenarioError(f"seed: must be an unsigned 64-bit integer, got {args.seed}")
        changes["seed"] = args.seed
    if changes:
        scenario = replace(scenario, **changes)
    return scenario


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _optimize_csv(scenario: Scenario, lo, hi, tol) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("strategy", "snr_r_db", "soc_bps", "kind"))
    for strategy in scenario.strategies:
        res = optimize_snr_r(scenario.params, strategy, lo, hi, tol)
        for s, v in res.profile:
            writer.writerow((strategy.value, repr(s), repr(v), "grid"))
        writer.writerow((strategy.value, repr(res.snr_r_star_db), repr(res.soc_star), "optimum"))
        log.info("%s: SNR_R* = %.3f dB, SOC* = %.1f bit/s", strategy.value, res.snr_r_star_db, res.soc_star)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "compare":
            try:
                text = Path(args.table).read_text(encoding="utf-8")
            except OSError as exc:
                raise ScenarioError(f"<table>: cannot read {args.table}: {exc}") from exc
            rows = csv_to_rows(text)
            verdicts = compare_report(rows)
            _emit(format_report(rows, verdicts), args.out)
            return 2 if any(v.status == "fail" for v in verdicts) else 0

        scenario = _scenario_from_args(args)
        if args.command == "figure":
            rows = run_figure_preset(args.name, scenario.trials, scenario.seed, workers=args.workers)
        elif args.command == "optimize":
            _emit(_optimize_csv(scenario, args.lo, args.hi, args.tol), args.out)
            return 0
        elif args.command == "sweep":
            given = [args.variable, args.lo, args.hi, args.points]
            if any(g is not None for g in given):
                if any(g is None for g in given):
                    raise ScenarioError("sweep: --variable, --lo, --hi and --points go together")
                axis = SweepAxis(args.variable, args.lo, args.hi, args.points)
                _check_sweep(axis)
                scenario = replace(scenario, sweep=axis)
            if scenario.sweep is None:
                raise ScenarioError("sweep: no sweep axis in config or flags")
            rows = evaluate_scenario(scenario, "sweep", workers=args.workers, simulate=not args.closed_only)
        else:
            point = replace(scenario, sweep=None)
            rows = evaluate_scenario(point, args.command, workers=args.workers, simulate=args.command == "simulate")
        for row in rows:
            if row["empirical_soc_bps"] is not None and row["epsilon"] * row["trials"] < MIN_TAIL_EVENTS:
                log.warning("warning: epsilon*M < %d for %s row; tail under-resolved", MIN_TAIL_EVENTS, row["strategy"])
        _emit(rows_to_csv(rows), args.out)
        return 0
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
