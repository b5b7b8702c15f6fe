"""Command line interface: config ingestion, experiment sweeps, CSV emission.

Commands
--------
run              simulate one scenario (or a grid) and emit summary CSV rows
sweep            same as run but requires a config file with list-valued axes
oracle           emit the exact (stationary-analysis) metrics for the grid
compare          paired simulated/exact columns with absolute deviations
reproduce-paper  the full 4-policy x 2-channel grid for both source settings

Config files are flat JSON objects; unknown keys are hard errors.  List
values for policy / p,q / ps / period / threshold expand into a grid, nested
in that order (p and q zip into source pairs).  Command line flags override
file values.  The seed falls back to the SEMCOM_SEED environment variable,
then to 42.

Exit codes: 0 success, 2 config error, 3 runtime error, 4 compare tolerance
failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace

from .engine import SimConfig, replicate, run, run_with_trace
from .model import NoStationaryError
from .oracle import oracle_summary
from .protocol import Idle

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_TOLERANCE = 4

ABS_TOL = 0.005  # recon_error, uninformative_frac (absolute)
REL_TOL = 0.01  # actuation_cost, tx_rate (relative)

DEFAULT_SEED = 42
DEFAULT_SLOTS = 1_000_000

POLICY_ORDER = ("uniform", "age", "change", "e2e")

SUMMARY_HEADER = (
    "policy,p,q,ps,period,threshold,slots,seed,"
    "recon_error,actuation_cost,tx_rate,uninformative_frac"
)
COMPARE_HEADER = (
    "policy,p,q,ps,period,threshold,slots,seed,"
    "sim_recon_error,exact_recon_error,dev_recon_error,"
    "sim_actuation_cost,exact_actuation_cost,dev_actuation_cost,"
    "sim_tx_rate,exact_tx_rate,dev_tx_rate,"
    "sim_uninformative_frac,exact_uninformative_frac,dev_uninformative_frac,status"
)
TRACE_HEADER = "slot,source_state,estimate,aoi,decision,value,gen_slot,delivered,uninformative"


class ConfigError(ValueError):
    """Invalid configuration file, flag value or combination."""


@dataclass(frozen=True)
class Scenario:
    """One fully resolved row of the experiment grid."""

    policy: str = "e2e"
    p: float = 0.95
    q: float = 0.9
    ps: float = 0.4
    period: int = 3
    threshold: int = 3
    slots: int = DEFAULT_SLOTS
    seed: int = DEFAULT_SEED
    runs: int = 1
    trace: bool = False

    def __post_init__(self):
        if not isinstance(self.policy, str):
            raise ConfigError("policy must be a string")
        for name in ("p", "q", "ps"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ConfigError(f"{name} must be a number")
        for name in ("period", "threshold", "slots", "seed", "runs"):
            v = getattr(self, name)
            if isinstance(v, bool):
                raise ConfigError(f"{name} must be an integer")
            if isinstance(v, float):
                if not v.is_integer():
                    raise ConfigError(f"{name} must be an integer")
                v = int(v)
            if not isinstance(v, int):
                raise ConfigError(f"{name} must be an integer")
            object.__setattr__(self, name, v)
        if not isinstance(self.trace, bool):
            raise ConfigError("trace must be a boolean")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")

    def sim_config(self, trace: bool = False) -> SimConfig:
        try:
            return SimConfig.two_state(
                self.p,
                self.q,
                self.ps,
                self.policy,
                slots=self.slots,
                seed=self.seed,
                period=self.period,
                threshold=self.threshold,
                trace=trace,
            )
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc


_SCENARIO_KEYS = {f.name for f in fields(Scenario)}
_LIST_KEYS = {"policy", "p", "q", "ps", "period", "threshold"}


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".6g")


def _as_list(v):
    return list(v) if isinstance(v, list) else [v]


def _expand(raw: dict) -> list[Scenario]:
    """Cartesian expansion nested as policy -> (p, q) pair -> ps -> period
    -> threshold; p and q lists zip into source pairs."""
    unknown = set(raw) - _SCENARIO_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in ("slots", "seed", "runs", "trace"):
        if isinstance(raw.get(key), list):
            raise ConfigError(f"{key!r} cannot be a sweep axis")

    base = {k: raw[k] for k in raw if k not in _LIST_KEYS}
    policies = _as_list(raw.get("policy", "e2e"))
    ps_values = _as_list(raw.get("ps", 0.4))
    periods = _as_list(raw.get("period", 3))
    thresholds = _as_list(raw.get("threshold", 3))
    p_values = _as_list(raw.get("p", 0.95))
    q_values = _as_list(raw.get("q", 0.9))
    if len(p_values) == 1 and len(q_values) > 1:
        p_values = p_values * len(q_values)
    if len(q_values) == 1 and len(p_values) > 1:
        q_values = q_values * len(p_values)
    if len(p_values) != len(q_values):
        raise ConfigError("p and q lists must zip into pairs of equal length")

    grid = []
    for policy in policies:
        for p, q in zip(p_values, q_values):
            for ps in ps_values:
                for period in periods:
                    for threshold in thresholds:
                        try:
                            scenario = Scenario(
                                policy=policy,
                                p=p,
                                q=q,
                                ps=ps,
                                period=period,
                                threshold=threshold,
                                **base,
                            )
                        except TypeError as exc:
                            raise ConfigError(str(exc)) from exc
                        scenario.sim_config()  # validate every expanded config
                        grid.append(scenario)
    if not grid:
        raise ConfigError("empty experiment grid")
    return grid


def parse_config(path: str) -> list[Scenario]:
    """Load and validate a config file; returns the expanded grid."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file does not parse: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must contain a JSON object")
    return _expand(raw)


def _resolve_grid(args) -> list[Scenario]:
    raw: dict = {}
    if args.config is not None:
        if not os.path.exists(args.config):
            raise ConfigError(f"config file not found: {args.config}")
        try:
            with open(args.config, encoding="utf-8") as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file does not parse: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config file must contain a JSON object")

    for key in ("policy", "p", "q", "ps", "period", "threshold", "slots", "seed", "runs"):
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    if getattr(args, "trace", False):
        raw["trace"] = True
    if "seed" not in raw:
        env_seed = os.environ.get("SEMCOM_SEED")
        if env_seed is not None:
            try:
                raw["seed"] = int(env_seed)
            except ValueError as exc:
                raise ConfigError(f"SEMCOM_SEED is not an integer: {env_seed!r}") from exc
    return _expand(raw)


def _write_output(text: str, out: str | None, sidecar: list[Scenario] | None = None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    if sidecar is not None:
        effective = [s.__dict__ for s in sidecar]
        with open(out + ".config.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump(effective, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _summary_row(s: Scenario, m) -> str:
    return ",".join(
        [
            s.policy,
            _fmt(s.p),
            _fmt(s.q),
            _fmt(s.ps),
            str(s.period),
            str(s.threshold),
            str(s.slots),
            str(s.seed),
            _fmt(m.recon_error),
            _fmt(m.actuation_cost),
            _fmt(m.tx_rate),
            _fmt(m.uninformative_frac),
        ]
    )


def _trace_rows(trace) -> list[str]:
    rows = []
    for t in trace:
        if isinstance(t.decision, Idle):
            decision, value, gen, delivered, uninf = "idle", "", "", "", ""
        else:
            decision = "transmit"
            value = str(t.decision.value)
            gen = str(t.decision.gen_slot)
            delivered = "1" if t.delivered else "0"
            uninf = "1" if t.uninformative else "0"
        rows.append(
            f"{t.slot},{t.source_state},{t.estimate},{t.aoi},{decision},{value},{gen},{delivered},{uninf}"
        )
    return rows


def cmd_run(args) -> int:
    grid = _resolve_grid(args)
    want_trace = any(s.trace for s in grid)
    if want_trace and len(grid) > 1:
        raise ConfigError("--trace is only valid for a single scenario")
    if want_trace and args.out is None:
        raise ConfigError("--trace requires --out (trace goes to OUT.trace.csv)")

    lines = [SUMMARY_HEADER]
    trace_lines = None
    for s in grid:
        if s.runs > 1 and s.trace:
            raise ConfigError("--trace cannot be combined with --runs > 1")
        if s.runs > 1:
            agg = replicate(s.sim_config(), s.runs)
            summary = _AggView(agg)
            lines.append(_summary_row(s, summary))
        elif s.trace:
            summary, trace = run_with_trace(s.sim_config(trace=True))
            lines.append(_summary_row(s, summary))
            trace_lines = [TRACE_HEADER] + _trace_rows(trace)
        else:
            lines.append(_summary_row(s, run(s.sim_config())))
    _write_output("\n".join(lines) + "\n", args.out, sidecar=grid)
    if trace_lines is not None:
        with open(args.out + ".trace.csv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(trace_lines) + "\n")
    return EXIT_OK


class _AggView:
    """Adapts a ReplicateSummary to the summary-row field names."""

    def __init__(self, agg):
        self.recon_error = agg.recon_error.mean
        self.actuation_cost = agg.actuation_cost.mean
        self.tx_rate = agg.tx_rate.mean
        self.uninformative_frac = agg.uninformative_frac.mean


def cmd_sweep(args) -> int:
    if args.config is None:
        raise ConfigError("sweep requires --config")
    return cmd_run(args)


def cmd_oracle(args) -> int:
    grid = _resolve_grid(args)
    lines = [SUMMARY_HEADER]
    for s in grid:
        lines.append(_summary_row(s, oracle_summary(s.sim_config())))
    _write_output("\n".join(lines) + "\n", args.out, sidecar=grid)
    return EXIT_OK


def _rel_dev(sim: float, exact: float) -> float:
    if exact != 0.0:
        return abs(sim - exact) / abs(exact)
    return 0.0 if sim == 0.0 else float("inf")


def cmd_compare(args) -> int:
    grid = _resolve_grid(args)
    lines = [COMPARE_HEADER]
    any_fail = False
    for s in grid:
        prefix = [
            s.policy,
            _fmt(s.p),
            _fmt(s.q),
            _fmt(s.ps),
            str(s.period),
            str(s.threshold),
            str(s.slots),
            str(s.seed),
        ]
        try:
            exact = oracle_summary(s.sim_config())
        except NoStationaryError:
            lines.append(",".join(prefix + [""] * 12 + ["no-stationary"]))
            continue
        sim = run(s.sim_config())
        pairs = [
            (sim.recon_error, exact.recon_error),
            (sim.actuation_cost, exact.actuation_cost),
            (sim.tx_rate, exact.tx_rate),
            (sim.uninformative_frac, exact.uninformative_frac),
        ]
        ok = (
            abs(pairs[0][0] - pairs[0][1]) <= ABS_TOL
            and _rel_dev(*pairs[1]) <= REL_TOL
            and _rel_dev(*pairs[2]) <= REL_TOL
            and abs(pairs[3][0] - pairs[3][1]) <= ABS_TOL
        )
        any_fail = any_fail or not ok
        cells = list(prefix)
        for sim_v, exact_v in pairs:
            cells += [_fmt(sim_v), _fmt(exact_v), _fmt(abs(sim_v - exact_v))]
        cells.append("pass" if ok else "fail")
        lines.append(",".join(cells))
    _write_output("\n".join(lines) + "\n", args.out, sidecar=grid)
    return EXIT_TOLERANCE if any_fail else EXIT_OK


def cmd_reproduce_paper(args) -> int:
    out_dir = args.out if args.out is not None else "."
    os.makedirs(out_dir, exist_ok=True)
    slots = args.slots if args.slots is not None else DEFAULT_SLOTS
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    written = []
    for label, (p, q) in (("slow", (0.95, 0.9)), ("rapid", (0.8, 0.3))):
        grid = [
            Scenario(policy=policy, p=p, q=q, ps=ps, slots=slots, seed=seed)
            for policy in POLICY_ORDER
            for ps in (0.4, 0.9)
        ]
        lines = [SUMMARY_HEADER]
        for s in grid:
            lines.append(_summary_row(s, run(s.sim_config())))
        path = os.path.join(out_dir, f"reproduce_{label}.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
        with open(path + ".config.json", "w", encoding="utf-8", newline="\n") as fh:
            json.dump([s.__dict__ for s in grid], fh, indent=2, sort_keys=True)
            fh.write("\n")
        written.append(path)
    sys.stdout.write("\n".join(written) + "\n")
    return EXIT_OK


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", help="JSON config file")
    sp.add_argument("--policy", choices=list(POLICY_ORDER))
    sp.add_argument("--p", type=float, help="stay probability of state 0")
    sp.add_argument("--q", type=float, help="stay probability of state 1")
    sp.add_argument("--ps", type=float, help="channel success probability")
    sp.add_argument("--period", type=int, help="uniform sampling period")
    sp.add_argument("--threshold", type=int, help="age-aware AoI threshold")
    sp.add_argument("--slots", type=int, help="simulation horizon")
    sp.add_argument("--seed", type=int, help="base seed (env SEMCOM_SEED, then 42)")
    sp.add_argument("--runs", type=int, help="independent replications to average")
    sp.add_argument("--out", help="output CSV path (default: stdout)")
    sp.add_argument("--trace", action="store_true", help="also write a per-slot trace")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semcom",
        description="Semantics-aware sampling simulator and exact analysis toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("run", cmd_run),
        ("sweep", cmd_sweep),
        ("oracle", cmd_oracle),
        ("compare", cmd_compare),
        ("reproduce-paper", cmd_reproduce_paper),
    ):
        sp = sub.add_parser(name)
        _add_common(sp)
        sp.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoStationaryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
