"""Command-line front end.

Subcommands: bounds, simulate, optimize, sweep-ps, sweep-n, sweep-delta.
All tabular output is RFC-4180-style CSV with a header row, `.` decimals,
and LF line endings; reports can also be emitted as JSON.  Exit codes:
0 success, 1 validation or usage error, 2 a requested check failed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bounds import anc_rate, bounds_report, destination_snr, rate_lower_bound, rate_upper_bound
from .gains import GainAssignment, gains_to_dict, load_gains
from .montecarlo import SimConfig, agreement_check, analytic_moments, simulate
from .network import LayeredNetwork, NetworkValidationError, RegimeSpec, load_network
from .optimize import OptimizerConfig, optimize_gains
from .power import check_feasible
from .presets import replicate_last_relay_layer, rescale_to_delta
from .schemes import full_power_gains, matched_gains

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CHECK_FAILED = 2


class CliError(Exception):
    """Validation or usage failure; maps to exit code 1."""


def _write(text: str, out: str) -> None:
    if out == "stdout" or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _load_net(path: str) -> LayeredNetwork:
    try:
        return load_network(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"cannot load network {path}: {exc}") from exc


def _scheme_gains(net: LayeredNetwork, scheme: str, layer: int | None):
    """Gain assignment plus matched-scheme params for the requested scheme."""
    if layer is None:
        raise CliError("--layer is required for scheme-based commands")
    spec = RegimeSpec(exceptional_layer=layer)
    try:
        matched, params = matched_gains(net, spec)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if params is None:
        raise CliError("--layer must name a relay layer (1..L-1)")
    if scheme == "generalized":
        return matched, params, spec
    if scheme == "full_power":
        return full_power_gains(net), params, spec
    raise CliError(f"unknown scheme {scheme!r}")


def _grid(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise CliError(f"bad grid {text!r}: {exc}") from exc
    if not values:
        raise CliError("grid is empty")
    diffs = np.diff(values)
    if not (np.all(diffs > 0) or np.all(diffs < 0)):
        raise CliError("grid must be strictly monotone")
    return values


def _csv(rows: list[list], header: list[str]) -> str:
    def fmt(v):
        if isinstance(v, float):
            return f"{v:.12g}"
        return str(v)

    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_bounds(args) -> int:
    net = _load_net(args.network)
    gains, params, spec = _scheme_gains(net, args.scheme, args.layer)
    try:
        report = bounds_report(net, spec, gains, params, scheme=args.scheme)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _write(report.to_json() + "\n" if args.format == "json" else report.to_csv(), args.out)
    return EXIT_OK


def cmd_bounds_dispatch(args) -> int:
    if args.scheme != "optimizer":
        return cmd_bounds(args)
    net = _load_net(args.network)
    matched, params, spec = _scheme_gains(net, "generalized", args.layer)
    best, snr = optimize_gains(
        net, OptimizerConfig(restarts=args.restarts, seed=args.seed)
    )
    try:
        report = bounds_report(net, spec, best, params, scheme="optimizer")
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.format == "json":
        payload = report.to_dict()
        payload["optimizer_rate"] = anc_rate(snr)
        _write(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        body = report.to_csv().splitlines()
        text = (
            body[0] + ",optimizer_rate\n" + body[1] + f",{anc_rate(snr):.12g}\n"
        )
        _write(text, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    net = _load_net(args.network)
    if args.gains is not None:
        try:
            gains = load_gains(net, args.gains)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise CliError(f"cannot load gains {args.gains}: {exc}") from exc
    elif args.scheme is not None:
        gains, _, _ = _scheme_gains(net, args.scheme, args.layer)
    else:
        raise CliError("provide --gains FILE or --scheme with --layer")
    config = SimConfig(samples=args.samples, seed=args.seed, workers=args.workers)
    report = simulate(net, gains, config)
    agreement = agreement_check(report, analytic_moments(net, gains), z_threshold=args.z)
    feasibility = check_feasible(net, gains)
    if not feasibility.exact_ok:
        bad = [str(e.node) for e in feasibility.entries if not e.exact_ok]
        print(
            f"warning: exact power constraint violated at {', '.join(bad)}",
            file=sys.stderr,
        )
    if args.format == "json":
        payload = {
            "simulation": report.to_dict(),
            "agreement": agreement.to_dict(),
            "feasibility": feasibility.to_dict(),
        }
        _write(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _write(agreement.to_csv(), args.out)
    return EXIT_OK if agreement.ok else EXIT_CHECK_FAILED


def cmd_optimize(args) -> int:
    net = _load_net(args.network)
    config = OptimizerConfig(restarts=args.restarts, seed=args.seed)
    gains, snr = optimize_gains(net, config)
    payload = gains_to_dict(net, gains)
    payload["snr"] = snr
    payload["rate"] = anc_rate(snr)
    _write(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def cmd_sweep_ps(args) -> int:
    base = _load_net(args.network)
    spec = RegimeSpec(exceptional_layer=args.layer)
    rows = []
    for p_s in _grid(args.grid):
        if p_s <= 0:
            raise CliError("source powers must be positive")
        net = LayeredNetwork(
            layer_sizes=base.layer_sizes,
            gain_matrices=base.gain_matrices,
            relay_budgets=base.relay_budgets,
            source_power=float(p_s),
        )
        try:
            matched, params = matched_gains(net, spec)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        rate_matched = anc_rate(destination_snr(net, matched))
        rate_full = anc_rate(destination_snr(net, full_power_gains(net)))
        upper = rate_upper_bound(net, spec)
        lower = rate_lower_bound(net, spec, params)
        rows.append(
            [
                p_s,
                rate_matched,
                rate_full,
                upper,
                lower,
                upper - rate_matched,
                upper - rate_full,
            ]
        )
    _write(
        _csv(
            rows,
            [
                "source_power",
                "rate_matched",
                "rate_full_power",
                "upper_bound",
                "lower_bound",
                "gap_matched",
                "gap_full_power",
            ],
        ),
        args.out,
    )
    return EXIT_OK


def cmd_sweep_n(args) -> int:
    base = _load_net(args.network)
    rows = []
    for n_float in _grid(args.grid):
        n = int(n_float)
        if n != n_float or n < 1:
            raise CliError(f"relay counts must be positive integers, got {n_float}")
        net = replicate_last_relay_layer(base, n, args.relay_budget)
        spec = RegimeSpec(exceptional_layer=net.num_layers - 1)
        try:
            matched, params = matched_gains(net, spec)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        rate = anc_rate(destination_snr(net, matched))
        upper = rate_upper_bound(net, spec)
        rows.append([n, rate, upper, upper - rate])
    _write(_csv(rows, ["n", "rate", "upper_bound", "gap"]), args.out)
    return EXIT_OK


def cmd_sweep_delta(args) -> int:
    base = _load_net(args.network)
    spec = RegimeSpec(exceptional_layer=args.layer)
    rows = []
    for delta in _grid(args.grid):
        if delta <= 0:
            raise CliError("margins must be positive")
        try:
            net = rescale_to_delta(base, args.layer, delta)
            matched, params = matched_gains(net, spec)
            upper = rate_upper_bound(net, spec)
            lower = rate_lower_bound(net, spec, params)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        rows.append([delta, upper, lower, upper - lower])
    _write(_csv(rows, ["delta", "upper_bound", "lower_bound", "gap"]), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; the contract reserves 2 for
    # failed checks, so remap usage problems to the validation code.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default="stdout", help="output file, or stdout")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="anclab",
        description="Gain schemes, rate bounds, and simulation for layered relay networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="achieved rate and closed-form bounds")
    p.add_argument("--network", required=True)
    p.add_argument("--layer", type=int, required=True, help="exceptional layer (1..L-1)")
    p.add_argument(
        "--scheme", choices=["generalized", "full_power", "optimizer"], default="generalized"
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=6)
    _add_common(p)
    p.set_defaults(func=cmd_bounds_dispatch)

    p = sub.add_parser("simulate", help="sample-level simulation with agreement check")
    p.add_argument("--network", required=True)
    p.add_argument("--gains", help="gain-assignment JSON file")
    p.add_argument("--scheme", choices=["generalized", "full_power"], default=None)
    p.add_argument("--layer", type=int, default=None)
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--z", type=float, default=4.0, help="agreement threshold in stderr units")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("optimize", help="coordinate-ascent SNR maximization")
    p.add_argument("--network", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=6)
    _add_common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep-ps", help="source-power sweep on a fixed network")
    p.add_argument("--network", required=True)
    p.add_argument("--layer", type=int, required=True)
    p.add_argument("--grid", required=True, help="comma-separated source powers")
    _add_common(p)
    p.set_defaults(func=cmd_sweep_ps)

    p = sub.add_parser("sweep-n", help="bottleneck relay-count sweep")
    p.add_argument("--network", required=True, help="base network; last relay layer replicated")
    p.add_argument("--grid", required=True, help="comma-separated relay counts")
    p.add_argument("--relay-budget", type=float, default=2.0)
    _add_common(p)
    p.set_defaults(func=cmd_sweep_n)

    p = sub.add_parser("sweep-delta", help="regime-margin sweep with fixed bottleneck powers")
    p.add_argument("--network", required=True)
    p.add_argument("--layer", type=int, required=True)
    p.add_argument("--grid", required=True, help="comma-separated margins")
    _add_common(p)
    p.set_defaults(func=cmd_sweep_delta)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, NetworkValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
