"""Command-line front-end: single-point reports, figure-style sweeps,
threshold tables and oracle verification runs.

Output is deterministic: floats carry 12 significant digits, infinite
thresholds serialize as the string "inf", and no timestamps are emitted.
Set CVSTEER_OUT_DIR to redirect relative --out paths.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .channels import ChannelSide, ChannelSpec, thermal_preset
from .criteria import SteeringDirection
from .errors import CvSteerError
from .measures import (
    gaussian_steerability,
    inseparability_threshold,
    log_negativity,
    one_side_thresholds,
    steering_report,
    two_way_laser_threshold,
    two_way_thermal_threshold,
)
from .states import TwoModeGaussianState, make_tmsv
from .verify import SUITES, run_suites

__all__ = ["main", "state_to_dict", "state_from_dict"]

SQRT2 = math.sqrt(2.0)
_AB = SteeringDirection.A_TO_B
_BA = SteeringDirection.B_TO_A


# ---------------------------------------------------------------------------
# state (de)serialization: the JSON schema for two-mode Gaussian states

def state_to_dict(state: TwoModeGaussianState) -> dict:
    """{"mean": [4 floats], "cm": [[4x4 floats]]} in (Q1,P1,Q2,P2) order."""
    return {"mean": state.mean.tolist(), "cm": state.cm.tolist()}


def state_from_dict(data: dict) -> TwoModeGaussianState:
    try:
        return TwoModeGaussianState(data["mean"], data["cm"])
    except KeyError as exc:
        raise CvSteerError(f"state JSON needs 'mean' and 'cm' keys, missing {exc}") from exc


# ---------------------------------------------------------------------------
# formatting helpers

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return f"{value:.12g}"
    return str(value)


def _json_ready(value):
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        if math.isnan(value):
            return None
        return float(f"{value:.12g}")
    return value


def _open_out(path: str | None):
    if path is None:
        return sys.stdout, False
    out_dir = os.environ.get("CVSTEER_OUT_DIR")
    if out_dir and not os.path.isabs(path):
        path = os.path.join(out_dir, path)
    return open(path, "w", newline=""), True


def _write_table(columns, rows, fmt, out, provenance=None):
    stream, close = _open_out(out)
    try:
        if fmt == "json":
            payload = [dict(zip(columns, (_json_ready(v) for v in row))) for row in rows]
            json.dump(payload, stream, indent=2)
            stream.write("\n")
        else:
            if provenance:
                stream.write(f"# {provenance}\n")
            stream.write(",".join(columns) + "\n")
            for row in rows:
                stream.write(",".join(_fmt(v) for v in row) + "\n")
    finally:
        if close:
            stream.close()


# ---------------------------------------------------------------------------
# channel construction from flags

def _channel_from_args(args) -> ChannelSpec | None:
    kind = args.channel
    if kind is None:
        return None
    side = ChannelSide(args.side)
    g = args.g if args.g is not None else 1.0
    kappa = args.kappa if args.kappa is not None else 1.0
    nbar = args.nbar if args.nbar is not None else 0.0
    m = args.M if args.M is not None else 0.0
    return ChannelSpec(kind=kind, side=side, g=g, kappa=kappa, nbar=nbar, m=m)


def _time_from_args(args, channel: ChannelSpec | None) -> float:
    given = [v for v in (args.t, args.kt, args.gt) if v is not None]
    if len(given) > 1:
        raise CvSteerError("give at most one of --t, --kt, --gt")
    if args.t is not None:
        return args.t
    if args.kt is not None:
        if channel is None or channel.kappa <= 0:
            raise CvSteerError("--kt needs a channel with a positive loss rate")
        return args.kt / channel.kappa
    if args.gt is not None:
        if channel is None or channel.g <= 0:
            raise CvSteerError("--gt needs a channel with a positive gain rate")
        return args.gt / channel.g
    return 0.0


def _add_channel_flags(parser):
    parser.add_argument("--channel", choices=["loss", "gain", "thermal", "laser", "phase-sensitive"])
    parser.add_argument("--side", choices=["a", "b", "two"], default="two")
    parser.add_argument("--g", type=float, help="gain rate (default 1 when the channel uses it)")
    parser.add_argument("--kappa", type=float, help="loss rate (default 1 when the channel uses it)")
    parser.add_argument("--nbar", type=float, help="thermal occupation")
    parser.add_argument("--M", type=float, help="bath squeezing (real; |M|^2 <= nbar(nbar+1))")
    parser.add_argument("--t", type=float, help="absolute duration (needs explicit rates)")
    parser.add_argument("--kt", type=float, help="dimensionless kappa*t")
    parser.add_argument("--gt", type=float, help="dimensionless g*t")


# ---------------------------------------------------------------------------
# eval

def _record_quantities(state: TwoModeGaussianState) -> dict:
    report = steering_report(state)
    d = {
        "reid_a_to_b": report.reid_a_to_b,
        "reid_b_to_a": report.reid_b_to_a,
        "entropic_a_to_b": report.entropic_a_to_b,
        "entropic_b_to_a": report.entropic_b_to_a,
        "g_a_to_b": report.g_a_to_b,
        "g_b_to_a": report.g_b_to_a,
        "g_twoway": min(report.g_a_to_b, report.g_b_to_a),
        "e_n": report.e_n,
        "steerable_a_to_b": report.steerable_a_to_b,
        "steerable_b_to_a": report.steerable_b_to_a,
        "separable": not report.entangled,
    }
    return d


def _cmd_eval(args) -> int:
    if args.state is not None:
        with open(args.state) as fh:
            state = state_from_dict(json.load(fh))
    else:
        state = make_tmsv(args.r)
    channel = _channel_from_args(args)
    t = _time_from_args(args, channel)
    if channel is not None:
        state = channel.evolve(state, t)
    report = steering_report(state).as_dict()
    if args.include_state:
        report["state"] = state_to_dict(state)
    print(json.dumps(_json_ready(report), indent=2))
    return 0


# ---------------------------------------------------------------------------
# sweep

FIGURE_PRESETS = {
    "1": {
        "description": "Steerable-time surfaces e^{2 kappa t_c} over (nbar, r) for one- and "
        "two-side thermal channels (long format).",
        "channel": "thermal",
        "nbar_range": [0.02, 1.5],
        "r_range": [0.1, 1.5],
        "grid": 25,
        "columns": ["nbar", "r", "exp2kt_one_side_a_to_b", "exp2kt_one_side_b_to_a", "exp2kt_two_side_two_way"],
    },
    "2a": {
        "description": "Steerability vs T = 1 - e^{-2 kappa t} for the thermal channel "
        "(includes photon loss at nbar = 0).",
        "channel": "thermal",
        "r_values": [0.5, 0.88],
        "nbar_values": [0.0, 1.0],
        "x": "one_minus_R",
        "x_range": [0.0, 0.95],
        "steps": 96,
        "columns": ["one_minus_R", "r", "nbar", "g1_a_to_b", "g1_b_to_a", "g2_twoway"],
    },
    "2b": {
        "description": "Steerability vs 1 - 1/R = 1 - e^{-2 g t} for the gain channel.",
        "channel": "gain",
        "r_values": [0.5, 0.88],
        "x": "one_minus_inv_R",
        "x_range": [0.0, 0.95],
        "steps": 96,
        "columns": ["one_minus_inv_R", "r", "g1_a_to_b", "g1_b_to_a", "g2_twoway"],
    },
    "3": {
        "description": "Steerability vs kappa*t for the laser channel, r = 0.5, "
        "gamma = g/kappa in {0.5, 1, 2}.",
        "channel": "laser",
        "r_values": [0.5],
        "gamma_values": [0.5, 1.0, 2.0],
        "x": "kt",
        "x_range": [0.0, 0.5],
        "steps": 101,
        "columns": ["kt", "gamma", "g1_a_to_b", "g1_b_to_a", "g2_twoway"],
    },
    "4": {
        "description": "Entanglement and steerability vs 1 - T for the two-side "
        "phase-sensitive channel; r in {0.3, 0.6}, nbar = 1, M in {0, 1, sqrt(2)}.",
        "channel": "phase-sensitive",
        "side": "two",
        "r_values": [0.3, 0.6],
        "nbar": 1.0,
        "m_values": [0.0, 1.0, SQRT2],
        "x": "one_minus_T",
        "x_range": [0.0, 0.95],
        "steps": 96,
        "columns": ["one_minus_T", "r", "m", "e_n", "g2_twoway"],
    },
    "5": {
        "description": "Entanglement and directional steerability vs 1 - T for the one-side "
        "phase-sensitive channel on B; r in {0.3, 0.6}, nbar = 1, M in {0, 1, sqrt(2)}.",
        "channel": "phase-sensitive",
        "side": "b",
        "r_values": [0.3, 0.6],
        "nbar": 1.0,
        "m_values": [0.0, 1.0, SQRT2],
        "x": "one_minus_T",
        "x_range": [0.0, 0.95],
        "steps": 96,
        "columns": ["one_minus_T", "r", "m", "g1_a_to_b", "g1_b_to_a", "e_n"],
    },
}


def _preset_rows(name: str):
    preset = FIGURE_PRESETS[name]
    if name == "1":
        nb_lo, nb_hi = preset["nbar_range"]
        r_lo, r_hi = preset["r_range"]
        n = preset["grid"]
        rows = []
        exp2 = lambda t: math.inf if math.isinf(t) else math.exp(2.0 * t)
        for nbar in np.linspace(nb_lo, nb_hi, n):
            for r in np.linspace(r_lo, r_hi, n):
                rates = thermal_preset(1.0, nbar, 0.0)
                t_ab, t_ba = one_side_thresholds(rates.g, rates.kappa, r, bisect=False)
                two = two_way_thermal_threshold(nbar, r, bisect=False)
                rows.append((float(nbar), float(r), exp2(t_ab.t_closed), exp2(t_ba.t_closed), exp2(two.t_closed)))
        return preset["columns"], rows

    xs = np.linspace(*preset["x_range"], preset["steps"])
    rows = []
    if name in ("2a", "2b"):
        nbar_values = preset.get("nbar_values", [0.0])
        for r in preset["r_values"]:
            for nbar in nbar_values:
                tmsv = make_tmsv(r)
                kind = preset["channel"]
                one = ChannelSpec(kind=kind, side=ChannelSide.B, nbar=nbar)
                two = ChannelSpec(kind=kind, side=ChannelSide.BOTH, nbar=nbar)
                for x in xs:
                    t = -0.5 * math.log1p(-float(x))  # kappa or g normalized to 1
                    s1, s2 = one.evolve(tmsv, t), two.evolve(tmsv, t)
                    g1_ab = gaussian_steerability(s1, _AB)
                    g1_ba = gaussian_steerability(s1, _BA)
                    g2 = min(gaussian_steerability(s2, _AB), gaussian_steerability(s2, _BA))
                    row = (float(x), r, nbar, g1_ab, g1_ba, g2) if name == "2a" else (float(x), r, g1_ab, g1_ba, g2)
                    rows.append(row)
        return preset["columns"], rows
    if name == "3":
        r = preset["r_values"][0]
        tmsv = make_tmsv(r)
        for gamma in preset["gamma_values"]:
            one = ChannelSpec(kind="laser", side=ChannelSide.B, g=gamma, kappa=1.0)
            two = ChannelSpec(kind="laser", side=ChannelSide.BOTH, g=gamma, kappa=1.0)
            for kt in xs:
                s1, s2 = one.evolve(tmsv, float(kt)), two.evolve(tmsv, float(kt))
                rows.append(
                    (
                        float(kt),
                        gamma,
                        gaussian_steerability(s1, _AB),
                        gaussian_steerability(s1, _BA),
                        min(gaussian_steerability(s2, _AB), gaussian_steerability(s2, _BA)),
                    )
                )
        return preset["columns"], rows
    # figures 4 and 5
    side = ChannelSide(preset["side"])
    for r in preset["r_values"]:
        tmsv = make_tmsv(r)
        for m in preset["m_values"]:
            spec = ChannelSpec(kind="phase-sensitive", side=side, nbar=preset["nbar"], m=m)
            for x in xs:
                t = -0.5 * math.log1p(-float(x))
                state = spec.evolve(tmsv, t)
                if name == "4":
                    g2 = min(gaussian_steerability(state, _AB), gaussian_steerability(state, _BA))
                    rows.append((float(x), r, m, log_negativity(state), g2))
                else:
                    rows.append(
                        (
                            float(x),
                            r,
                            m,
                            gaussian_steerability(state, _AB),
                            gaussian_steerability(state, _BA),
                            log_negativity(state),
                        )
                    )
    return preset["columns"], rows


_SWEEP_VARS = ("t", "kt", "gt", "nbar", "r", "one-minus-T")


def _generic_sweep_rows(args):
    if args.steps < 2:
        raise CvSteerError("--steps must be >= 2")
    values = np.linspace(args.start, args.stop, args.steps)
    quantity_keys = [
        "reid_a_to_b",
        "reid_b_to_a",
        "entropic_a_to_b",
        "entropic_b_to_a",
        "g_a_to_b",
        "g_b_to_a",
        "g_twoway",
        "e_n",
        "steerable_a_to_b",
        "steerable_b_to_a",
        "separable",
    ]
    columns = [args.var] + quantity_keys
    rows = []
    for v in values:
        v = float(v)
        local = argparse.Namespace(**vars(args))
        if args.var == "r":
            r = v
        else:
            r = args.r
        if args.var == "nbar":
            local.nbar = v
        channel = _channel_from_args(local)
        if args.var == "t":
            t = v
        elif args.var == "kt":
            if channel is None or channel.kappa <= 0:
                raise CvSteerError("sweeping kt needs a channel with a positive loss rate")
            t = v / channel.kappa
        elif args.var == "gt":
            if channel is None or channel.g <= 0:
                raise CvSteerError("sweeping gt needs a channel with a positive gain rate")
            t = v / channel.g
        elif args.var == "one-minus-T":
            if channel is None or channel.kappa <= 0:
                raise CvSteerError("sweeping one-minus-T needs a channel with a positive loss rate")
            t = -0.5 * math.log1p(-v) / channel.kappa
        else:
            t = _time_from_args(local, channel)
        state = make_tmsv(r)
        if channel is not None:
            state = channel.evolve(state, t)
        record = _record_quantities(state)
        rows.append(tuple([v] + [record[k] for k in quantity_keys]))
    return columns, rows


def _cmd_sweep(args) -> int:
    if args.explain:
        if args.figure:
            print(json.dumps(_json_ready(FIGURE_PRESETS[args.figure]), indent=2))
        else:
            print(json.dumps(_json_ready(FIGURE_PRESETS), indent=2))
        return 0
    if args.figure:
        columns, rows = _preset_rows(args.figure)
        provenance = f"cvsteer sweep --figure {args.figure}" if args.provenance else None
    else:
        if args.var is None:
            raise CvSteerError("give either --figure or --var with --start/--stop/--steps")
        columns, rows = _generic_sweep_rows(args)
        provenance = f"cvsteer sweep --var {args.var}" if args.provenance else None
    _write_table(columns, rows, args.format, args.out, provenance)
    return 0


# ---------------------------------------------------------------------------
# threshold

def _threshold_results(args):
    kind = args.channel
    r = args.r
    nbar = args.nbar if args.nbar is not None else 0.0
    if kind == "loss":
        g, kappa = 0.0, args.kappa if args.kappa is not None else 1.0
    elif kind == "gain":
        g, kappa = (args.g if args.g is not None else 1.0), 0.0
    elif kind == "thermal":
        base = args.kappa if args.kappa is not None else 1.0
        rates = thermal_preset(base, nbar, 0.0)
        g, kappa = rates.g, rates.kappa
    else:
        g = args.g if args.g is not None else 1.0
        kappa = args.kappa if args.kappa is not None else 1.0
    results = []
    want = args.quantity
    if want in ("two-way", "all"):
        if kind == "thermal":
            results.append(two_way_thermal_threshold(nbar, r))
        else:
            results.append(two_way_laser_threshold(g, kappa, r))
    if want in ("a-to-b", "b-to-a", "all"):
        t_ab, t_ba = one_side_thresholds(g, kappa, r)
        if want in ("a-to-b", "all"):
            results.append(t_ab)
        if want in ("b-to-a", "all"):
            results.append(t_ba)
    if want in ("inseparability", "all"):
        sides = [ChannelSide.B, ChannelSide.BOTH] if want == "all" else [ChannelSide(args.side) if args.side != "a" else ChannelSide.A]
        for side in sides:
            results.append(inseparability_threshold(g, kappa, r, side))
    return results


def _cmd_threshold(args) -> int:
    results = _threshold_results(args)
    if args.format == "json":
        print(json.dumps(_json_ready([res.as_dict() for res in results]), indent=2))
        return 0
    header = f"{'direction':<16} {'t_closed':>18} {'t_numeric':>18} {'agreement':>12} status"
    print(header)
    for res in results:
        print(
            f"{res.direction:<16} {_fmt(res.t_closed):>18} {_fmt(res.t_numeric):>18} "
            f"{_fmt(res.agreement):>12} {res.status}"
        )
    return 0


# ---------------------------------------------------------------------------
# verify

def _cmd_verify(args) -> int:
    results = run_suites(args.suite)
    ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        ok = ok and res.passed
        print(
            f"{res.name:<18} max deviation {res.max_deviation:.3e} "
            f"(tolerance {res.tolerance:.0e}) worst: {res.worst_case} [{status}]"
        )
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvsteer",
        description="EPR steering and entanglement of two-mode Gaussian states in noisy channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="steering report for one state")
    p_eval.add_argument("--r", type=float, default=0.0, help="TMSV squeezing parameter")
    p_eval.add_argument("--state", help="JSON file with {'mean': [...], 'cm': [[...]]}")
    p_eval.add_argument("--include-state", action="store_true", help="embed the evolved state in the report")
    _add_channel_flags(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_sweep = sub.add_parser("sweep", help="parameter sweeps, figure presets included")
    p_sweep.add_argument("--figure", choices=sorted(FIGURE_PRESETS))
    p_sweep.add_argument("--explain", action="store_true", help="print preset definitions and exit")
    p_sweep.add_argument("--var", choices=_SWEEP_VARS, help="swept variable for a generic sweep")
    p_sweep.add_argument("--start", type=float, default=0.0)
    p_sweep.add_argument("--stop", type=float, default=1.0)
    p_sweep.add_argument("--steps", type=int, default=51)
    p_sweep.add_argument("--r", type=float, default=0.5)
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--out", help="output file (default stdout)")
    p_sweep.add_argument("--provenance", action="store_true", help="prepend a provenance comment to CSV")
    _add_channel_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_thr = sub.add_parser("threshold", help="closed-form vs bisected threshold times")
    p_thr.add_argument("--channel", choices=["loss", "gain", "thermal", "laser"], required=True)
    p_thr.add_argument("--r", type=float, required=True)
    p_thr.add_argument("--g", type=float)
    p_thr.add_argument("--kappa", type=float)
    p_thr.add_argument("--nbar", type=float)
    p_thr.add_argument("--side", choices=["a", "b", "two"], default="two", help="side for inseparability")
    p_thr.add_argument(
        "--quantity",
        choices=["a-to-b", "b-to-a", "two-way", "inseparability", "all"],
        default="all",
    )
    p_thr.add_argument("--format", choices=["table", "json"], default="table")
    p_thr.set_defaults(func=_cmd_threshold)

    p_ver = sub.add_parser("verify", help="run the brute-force oracle suites")
    p_ver.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p_ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CvSteerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
