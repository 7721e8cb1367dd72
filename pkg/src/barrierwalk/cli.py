"""Command-line front end: writes figure data as CSV/JSON tables.

Data tables go to ``--output`` (stdout when omitted), JSON summaries to
stdout, log messages to stderr.

Exit codes: 0 success, 2 invalid arguments, 3 runtime failure,
4 closed-form/simulation mismatch above ``--tol``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import contextmanager

import numpy as np

from . import classical, ctqw, momentum, transport, walk
from .errors import InsufficientData, SingularParameterization, SlopeOutOfRange

log = logging.getLogger("barrierwalk")

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME, EXIT_MISMATCH = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _pos_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    # repr is the shortest string that round-trips exactly
    return repr(float(value))


def _scalar(value):
    return int(value) if isinstance(value, (int, np.integer)) else float(value)


@contextmanager
def _sink(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def write_table(path, columns, rows, fmt="csv", footer=None):
    """Write ``rows`` under ``columns``; ``footer`` is a dict of summary values."""
    with _sink(path) as fh:
        if fmt == "json":
            doc = {"columns": list(columns), "rows": [[_scalar(v) for v in r] for r in rows]}
            doc.update({k: _scalar(v) for k, v in (footer or {}).items()})
            fh.write(json.dumps(doc) + "\n")
            return
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
        for key, value in (footer or {}).items():
            fh.write(f"# {key},{_fmt(value)}\n")


def read_table(path):
    """Parse a CSV written by :func:`write_table` into ``(columns, rows, footer)``."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    columns = lines[0].split(",")
    rows, footer = [], {}
    for line in lines[1:]:
        if line.startswith("#"):
            key, value = line[1:].strip().split(",")
            footer[key] = float(value)
        elif line:
            rows.append([int(v) if i == 0 else float(v) for i, v in enumerate(line.split(","))])
    return columns, rows, footer


def _barriers(args) -> walk.BarrierParams | None:
    try:
        if args.alpha is not None:
            return walk.BarrierParams.from_alpha(args.alpha)
        if args.phi is not None:
            return walk.BarrierParams(args.phi)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return None


def cmd_simulate(args) -> int:
    barriers = _barriers(args)
    kind = walk.ShiftKind(args.shift)
    field = walk.new_field(args.steps, walk.InitialState(args.initial))
    field = walk.evolve(field, kind, barriers, args.steps)
    if not field.unitary:
        log.warning("moving shift with barriers is not unitary; norm = %.6g", field.norm())
    dist = walk.probabilities(field)
    write_table(args.output, ["position", "probability"], sorted(dist.items()), args.format)
    return EXIT_OK


def cmd_analytic(args) -> int:
    barriers = _barriers(args) or walk.BarrierParams(0.0)
    try:
        quad = momentum.QuadratureSpec(args.nodes) if args.nodes else None
        dist = momentum.closed_form_distribution(args.steps, barriers, quad)
    except (SingularParameterization, ValueError) as exc:
        raise UsageError(str(exc)) from exc

    if not args.compare:
        write_table(args.output, ["position", "probability"], sorted(dist.items()), args.format)
        return EXIT_OK

    field = walk.evolve(
        walk.new_field(args.steps, walk.InitialState.LEFT_LOCALIZED),
        walk.ShiftKind.FLIP_FLOP, barriers, args.steps,
    )
    sim = walk.probabilities(field)
    rows = [(n, p, sim[n], abs(p - sim[n])) for n, p in sorted(dist.items())]
    worst = max(r[3] for r in rows)
    write_table(
        args.output, ["position", "probability", "simulated", "abs_diff"], rows,
        args.format, footer={"max_abs_diff": worst},
    )
    if worst > args.tol:
        log.error("closed form and simulation differ by %.3g > tol %.3g", worst, args.tol)
        return EXIT_MISMATCH
    log.info("max |closed - simulated| = %.3g", worst)
    return EXIT_OK


def cmd_peaks(args) -> int:
    barriers = _barriers(args)
    if args.steps < 1:
        raise UsageError("--steps must be >= 1 for peak tracking")
    trace = transport.track_peaks(walk.ShiftKind(args.shift), barriers, args.steps, args.side)
    try:
        trace = transport.fit_trace(trace, args.t_min)
        est = transport.estimate_alpha(abs(trace.slope))
    except (InsufficientData, SlopeOutOfRange) as exc:
        raise UsageError(str(exc)) from exc
    if args.output is not None:
        rows = zip(trace.t, trace.n_peak, trace.p_peak)
        write_table(args.output, ["t", "n_peak", "p_peak"], rows, args.format)
    print(json.dumps({"slope": trace.slope, "alpha": est.alpha, "phi": est.phi}))
    return EXIT_OK


def cmd_estimate_alpha(args) -> int:
    try:
        est = transport.estimate_alpha(args.slope)
    except SlopeOutOfRange as exc:
        raise UsageError(str(exc)) from exc
    print(json.dumps({"alpha": est.alpha, "phi": est.phi, "beta_imag": est.beta.imag}))
    return EXIT_OK


def cmd_ctqw(args) -> int:
    builders = {"cycle": ctqw.cycle, "complete": ctqw.complete}
    try:
        graph = builders[args.graph](args.vertices)
        cfg = ctqw.CtqwConfig(graph, args.gamma, args.eps)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    psi0 = ctqw.localized(graph.vertices)
    barrier = ctqw.ctqw_evolve(cfg, psi0, args.time, use_barriers=True)
    free = ctqw.ctqw_evolve(cfg, psi0, (1.0 - cfg.eps) * args.time, use_barriers=False)
    distance = ctqw.global_phase_distance(barrier, free)
    expected = np.exp(1j * cfg.gamma * graph.degree * cfg.eps * args.time)
    phase_check = abs(ctqw.global_phase(barrier, free) - expected)
    print(json.dumps({"distance": distance, "phase_check": phase_check}))
    return EXIT_OK


def cmd_classical(args) -> int:
    dist = classical.classical_distribution(args.steps)
    write_table(
        args.output, ["position", "probability"], sorted(dist.probabilities.items()),
        args.format, footer={"spread": classical.spread(dist)},
    )
    return EXIT_OK


def _add_output(p):
    p.add_argument("--output", "-o", default=None, help="table path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_barriers(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--phi", type=float, default=None, help="barrier angle in [0, pi/2]")
    g.add_argument("--alpha", type=float, default=None, help="tunneling amplitude in [0, 1]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barrierwalk",
        description="Coined quantum walk on the line with tunneling barriers.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="step-by-step probability distribution")
    p.add_argument("--steps", type=_nonneg_int, default=100)
    p.add_argument("--shift", choices=[k.value for k in walk.ShiftKind], default="flipflop")
    p.add_argument("--initial", choices=[s.value for s in walk.InitialState], default="left")
    _add_barriers(p)
    _add_output(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analytic", help="distribution from the momentum-space integrals")
    p.add_argument("--steps", type=_nonneg_int, default=100)
    p.add_argument("--nodes", type=_pos_int, default=None,
                   help="quadrature nodes (default max(1024, 16*steps))")
    p.add_argument("--compare", action="store_true", help="also run the simulation and diff")
    p.add_argument("--tol", type=float, default=1e-8)
    _add_barriers(p)
    _add_output(p)
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("peaks", help="track the probability peak and fit its speed")
    p.add_argument("--steps", type=_nonneg_int, default=500)
    p.add_argument("--shift", choices=[k.value for k in walk.ShiftKind], default="flipflop")
    p.add_argument("--side", choices=transport.SIDES, default="right")
    p.add_argument("--t-min", type=_nonneg_int, default=50)
    _add_barriers(p)
    _add_output(p)
    p.set_defaults(func=cmd_peaks)

    p = sub.add_parser("estimate-alpha", help="barrier amplitude from a measured speed")
    p.add_argument("--slope", type=float, required=True)
    p.set_defaults(func=cmd_estimate_alpha)

    p = sub.add_parser("ctqw", help="check the continuous-time rescaling identity")
    p.add_argument("--graph", choices=("cycle", "complete"), default="cycle")
    p.add_argument("--vertices", type=int, default=8)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--time", type=float, default=4.0)
    p.set_defaults(func=cmd_ctqw)

    p = sub.add_parser("classical", help="classical random-walk distribution")
    p.add_argument("--steps", type=_nonneg_int, default=100)
    _add_output(p)
    p.set_defaults(func=cmd_classical)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
