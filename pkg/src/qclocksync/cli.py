"""Command-line interface.

Subcommands ``fig1``..``fig4`` emit the parameter sweeps behind the four
reference figures as CSV or JSON; ``eval`` reports the statistics of a
single parameter point (optionally inverting an observed probability into
clock-offset candidates); ``selftest`` runs the randomized
oracle-equivalence suite.

Exit codes: 0 success, 1 parameter error, 2 self-test failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from .protocol import (
    Family,
    TwoQubitState,
    concurrence_x_state,
    estimate_delta,
    optimal_k,
    prob_pos_bipartite,
    prob_pos_w,
    prob_pos_z,
)
from .selftest import DEFAULT_SAMPLES, DEFAULT_TOL, oracle_equivalence_failures
from .states import TWO_PI, BasisLabel, build_bipartite_theta
from .sweeps import Q_ENDPOINT_GAP, render_rows, run_fig1, run_fig2, run_fig3, run_fig4
from .unruh import apply_unruh_map


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 1 on malformed flags."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common_sweep_flags(p: _Parser) -> None:
    p.add_argument("--omega-delta", type=float, default=TWO_PI,
                   help="energy gap times clock offset, radians (default 2*pi)")
    p.add_argument("--out", type=str, default=None,
                   help="output file path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default csv)")


def build_parser() -> _Parser:
    parser = _Parser(prog="qclocksync",
                     description="Clock-synchronization probabilities for entangled "
                                 "detectors with one uniformly accelerated observer.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p1 = sub.add_parser("fig1",
                        help="probability vs register size (W and optimal-Z families)")
    p1.add_argument("--n", type=int, default=20, help="largest register size (default 20)")
    p1.add_argument("--q", type=float, default=0.9)
    p1.add_argument("--nu", type=float, default=0.1)
    _add_common_sweep_flags(p1)

    p2 = sub.add_parser("fig2",
                        help="probability and concurrence vs two-qubit state angle")
    p2.add_argument("--steps", type=int, default=1000, help="grid points over [0, pi/2]")
    p2.add_argument("--q", type=float, default=0.9)
    p2.add_argument("--nu", type=float, default=0.1)
    _add_common_sweep_flags(p2)

    p3 = sub.add_parser("fig3",
                        help="probability vs acceleration parameter (three families)")
    p3.add_argument("--steps", type=int, default=100, help="grid points over [0, q-max]")
    p3.add_argument("--n", type=int, default=20, help="multipartite register size (default 20)")
    p3.add_argument("--nu", type=float, default=0.1)
    p3.add_argument("--q-max", type=float, default=1.0 - Q_ENDPOINT_GAP,
                    help="upper end of the q grid, strictly below 1")
    _add_common_sweep_flags(p3)

    p4 = sub.add_parser("fig4",
                        help="probability vs coupling strength (three families)")
    p4.add_argument("--steps", type=int, default=101, help="grid points over [0, nu-max]")
    p4.add_argument("--n", type=int, default=20, help="multipartite register size (default 20)")
    p4.add_argument("--q", type=float, default=0.8)
    p4.add_argument("--nu-max", type=float, default=1.0, help="upper end of the nu grid")
    _add_common_sweep_flags(p4)

    pe = sub.add_parser("eval",
                        help="single-point statistics, optionally inverting an observation")
    pe.add_argument("--family", choices=("z", "w", "bipartite"), required=True)
    pe.add_argument("--n", type=int, default=20)
    pe.add_argument("--k", type=int, default=None,
                    help="excited count for the Z family (default: optimal)")
    pe.add_argument("--theta", type=float, default=math.pi / 4)
    pe.add_argument("--q", type=float, default=0.9)
    pe.add_argument("--nu", type=float, default=0.1)
    pe.add_argument("--omega-delta", type=float, default=TWO_PI)
    pe.add_argument("--estimate", type=float, default=None, metavar="P_OBS",
                    help="invert this observed |pos> frequency into offset candidates")
    pe.add_argument("--omega", type=float, default=1.0,
                    help="energy gap used to express offset candidates (default 1)")

    ps = sub.add_parser("selftest",
                        help="randomized oracle-equivalence suite")
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                    help="(q, nu) draws per (n, k) combination")

    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _cmd_fig(args) -> int:
    if args.command == "fig1":
        rows = run_fig1(args.n, q=args.q, nu=args.nu, omega_delta=args.omega_delta)
    elif args.command == "fig2":
        rows = run_fig2(args.steps, q=args.q, nu=args.nu, omega_delta=args.omega_delta)
    elif args.command == "fig3":
        rows = run_fig3(args.steps, args.n, nu=args.nu,
                        omega_delta=args.omega_delta, q_max=args.q_max)
    else:
        rows = run_fig4(args.steps, args.n, q=args.q,
                        omega_delta=args.omega_delta, nu_max=args.nu_max)
    _emit(render_rows(rows, args.format), args.out)
    return 0


def _cmd_eval(args) -> int:
    lines = []
    if args.family == "z":
        choice = optimal_k(args.n, args.q, args.nu)
        k = args.k if args.k is not None else choice.k_opt
        result = prob_pos_z(args.n, k, args.q, args.nu, args.omega_delta)
        lines.append(("family", Family.Z.value))
        lines.append(("n", k_fmt(args.n)))
        lines.append(("k_used", k_fmt(k)))
        lines.append(("k_opt", k_fmt(choice.k_opt)))
    elif args.family == "w":
        result = prob_pos_w(args.n, args.q, args.nu, args.omega_delta)
        lines.append(("family", Family.W.value))
        lines.append(("n", k_fmt(args.n)))
    else:
        result = prob_pos_bipartite(args.theta, args.q, args.nu, args.omega_delta)
        lines.append(("family", Family.BIPARTITE.value))
        lines.append(("theta", f"{args.theta:.12g}"))
    lines.append(("p_pos", f"{result.p_pos:.12g}"))
    lines.append(("p_neg", f"{result.p_neg:.12g}"))
    lines.append(("amplitude", f"{result.amplitude:.12g}"))
    if args.family == "bipartite":
        out = apply_unruh_map(build_bipartite_theta(args.theta), 1, args.q, args.nu)
        conc = concurrence_x_state(TwoQubitState(out.rho_atoms, BasisLabel.COMPUTATIONAL))
        lines.append(("concurrence", f"{conc:.12g}"))
    if args.estimate is not None:
        candidates = estimate_delta(args.estimate, result.amplitude, args.omega)
        lines.append(("delta_candidates", " ".join(f"{c:.12g}" for c in candidates)))
    for key, value in lines:
        print(f"{key} = {value}")
    return 0


def k_fmt(value: int) -> str:
    return str(int(value))


def _cmd_selftest(args) -> int:
    failures, checks = oracle_equivalence_failures(seed=args.seed, samples=args.samples)
    for message in failures:
        print(f"FAIL {message}")
    print(f"oracle equivalence: {checks - len(failures)}/{checks} checks within {DEFAULT_TOL:g} "
          f"(seed={args.seed}, samples={args.samples})")
    if failures:
        print("selftest: FAILED")
        return 2
    print("selftest: OK")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("fig1", "fig2", "fig3", "fig4"):
            return _cmd_fig(args)
        if args.command == "eval":
            return _cmd_eval(args)
        return _cmd_selftest(args)
    except ValueError as exc:
        print(f"qclocksync: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
