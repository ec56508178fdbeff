"""Command-line front end.

Exit status: 0 on success, 1 when a verification (suite or bound sandwich)
fails, 2 on invalid input or flags. Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

import numpy as np

from . import io as hio
from .bounds import bounds_report
from .errors import HypernormError
from .hypergraph import (
    adjacency_tensor,
    bound_degree_product,
    bound_neighbor_degree,
    gen_all_ones,
    gen_beta_star,
    gen_cycle,
    gen_random,
    gen_star,
    lower_hofmeister,
    partite_lower,
)
from .spectral import SolverOptions, eta_p, rho_nonnegative, spectral_p_norm
from .structure import Partition, symmetrant
from .verify import SUITES, rows_to_csv, run_suite


class UsageError(Exception):
    pass


def _add_solver_flags(sp: argparse.ArgumentParser, with_p: bool = True) -> None:
    if with_p:
        sp.add_argument("--p", type=float, required=True, help="exponent p >= 1")
    sp.add_argument("--starts", type=int, default=32, help="number of starts (default 32)")
    sp.add_argument("--seed", type=int, default=0, help="base seed for random starts")
    sp.add_argument("--tol", type=float, default=1e-10, help="relative convergence tolerance")
    sp.add_argument("--max-iter", type=int, default=10_000, help="iteration cap per start")
    sp.add_argument(
        "--backend", choices=("auto", "compiled", "python"), default="auto", help="kernel backend"
    )


def _opts(args) -> SolverOptions:
    try:
        return SolverOptions(
            starts=args.starts,
            seed=args.seed,
            tol=args.tol,
            max_iter=args.max_iter,
            backend=args.backend,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hypernorm", description="Spectral p-norms and p-spectral radii of r-matrices."
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("norm", help="spectral p-norm of a tensor")
    sp.add_argument("file", nargs="?", default="-", help="rtensor-v1 or rgraph-v1 file ('-' = stdin)")
    _add_solver_flags(sp)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("eta", help="p-spectral radius of a symmetric tensor")
    sp.add_argument("file", nargs="?", default="-")
    _add_solver_flags(sp)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("rho", help="spectral radius of a nonnegative cubical tensor")
    sp.add_argument("file", nargs="?", default="-")
    _add_solver_flags(sp, with_p=False)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("bounds", help="closed-form bounds on the spectral p-norm")
    sp.add_argument("file", nargs="?", default="-")
    _add_solver_flags(sp)
    sp.add_argument("--with-estimate", action="store_true", help="also run the optimizer")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("symmetrant", help="write the symmetrant of a tensor")
    sp.add_argument("file", nargs="?", default="-")
    sp.add_argument("-o", "--output", default="-")

    sp = sub.add_parser("graph", help="hypergraph utilities")
    gsub = sp.add_subparsers(dest="graph_command", required=True)
    gp = gsub.add_parser("tensor", help="adjacency tensor of a graph")
    gp.add_argument("file", nargs="?", default="-")
    gp.add_argument("-o", "--output", default="-")
    gp = gsub.add_parser("bounds", help="degree bounds of a graph")
    gp.add_argument("file", nargs="?", default="-")
    _add_solver_flags(gp)
    gp.add_argument(
        "--partition", help="JSON list of vertex blocks, e.g. '[[0],[1,2,3]]', for the partite bound"
    )
    gp.add_argument("--with-estimate", action="store_true", help="also compute rho(G)")
    gp.add_argument("--json", action="store_true")

    sp = sub.add_parser("gen", help="generate instances")
    gsub = sp.add_subparsers(dest="kind", required=True)
    gp = gsub.add_parser("star", help="K_{1,n}")
    gp.add_argument("--n", type=int, required=True)
    gp = gsub.add_parser("beta-star", help="k r-edges sharing one vertex")
    gp.add_argument("--r", type=int, required=True)
    gp.add_argument("--k", type=int, required=True)
    gp = gsub.add_parser("all-ones", help="all-ones r-tensor (always rtensor-v1)")
    gp.add_argument("--r", type=int, required=True)
    gp.add_argument("--n", type=int, required=True)
    gp = gsub.add_parser("cycle", help="cycle C_n")
    gp.add_argument("--n", type=int, required=True)
    gp = gsub.add_parser("random", help="random r-graph")
    gp.add_argument("--r", type=int, required=True)
    gp.add_argument("--n", type=int, required=True)
    gp.add_argument("--density", type=float, default=0.5)
    gp.add_argument("--seed", type=int, default=0)
    gp.add_argument("--weights", action="store_true", help="random weights in [0.5, 2]")
    for gp in gsub.choices.values():
        gp.add_argument("-o", "--output", default="-")
        gp.add_argument("--tensor", action="store_true", help="write the adjacency tensor instead")

    sp = sub.add_parser("verify", help="run an invariant suite")
    sp.add_argument("--suite", choices=tuple(SUITES), required=True)
    sp.add_argument("--trials", type=int, default=25)
    _add_solver_flags(sp, with_p=False)
    sp.add_argument("--csv", help="write per-check rows as CSV to this path ('-' = stdout)")
    return ap


# --------------------------------------------------------------------------
# output helpers


def _emit_json(obj: dict[str, Any]) -> None:
    sys.stdout.write(hio.dumps(obj) + "\n")


def _emit_table(pairs) -> None:
    width = max(len(k) for k, _ in pairs)
    for k, v in pairs:
        if isinstance(v, float):
            v = round(v, 6)
        print(f"{k:<{width}}  {v}")


def _result_dict(kind: str, res) -> dict[str, Any]:
    out = {
        "quantity": kind,
        "value": res.value,
        "p": res.p,
        "converged": res.converged,
        "starts": res.starts,
        "iterations": res.iterations,
        "best_start": res.best_start,
    }
    if kind == "norm":
        out["witness"] = [v.tolist() for v in res.witness.vectors]
    else:
        out["witness"] = [np.asarray(res.witness).tolist()]
    if kind == "rho":
        out["gap"] = res.gap
    return out


def _report_result(kind: str, res, as_json: bool) -> None:
    d = _result_dict(kind, res)
    if as_json:
        _emit_json(d)
    else:
        _emit_table([(k, v) for k, v in d.items() if k != "witness"])


# --------------------------------------------------------------------------
# commands


def _cmd_norm(args) -> int:
    A = hio.load_tensor(args.file)
    _report_result("norm", spectral_p_norm(A, args.p, _opts(args)), args.json)
    return 0


def _cmd_eta(args) -> int:
    A = hio.load_tensor(args.file)
    res = eta_p(A, args.p, _opts(args))
    _report_result("eta" if res.kind == "eta" else res.kind, res, args.json)
    return 0


def _cmd_rho(args) -> int:
    A = hio.load_tensor(args.file)
    _report_result("rho", rho_nonnegative(A, _opts(args)), args.json)
    return 0


def _cmd_bounds(args) -> int:
    A = hio.load_tensor(args.file)
    rep = bounds_report(A, args.p, _opts(args), with_estimate=args.with_estimate)
    if args.json:
        _emit_json(rep.as_dict())
    else:
        pairs = [(f"lower {k}", v) for k, v in rep.lower.items()]
        pairs += [(f"upper {k}", v) for k, v in rep.upper.items()]
        if rep.estimate is not None:
            pairs.append(("estimate", rep.estimate))
        pairs.append(("sandwich_ok", rep.sandwich_ok))
        _emit_table(pairs)
    for v in rep.violations():
        print(f"sandwich violated: {v}", file=sys.stderr)
    return 0 if rep.sandwich_ok else 1


def _cmd_symmetrant(args) -> int:
    B, _ = symmetrant(hio.load_tensor(args.file))
    hio.save_tensor(B, args.output)
    return 0


def _parse_partition(text: str) -> Partition:
    try:
        blocks = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--partition is not valid JSON: {exc}") from exc
    try:
        return Partition.from_blocks(blocks)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad --partition: {exc}") from exc


def _cmd_graph(args) -> int:
    G = hio.load_graph(args.file)
    if args.graph_command == "tensor":
        hio.save_tensor(adjacency_tensor(G), args.output)
        return 0
    out: dict[str, Any] = {
        "p": args.p,
        "degree_product": bound_degree_product(G),
        "neighbor_degree": bound_neighbor_degree(G),
    }
    if args.p >= G.r:
        out["degree_lower"] = lower_hofmeister(G, args.p)
    if args.partition:
        out["partite_lower"] = partite_lower(G, _parse_partition(args.partition), args.p)
    if args.with_estimate:
        out["rho"] = rho_nonnegative(adjacency_tensor(G), _opts(args)).value
        out["eta"] = eta_p(adjacency_tensor(G), args.p, _opts(args)).value
    if args.json:
        _emit_json(out)
    else:
        _emit_table(list(out.items()))
    return 0


def _cmd_gen(args) -> int:
    if args.kind == "star":
        obj = gen_star(args.n)
    elif args.kind == "beta-star":
        obj = gen_beta_star(args.r, args.k)
    elif args.kind == "all-ones":
        obj = gen_all_ones(args.r, args.n)
    elif args.kind == "cycle":
        obj = gen_cycle(args.n)
    else:
        obj = gen_random(args.r, args.n, args.density, args.seed, args.weights)
    if args.kind == "all-ones":
        hio.save_tensor(obj, args.output)
    elif args.tensor:
        hio.save_tensor(adjacency_tensor(obj), args.output)
    else:
        hio.save_graph(obj, args.output)
    return 0


def _cmd_verify(args) -> int:
    rows = run_suite(args.suite, args.trials, args.seed, _opts(args))
    if args.csv:
        text = rows_to_csv(rows)
        if args.csv == "-":
            sys.stdout.write(text)
        else:
            with open(args.csv, "w", encoding="utf-8") as fh:
                fh.write(text)
    failed = [r for r in rows if not r.passed]
    summary = f"suite {args.suite}: {len(rows)} checks, {len(failed)} failed"
    print(summary, file=sys.stderr if args.csv == "-" else sys.stdout)
    for r in failed[:20]:
        print(f"FAIL trial={r.trial} seed={r.seed} {r.quantity}: lhs={r.lhs!r} rhs={r.rhs!r}", file=sys.stderr)
    return 1 if failed else 0


def _validate(args) -> None:
    """Reject bad flags before any input is read."""
    p = getattr(args, "p", None)
    if p is not None and not (1.0 <= p < float("inf")):
        raise UsageError(f"--p must be a finite number >= 1, got {p}")
    if hasattr(args, "starts"):
        _opts(args)
    if getattr(args, "trials", 0) < 0:
        raise UsageError("--trials must be >= 0")


COMMANDS = {
    "norm": _cmd_norm,
    "eta": _cmd_eta,
    "rho": _cmd_rho,
    "bounds": _cmd_bounds,
    "symmetrant": _cmd_symmetrant,
    "graph": _cmd_graph,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _validate(args)
        return COMMANDS[args.command](args)
    except (HypernormError, UsageError, OSError, ImportError) as exc:
        print(f"hypernorm: error: {exc}", file=sys.stderr)
        return 2


run = main


if __name__ == "__main__":
    sys.exit(main())
