"""Command-line interface.

Exit codes: 0 success or true, 1 false or distinct, 2 usage or input error.
Graph arguments are a file holding graph6 lines (the first is used) or a
literal graph6 string. Matrix files hold rows of space-separated integers.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

import numpy as np

from ..exactalg import charpoly_exact
from ..graphcore import Graph, Graph6Error, complement, parse_graph6, read_graph6_lines, write_graph6
from ..omegamap import exchange_hamiltonian_sector, omega
from ..srgtools import detect_srg, krein_table, pair_partition_quotient, spectral_idempotents
from ..sympower import selector_power, symmetric_power_quotient, symmetric_power_subsets
from ..walkspec import cospectral, cospectral_complements_check, pair_deck, vertex_deck
from .certify import certify_distinct
from .search import SearchConfig, search


class InputError(Exception):
    pass


def read_graph(arg: str) -> Graph:
    path = Path(arg)
    try:
        if path.is_file():
            graphs = read_graph6_lines(path.read_text().splitlines())
            if not graphs:
                raise InputError(f"{arg}: no graphs in file")
            return graphs[0]
        return parse_graph6(arg)
    except Graph6Error as exc:
        raise InputError(f"{arg}: {exc}") from exc


def read_matrix(path: str) -> np.ndarray:
    try:
        rows = [line.split() for line in Path(path).read_text().splitlines() if line.strip()]
        m = np.array([[int(x) for x in row] for row in rows], dtype=object)
    except (OSError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"{path}: matrix must be square")
    return m


def format_matrix(m) -> str:
    return "\n".join(" ".join(str(int(x)) for x in row) for row in np.asarray(m))


def _operand(args, which: int):
    """Graph adjacency, optionally raised to a symmetric power, or a matrix file."""
    src = args.first if which == 0 else args.second
    if args.matrix:
        return read_matrix(src)
    g = read_graph(src)
    if args.power > 1:
        g = symmetric_power_subsets(g, args.power)
    return g.adjacency()


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_power(args) -> int:
    base = read_graph(args.graph)
    if args.method == "subsets":
        g = symmetric_power_subsets(base, args.k)
    elif args.method == "quotient":
        if args.k != 2:
            raise InputError("the quotient construction only builds squares")
        g = symmetric_power_quotient(base)
    else:
        g = Graph(selector_power(base, args.k) != 0)
    print(format_matrix(g.adjacency()) if args.matrix else write_graph6(g))
    return 0


def cmd_charpoly(args) -> int:
    m = read_matrix(args.graph) if args.matrix else read_graph(args.graph).adjacency()
    print(charpoly_exact(m, workers=args.workers).to_text())
    return 0


def cmd_cospectral(args) -> int:
    g, h = read_graph(args.first), read_graph(args.second)
    same = cospectral(g, h)
    report: dict = {"cospectral": same}
    if args.complements:
        report["complements_cospectral"] = cospectral(complement(g), complement(h))
        if same:
            report["all_walks_criterion"] = cospectral_complements_check(g, h)
    if args.decks:
        report["vertex_decks_equal"] = vertex_deck(g) == vertex_deck(h)
        report["pair_decks_equal"] = pair_deck(g) == pair_deck(h)
    print(json.dumps(report, sort_keys=True))
    return 0 if all(report.values()) else 1


def cmd_srg_info(args) -> int:
    g = read_graph(args.graph)
    params = detect_srg(g)
    if params is None:
        print(json.dumps({"strongly_regular": False}))
        return 1
    idem = spectral_idempotents(params)
    krein = krein_table(params)
    pq = pair_partition_quotient(params)
    report = {
        "strongly_regular": True,
        "parameters": [params.v, params.k, params.a, params.c],
        "eigenvalues": [[repr(e.theta), e.multiplicity] for e in idem],
        "idempotents": [[repr(c) for c in e.coefficients] for e in idem],
        "krein": {f"{i},{j}": [repr(q) for q in qs] for (i, j), qs in krein.items()},
        "pair_quotient": {"matrix": pq.matrix, "eigenvalues": [repr(e) for e in pq.eigenvalues]},
    }
    print(json.dumps(report, indent=1))
    return 0


def cmd_omega(args) -> int:
    print(format_matrix(omega(read_matrix(args.matrix_file).astype(np.int64), args.k)))
    return 0


def cmd_hamiltonian(args) -> int:
    g = read_graph(args.graph)
    block = exchange_hamiltonian_sector(g, args.k)
    print(format_matrix(block))
    if args.check:
        want = symmetric_power_subsets(g, args.k).adjacency() if args.k else np.zeros((1, 1), dtype=np.int64)
        same = np.array_equal(block, want)
        print(f"sector equals symmetric power: {same}", file=sys.stderr)
        return 0 if same else 1
    return 0


def cmd_certify(args) -> int:
    m1, m2 = _operand(args, 0), _operand(args, 1)
    cert = certify_distinct(m1, m2, trials=args.trials, rng=random.Random(args.seed))
    if cert is None:
        print(json.dumps({"result": "inconclusive", "trials": args.trials}))
        return 0
    print(json.dumps({"result": "distinct", **cert.to_dict()}))
    return 1


def cmd_search(args) -> int:
    if args.config:
        config = SearchConfig.from_file(args.config)
    else:
        config = SearchConfig(seeds=[])
    if args.seeds:
        config.seeds = [write_graph6(read_graph(s)) for s in args.seeds]
    if args.budget is not None:
        config.budget = args.budget
    config.seed = args.seed
    config.workers = args.workers
    if not config.seeds:
        raise InputError("search needs at least one seed graph")
    for rec in search(config, store=args.store):
        print(rec.to_json(), flush=True)
    return 0


def cmd_verify_suite(args) -> int:
    from ..acceptance import run_criterion

    ok = True
    for number in args.only or range(1, 14):
        res = run_criterion(number)
        print(res.line(), flush=True)
        ok &= res.passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--workers", type=int, default=1, help="worker processes")
    common.add_argument("--store", help="JSON-lines file receiving search records")

    parser = argparse.ArgumentParser(prog="sympowers", description="Symmetric powers of graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("power", parents=[common], help="symmetric k-th power of a graph")
    p.add_argument("graph")
    p.add_argument("-k", "--k", type=int, default=2)
    p.add_argument("--method", choices=("subsets", "quotient", "selector"), default="subsets")
    p.add_argument("--matrix", action="store_true", help="print the adjacency matrix instead of graph6")
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("charpoly", parents=[common], help="exact characteristic polynomial")
    p.add_argument("graph")
    p.add_argument("--matrix", action="store_true", help="argument is an integer matrix file")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("cospectral", parents=[common], help="compare two spectra exactly")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--complements", action="store_true")
    p.add_argument("--decks", action="store_true")
    p.set_defaults(func=cmd_cospectral)

    p = sub.add_parser("srg-info", parents=[common], help="parameters, idempotents, Krein table")
    p.add_argument("graph")
    p.set_defaults(func=cmd_srg_info)

    p = sub.add_parser("omega", parents=[common], help="apply the compression map to a matrix")
    p.add_argument("matrix_file")
    p.add_argument("-k", "--k", type=int, default=2)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("hamiltonian", parents=[common], help="k-excitation block of the exchange Hamiltonian")
    p.add_argument("graph")
    p.add_argument("-k", "--k", type=int, default=1)
    p.add_argument("--check", action="store_true", help="compare with the symmetric power")
    p.set_defaults(func=cmd_hamiltonian)

    p = sub.add_parser("certify", parents=[common], help="modular non-cospectrality certificate")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--matrix", action="store_true", help="arguments are integer matrix files")
    p.add_argument("--power", type=int, default=1, help="compare symmetric powers of the graphs")
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", parents=[common], help="search for pairs with cospectral squares")
    p.add_argument("--config", help="JSON file with SearchConfig fields")
    p.add_argument("--seeds", nargs="*", help="seed graphs (files or graph6)")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify-suite", parents=[common], help="run the acceptance battery")
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    p.set_defaults(func=cmd_verify_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
