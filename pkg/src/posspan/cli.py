"""Command-line front end.

Exit codes: 0 for an affirmative verdict, 1 for a negative one, 2 for usage
or input errors. ``--json`` switches every subcommand to a versioned JSON
document that :func:`posspan.serialize.verify_document` can re-check.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from . import digraph as dg
from . import fixtures, serialize
from .errors import BadParameters, PosspanError
from .exact import Mat, format_matrix, read_matrix, to_rat
from .posbasis import (
    gen_maximal_pb,
    gen_minimal_pb,
    gen_pb_2l_minus_1,
    gen_pb_l_plus_2,
    is_positive_basis,
    removal_oracle,
)
from .pss import decompose_in_ina, is_pss

EXIT_YES, EXIT_NO, EXIT_USAGE = 0, 1, 2

FAMILIES = ("min-pb", "max-pb", "pb-2l-1", "pb-l-2", "digraph-2n-3", "digraph-n-1")
# range of the random free entries drawn by matrix generators
X_RANGE = (-3, 0)


# generation


@dataclass
class Generated:
    family: str
    params: dict[str, Any]
    matrix: Mat | None = None
    graph: dg.Digraph | None = None

    def text(self) -> str:
        return format_matrix(self.matrix) if self.matrix is not None else dg.format_digraph(self.graph)

    def verify(self) -> bool:
        if self.matrix is not None:
            return removal_oracle(self.matrix)[0]
        G = self.graph
        return dg.is_minimally_strongly_connected(G) and G.n <= G.m <= 2 * (G.n - 1)


def _pick(params: dict, key: str, rng: random.Random | None, draw: Callable[[], Any]) -> Any:
    if params.get(key) is not None:
        return params[key]
    if rng is None:
        raise BadParameters(f"--{key} is required without --seed")
    params[key] = draw()
    return params[key]


def _composition(total: int, rng: random.Random) -> list[int]:
    sizes = []
    while total:
        part = rng.randint(1, total)
        sizes.append(part)
        total -= part
    return sizes


def generate(family: str, params: dict[str, Any], rng: random.Random | None = None) -> Generated:
    """Build one member of ``family``; missing parameters are drawn from ``rng``.

    The output is checked by its verifier before it is returned.

    Raises:
        BadParameters: for unknown families, missing or invalid parameters.
    """
    p = dict(params)
    lo, hi = X_RANGE

    def xs(count: int) -> list:
        return [rng.randint(lo, hi) for _ in range(count)]

    if family in ("min-pb", "max-pb"):
        n = _pick(p, "n", rng, lambda: rng.randint(1, 6))
        ell = _pick(p, "ell", rng, lambda: rng.randint(1, n))
        make = gen_minimal_pb if family == "min-pb" else gen_maximal_pb
        out = Generated(family, p, matrix=make(ell, n))
    elif family == "pb-2l-1":
        n = _pick(p, "n", rng, lambda: rng.randint(2, 6))
        ell = _pick(p, "ell", rng, lambda: rng.randint(2, n))
        x = _pick(p, "x", rng, lambda: xs(ell - 2))
        out = Generated(family, p, matrix=gen_pb_2l_minus_1(ell, n, [to_rat(v) for v in x]))
    elif family == "pb-l-2":
        n = _pick(p, "n", rng, lambda: rng.randint(2, 6))
        ell = _pick(p, "ell", rng, lambda: rng.randint(2, n))
        k = _pick(p, "k", rng, lambda: rng.randint(1, ell - 1))
        x = _pick(p, "x", rng, lambda: [0] + xs(k - 1))
        out = Generated(family, p, matrix=gen_pb_l_plus_2(ell, n, k, [to_rat(v) for v in x]))
    elif family == "digraph-2n-3":
        n = _pick(p, "n", rng, lambda: rng.randint(3, 9))
        c = _pick(p, "circuits", rng, lambda: rng.randint(1, n - 2))
        sizes = _pick(p, "trees", rng, lambda: _composition(n - 2 - c, rng))
        try:
            G = dg.gen_min_sc_2n_minus_3(n, c, sizes, rng=rng)
        except PosspanError as exc:
            raise BadParameters(str(exc)) from exc
        out = Generated(family, p, graph=G)
    elif family == "digraph-n-1":
        n = _pick(p, "n", rng, lambda: rng.randint(3, 9))
        overlap = _pick(p, "overlap", rng, lambda: rng.randint(0, n - 3))
        try:
            G = dg.gen_min_sc_n_plus_1(n, overlap, rng=rng)
        except PosspanError as exc:
            raise BadParameters(str(exc)) from exc
        out = Generated(family, p, graph=G)
    else:
        raise BadParameters(f"unknown family {family!r}")
    if not out.verify():
        raise AssertionError(f"{family} output failed its verifier")
    return out


# subcommands


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _values(values) -> str:
    return " ".join(str(v) for v in values)


def _report(args, doc: dict, lines: list[str], ok: bool) -> int:
    if args.json:
        _emit(args, serialize.dumps(doc) + "\n")
    else:
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_YES if ok else EXIT_NO


def cmd_check_pss(args) -> int:
    M = read_matrix(args.matrix)
    res = is_pss(M)
    doc = serialize.pss_document(M, res)
    cert = doc["certificate"]
    lines = [
        f"verdict: {doc['verdict']} (rank {res.rank} in dimension {M.nrows})",
        f"{cert['kind']}: {_values(cert['values'])}",
    ]
    return _report(args, doc, lines, res.verdict)


def cmd_decompose(args) -> int:
    M = read_matrix(args.matrix)
    form = decompose_in_ina(M)
    doc = serialize.decomposition_document(M, form)
    w = form.witness
    lines = [
        f"verdict: {doc['verdict']} (ell={form.ell}, k={form.k})",
        "canonical form:",
        format_matrix(form.canonical).rstrip(),
        f"column order: {_values(w.perm)}",
        f"column scale: {_values(w.scale)}",
        "basis:",
        format_matrix(w.basis).rstrip(),
        f"{doc['certificate']['kind']}: {_values(doc['certificate']['values'])}",
    ]
    return _report(args, doc, lines, doc["verdict"] == "in")


def _read_digraph(path: str) -> dg.Digraph:
    return dg.parse_digraph(Path(path).read_text(encoding="utf-8"))


def cmd_graph(args) -> int:
    G = _read_digraph(args.digraph)
    if args.action == "netmat":
        if not args.tree:
            raise BadParameters("netmat needs a spanning tree file")
        T = dg.parse_tree(Path(args.tree).read_text(encoding="utf-8"))
        doc = serialize.netmat_document(G, T)
        text = format_matrix(dg.network_matrix(G, T)).rstrip()
        return _report(args, doc, [text], True)
    if args.action == "minimal":
        doc = serialize.minimality_document(G)
        lines = [f"verdict: {doc['verdict']}"]
        if "arc" in doc["certificate"]:
            lines.append(f"removable arc: {doc['certificate']['arc']}")
        return _report(args, doc, lines, doc["verdict"] == "minimal")
    doc = serialize.connectivity_document(G, args.action)
    cert = doc["certificate"]
    lines = [f"verdict: {doc['verdict']}"]
    if cert["kind"] == "ear-decomposition":
        lines += [f"ear {i + 1}: {_values(e)}" for i, e in enumerate(cert["ears"])]
    elif cert["kind"] == "disconnected":
        lines.append(f"component of vertex 0: {_values(cert['component'])}")
    else:
        lines += [f"V1: {_values(cert['v1'])}", f"V2: {_values(cert['v2'])}",
                  f"cut arcs: {_values(cert['arcs'])}"]
    return _report(args, doc, lines, doc["verdict"] == "strongly-connected")


def cmd_basis(args) -> int:
    D = read_matrix(args.matrix)
    report = is_positive_basis(D)
    doc = serialize.basis_document(D, report)
    lines = [f"verdict: {doc['verdict']} (method {report.method}, rank {report.rank})"]
    if report.structure is not None:
        lines.append(f"block sizes: {_values(report.structure.block_sizes)}")
    if report.removable is not None:
        lines.append(f"removable column: {report.removable}")
    return _report(args, doc, lines, report.verdict)


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.replace(",", " ").split()]


def cmd_generate(args) -> int:
    rng = random.Random(args.seed) if args.seed is not None else None
    params = {
        "n": args.n,
        "ell": args.ell,
        "k": args.k,
        "x": None if args.x is None else args.x.replace(",", " ").split(),
        "circuits": args.circuits,
        "trees": None if args.trees is None else _int_list(args.trees),
        "overlap": args.overlap,
    }
    params = {key: v for key, v in params.items() if v is not None}
    item = generate(args.family, params, rng)
    if args.json:
        doc = {
            "schema": serialize.SCHEMA,
            "command": "generate",
            "family": item.family,
            "seed": args.seed,
            "params": {key: (list(map(str, v)) if key == "x" else v) for key, v in item.params.items()},
            "output": item.text(),
        }
        _emit(args, serialize.dumps(doc) + "\n")
    else:
        _emit(args, item.text())
    return EXIT_YES


def selfcheck() -> list[tuple[str, bool]]:
    """Re-derive the reference fixtures; one ``(name, ok)`` per check."""
    f = fixtures
    checks = [
        ("sc-netmat", dg.network_matrix(f.SC_GRAPH, f.SC_TREE) == f.SC_NETMAT),
        ("nsc-netmat", dg.network_matrix(f.NSC_GRAPH, f.NSC_TREE) == f.NSC_NETMAT),
        ("sc-netmat-pss", is_pss(f.SC_NETMAT).verdict),
        ("nsc-netmat-not-pss", not is_pss(f.NSC_NETMAT).verdict),
        ("d58-positive-basis", is_positive_basis(f.D58).verdict),
        ("ear-graph-sc", dg.is_strongly_connected(f.EAR_GRAPH)),
        ("min9-minimal", dg.is_minimally_strongly_connected(f.MIN_SC_9)),
    ]
    return checks


def cmd_selfcheck(args) -> int:
    results = selfcheck()
    if args.json:
        _emit(args, serialize.dumps({"schema": serialize.SCHEMA, "command": "selfcheck",
                                     "results": dict(results)}) + "\n")
    else:
        _emit(args, "".join(f"{'PASS' if ok else 'FAIL'} {name}\n" for name, ok in results))
    return EXIT_YES if all(ok for _, ok in results) else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("--out", metavar="PATH", help="write output to PATH")
    common.add_argument("--seed", type=int, help="seed for random generator draws")

    parser = argparse.ArgumentParser(
        prog="posspan", description="Exact positive spanning set and positive basis tools."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-pss", parents=[common], help="does a matrix positively span Q^n")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_check_pss)

    p = sub.add_parser("decompose", parents=[common], help="IN / INA decomposition")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("graph", parents=[common], help="digraph connectivity and network matrices")
    p.add_argument("action", choices=("check", "ears", "cut", "netmat", "minimal"))
    p.add_argument("digraph")
    p.add_argument("tree", nargs="?")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("basis", parents=[common], help="is a matrix a positive basis")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("generate", parents=[common], help="emit a member of a known family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, help="ambient dimension or vertex count")
    p.add_argument("--ell", type=int, help="dimension of the spanned subspace")
    p.add_argument("--k", type=int, help="height of the first NEM column (pb-l-2)")
    p.add_argument("--x", help="free entries, comma or space separated")
    p.add_argument("--circuits", type=int, help="number of 3-circuits (digraph-2n-3)")
    p.add_argument("--trees", help="sizes of the bi-directed trees (digraph-2n-3)")
    p.add_argument("--overlap", type=int, help="arcs on the shared path (digraph-n-1)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("selfcheck", parents=[common], help="re-derive the bundled fixtures")
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_YES
    try:
        return args.func(args)
    except (PosspanError, OSError) as exc:
        print(f"posspan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
