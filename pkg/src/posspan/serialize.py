"""JSON documents for verdicts and certificates.

Every document is self-contained: it carries its input, so
:func:`verify_document` can re-check it without any other context.
Rationals are written as ``"p/q"`` (or ``"p"``) strings.
"""

from __future__ import annotations

import json
from typing import Any

from . import digraph as dg
from . import pss
from .errors import ParseError
from .exact import EquivWitness, Mat, parse_matrix, rank, rat_str, to_rat, vec
from .posbasis import PosBasisReport, removal_oracle

SCHEMA = 1

_CERTS = {
    "positive-combination": (pss.PositiveCombination, "x"),
    "separating-vector": (pss.SeparatingVector, "y"),
    "left-null-vector": (pss.LeftNullVector, "y"),
    "gordan-vector": (pss.GordanVector, "y"),
    "nonnegative-null-vector": (pss.NonnegativeNullVector, "x"),
}


def rats(values) -> list[str]:
    return [rat_str(v) for v in values]


def matrix_to_json(M: Mat) -> dict:
    return {"rows": M.nrows, "cols": M.ncols, "entries": [rats(r) for r in M.rows]}


def matrix_from_json(d: dict) -> Mat:
    return Mat([vec(r) for r in d["entries"]], d["cols"])


def certificate_to_json(cert: pss.Certificate) -> dict:
    values = cert.x if hasattr(cert, "x") else cert.y
    return {"kind": cert.kind, "values": rats(values)}


def certificate_from_json(d: dict) -> pss.Certificate:
    try:
        cls, _ = _CERTS[d["kind"]]
    except KeyError as exc:
        raise ParseError(f"unknown certificate kind {d.get('kind')!r}") from exc
    return cls(vec(d["values"]))


def witness_to_json(w: EquivWitness) -> dict:
    return {"basis": matrix_to_json(w.basis), "perm": list(w.perm), "scale": rats(w.scale)}


def witness_from_json(d: dict) -> EquivWitness:
    return EquivWitness(matrix_from_json(d["basis"]), d["perm"], [to_rat(s) for s in d["scale"]])


def digraph_to_json(G: dg.Digraph) -> dict:
    return {"n": G.n, "arcs": [list(a) for a in G.arcs]}


def digraph_from_json(d: dict) -> dg.Digraph:
    return dg.Digraph(d["n"], tuple(tuple(a) for a in d["arcs"]))


def _doc(command: str, verdict: str, inp: dict, certificate: dict, witness: dict) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "verdict": verdict,
        "input": inp,
        "certificate": certificate,
        "witness": witness,
    }


# builders


def pss_document(M: Mat, res: pss.PssResult) -> dict:
    return _doc(
        "check-pss",
        "pss" if res.verdict else "not-pss",
        {"matrix": matrix_to_json(M)},
        certificate_to_json(res.certificate),
        {"rank": res.rank},
    )


def decomposition_document(M: Mat, form: pss.InForm | pss.InaForm) -> dict:
    wit = witness_to_json(form.witness)
    wit.update(ell=form.ell, k=form.k, canonical=matrix_to_json(form.canonical))
    if isinstance(form, pss.InForm):
        cert = certificate_to_json(pss.nem_positive_combination(form.N))
        return _doc("decompose", "in", {"matrix": matrix_to_json(M)}, cert, wit)
    wit["zero_tail"] = form.zero_tail
    cert = certificate_to_json(form.acyclic_witness)
    return _doc("decompose", "ina", {"matrix": matrix_to_json(M)}, cert, wit)


def basis_document(D: Mat, report: PosBasisReport) -> dict:
    if report.separating is not None:
        cert = certificate_to_json(report.separating)
    elif report.verdict:
        cert = certificate_to_json(report.combination)
    else:
        cert = {
            "kind": "removable-column",
            "column": report.removable,
            "values": rats(report.removal_certificate.x),
        }
    wit: dict[str, Any] = {"method": report.method, "rank": report.rank}
    if report.structure is not None:
        wit["block_sizes"] = list(report.structure.block_sizes)
        wit["block_verdicts"] = list(report.block_verdicts)
    verdict = "positive-basis" if report.verdict else "not-positive-basis"
    return _doc("basis", verdict, {"matrix": matrix_to_json(D)}, cert, wit)


def ears_to_json(ed: dg.EarDecomposition) -> dict:
    return {"kind": "ear-decomposition", "start": ed.start, "ears": [list(e) for e in ed.ears]}


def cut_to_json(cut: dg.OrientedCut) -> dict:
    return {
        "kind": "oriented-cut",
        "v1": sorted(cut.v1),
        "v2": sorted(cut.v2),
        "arcs": sorted(cut.arcs),
    }


def connectivity_document(G: dg.Digraph, action: str) -> dict:
    """Strong connectivity verdict with an ear decomposition or an oriented cut."""
    inp = {"digraph": digraph_to_json(G)}
    if not dg.is_connected(G):
        cert = {"kind": "disconnected", "component": sorted(dg.undirected_component(G, 0))}
        return _doc(f"graph-{action}", "not-strongly-connected", inp, cert, {})
    cut = dg.find_oriented_cut(G)
    if cut is None:
        cert = ears_to_json(dg.ear_decompose(G))
        verdict = "strongly-connected"
    else:
        cert = cut_to_json(cut)
        verdict = "not-strongly-connected"
    return _doc(f"graph-{action}", verdict, inp, cert, {})


def netmat_document(G: dg.Digraph, T: dg.SpanningTree) -> dict:
    M = dg.network_matrix(G, T)
    inp = {"digraph": digraph_to_json(G), "tree": list(T.arcs)}
    cert = {"kind": "network-matrix", "values": [], "matrix": matrix_to_json(M)}
    return _doc("graph-netmat", "network-matrix", inp, cert, {})


def minimality_document(G: dg.Digraph) -> dict:
    inp = {"digraph": digraph_to_json(G)}
    if not dg.is_connected(G):
        cert = {"kind": "disconnected", "component": sorted(dg.undirected_component(G, 0))}
        return _doc("graph-minimal", "not-minimal", inp, cert, {})
    cut = dg.find_oriented_cut(G)
    if cut is not None:
        return _doc("graph-minimal", "not-minimal", inp, cut_to_json(cut), {})
    for a in range(G.m):
        H = G.without_arc(a)
        if dg.is_strongly_connected(H):
            cert = ears_to_json(dg.ear_decompose(H))
            cert["kind"] = "removable-arc"
            cert["arc"] = a
            return _doc("graph-minimal", "not-minimal", inp, cert, {})
    cert = ears_to_json(dg.ear_decompose(G))
    return _doc("graph-minimal", "minimal", inp, cert, {})


# verification


def _ears_from(c: dict) -> dg.EarDecomposition:
    return dg.EarDecomposition(c["start"], tuple(tuple(e) for e in c["ears"]))


def _cut_from(c: dict) -> dg.OrientedCut:
    return dg.OrientedCut(frozenset(c["v1"]), frozenset(c["v2"]), frozenset(c["arcs"]))


def _verify_decomposition(M: Mat, doc: dict) -> bool:
    w = doc["witness"]
    wit = witness_from_json(w)
    c = matrix_from_json(w["canonical"])
    n, m = M.shape
    l, k = w["ell"], w["k"]
    cert = certificate_from_json(doc["certificate"])
    if doc["verdict"] == "in":
        N = c.block(range(n), range(n, n + k))
        nem = pss.validate_nem(N)
        form = pss.InForm(l, k, N, c.block(range(n), range(n + k, m)), nem, wit, c)
        return nem is not None and form.verify(M) and cert.verify(c.block(range(n), range(n + k)))
    t0 = l + k + w["zero_tail"]
    A = c.block(range(l, n), range(t0, m))
    form = pss.InaForm(
        l, k, c.block(range(l), range(l, l + k)), c.block(range(l), range(l + k, m)),
        A, w["zero_tail"], cert, wit, c,
    )
    return isinstance(cert, pss.GordanVector) and form.verify(M)


def _verify_generated(doc: dict) -> bool:
    text = doc["output"]
    if doc["family"].startswith("digraph"):
        G = dg.parse_digraph(text)
        return dg.is_minimally_strongly_connected(G) and G.n <= G.m <= 2 * (G.n - 1)
    return removal_oracle(parse_matrix(text))[0]


def verify_document(doc: dict) -> bool:
    """Re-check a document produced by this module."""
    if doc.get("schema") != SCHEMA:
        return False
    if doc.get("command") == "generate":
        return _verify_generated(doc)
    cmd, verdict, inp, cert = doc["command"], doc["verdict"], doc["input"], doc["certificate"]
    if cmd == "check-pss":
        M = matrix_from_json(inp["matrix"])
        c = certificate_from_json(cert)
        if verdict == "pss":
            return isinstance(c, pss.PositiveCombination) and c.verify(M) and rank(M) == M.nrows
        return not isinstance(c, pss.PositiveCombination) and c.verify(M)
    if cmd == "decompose":
        return _verify_decomposition(matrix_from_json(inp["matrix"]), doc)
    if cmd == "basis":
        D = matrix_from_json(inp["matrix"])
        if cert["kind"] == "removable-column":
            rest = D.drop_column(cert["column"])
            x = pss.PositiveCombination(vec(cert["values"]))
            return verdict == "not-positive-basis" and x.verify(rest) and rank(rest) == rank(D)
        c = certificate_from_json(cert)
        if verdict == "positive-basis":
            return c.verify(D) and removal_oracle(D)[0]
        return isinstance(c, pss.SeparatingVector) and c.verify(D)
    if cmd.startswith("graph-"):
        G = digraph_from_json(inp["digraph"])
        if cmd == "graph-netmat":
            T = dg.SpanningTree(inp["tree"])
            return matrix_from_json(cert["matrix"]) == dg.network_matrix(G, T)
        if cert["kind"] == "disconnected":
            comp = set(cert["component"])
            closed = all((t in comp) == (h in comp) for t, h in G.arcs)
            return verdict.startswith("not-") and closed and 0 < len(comp) < G.n
        if cert["kind"] == "oriented-cut":
            return verdict.startswith("not-") and dg.validate_cut(G, _cut_from(cert))
        if cert["kind"] == "removable-arc":
            H = G.without_arc(cert["arc"])
            return verdict == "not-minimal" and dg.validate_ear_decomposition(H, _ears_from(cert))
        ok = dg.validate_ear_decomposition(G, _ears_from(cert))
        if verdict == "minimal":
            return ok and dg.is_minimally_strongly_connected(G)
        return ok and verdict == "strongly-connected"
    return False


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc


__all__ = [
    "basis_document",
    "connectivity_document",
    "decomposition_document",
    "dumps",
    "loads",
    "minimality_document",
    "netmat_document",
    "pss_document",
    "verify_document",
]
