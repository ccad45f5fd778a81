"""Digraphs, strong connectivity and network matrices.

Vertices are ``0..n-1`` and arcs are ordered ``(tail, head)`` pairs; the arc
order fixes the column order of every network matrix. Parallel and
anti-parallel arcs are allowed, self-loops are not.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import (
    InconsistentParameters,
    InvalidTree,
    NotConnected,
    NotStronglyConnected,
    ParseError,
)
from .exact import ONE, ZERO, EquivWitness, Mat, apply_equiv


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a digraph needs at least one vertex")
        arcs = tuple((int(t), int(h)) for t, h in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        for t, h in arcs:
            if not (0 <= t < self.n and 0 <= h < self.n):
                raise ValueError(f"arc ({t}, {h}) has an endpoint out of range")
            if t == h:
                raise ValueError(f"self-loop at vertex {t}")

    @property
    def m(self) -> int:
        return len(self.arcs)

    def without_arc(self, a: int) -> "Digraph":
        return Digraph(self.n, self.arcs[:a] + self.arcs[a + 1 :])

    def out_arcs(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for a, (t, _) in enumerate(self.arcs):
            out[t].append(a)
        return out


@dataclass(frozen=True)
class SpanningTree:
    """Arc indices of an oriented spanning tree; rows follow increasing index."""

    arcs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(sorted(int(a) for a in self.arcs)))


@dataclass(frozen=True)
class EarDecomposition:
    start: int
    ears: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class OrientedCut:
    """Partition ``(v1, v2)`` with every crossing arc going from ``v1`` to ``v2``."""

    v1: frozenset[int]
    v2: frozenset[int]
    arcs: frozenset[int]


# connectivity


def _reach(n: int, adj: list[list[int]], src: int) -> set[int]:
    seen = {src}
    todo = deque([src])
    while todo:
        u = todo.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def _adjacency(G: Digraph, reverse: bool = False, undirected: bool = False) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(G.n)]
    for t, h in G.arcs:
        if undirected or not reverse:
            adj[t].append(h)
        if undirected or reverse:
            adj[h].append(t)
    return adj


def undirected_component(G: Digraph, v: int) -> set[int]:
    return _reach(G.n, _adjacency(G, undirected=True), v)


def is_connected(G: Digraph) -> bool:
    return len(undirected_component(G, 0)) == G.n


def is_strongly_connected(G: Digraph) -> bool:
    return (
        len(_reach(G.n, _adjacency(G), 0)) == G.n
        and len(_reach(G.n, _adjacency(G, reverse=True), 0)) == G.n
    )


def find_oriented_cut(G: Digraph) -> OrientedCut | None:
    """An oriented cut, or ``None`` when ``G`` is strongly connected.

    ``v2`` is the set reachable from a vertex that does not reach everything,
    so no arc leaves it.

    Raises:
        NotConnected: if the underlying undirected graph is disconnected.
    """
    if not is_connected(G):
        raise NotConnected("underlying undirected graph is disconnected")
    fwd = _adjacency(G)
    root = _reach(G.n, fwd, 0)
    if len(root) < G.n:
        v2 = root
    else:
        back = _reach(G.n, _adjacency(G, reverse=True), 0)
        if len(back) == G.n:
            return None
        src = min(set(range(G.n)) - back)
        v2 = _reach(G.n, fwd, src)
    v1 = set(range(G.n)) - v2
    arcs = frozenset(a for a, (t, h) in enumerate(G.arcs) if t in v1 and h in v2)
    return OrientedCut(frozenset(v1), frozenset(v2), arcs)


def validate_cut(G: Digraph, cut: OrientedCut) -> bool:
    if not cut.v1 or not cut.v2 or cut.v1 & cut.v2 or cut.v1 | cut.v2 != set(range(G.n)):
        return False
    crossing = {a for a, (t, h) in enumerate(G.arcs) if t in cut.v1 and h in cut.v2}
    backward = any(t in cut.v2 and h in cut.v1 for t, h in G.arcs)
    return not backward and crossing == set(cut.arcs)


# ear decompositions


def _shortest_arc_path(
    G: Digraph, out: list[list[int]], src: int, targets: set[int], allowed: set[int] | None,
    usable: Iterable[int] | None = None,
) -> list[int] | None:
    """Shortest arc path from ``src`` to a target; internal vertices in ``allowed``."""
    ok_arcs = None if usable is None else set(usable)
    prev: dict[int, int] = {}
    seen = {src}
    todo = deque([src])
    while todo:
        u = todo.popleft()
        for a in out[u]:
            if ok_arcs is not None and a not in ok_arcs:
                continue
            h = G.arcs[a][1]
            if h in targets:
                path = [a]
                while u != src:
                    pa = prev[u]
                    path.append(pa)
                    u = G.arcs[pa][0]
                return path[::-1]
            if h not in seen and (allowed is None or h in allowed):
                seen.add(h)
                prev[h] = a
                todo.append(h)
    return None


def ear_decompose(G: Digraph, start: int = 0) -> EarDecomposition:
    """Ear decomposition grown from a shortest circuit through ``start``.

    Raises:
        NotStronglyConnected: if ``G`` is not strongly connected.
    """
    if not is_strongly_connected(G):
        raise NotStronglyConnected("digraph is not strongly connected")
    if G.m == 0:
        return EarDecomposition(start, ())
    out = G.out_arcs()
    first = _shortest_arc_path(G, out, start, {start}, None)
    ears = [tuple(first)]
    used = set(first)
    covered = {G.arcs[a][0] for a in first}
    while len(used) < G.m:
        a = next(a for a in range(G.m) if a not in used and G.arcs[a][0] in covered)
        t, h = G.arcs[a]
        if h in covered:
            ear = [a]
        else:
            outside = set(range(G.n)) - covered
            unused = [b for b in range(G.m) if b not in used]
            ear = [a] + _shortest_arc_path(G, out, h, covered, outside, unused)
        ears.append(tuple(ear))
        used.update(ear)
        covered.update(G.arcs[b][1] for b in ear)
    return EarDecomposition(start, tuple(ears))


def validate_ear_decomposition(G: Digraph, ed: EarDecomposition) -> bool:
    flat = [a for ear in ed.ears for a in ear]
    if sorted(flat) != list(range(G.m)) or not 0 <= ed.start < G.n:
        return False
    if not ed.ears:
        return G.n == 1
    covered = {ed.start}
    for idx, ear in enumerate(ed.ears):
        if not ear:
            return False
        verts = [G.arcs[ear[0]][0]]
        for a in ear:
            t, h = G.arcs[a]
            if t != verts[-1]:
                return False
            verts.append(h)
        inner = verts[1:-1]
        if verts[0] not in covered or verts[-1] not in covered:
            return False
        if idx == 0 and (verts[0] != ed.start or verts[-1] != ed.start):
            return False
        if len(set(inner)) != len(inner) or covered & set(inner):
            return False
        covered.update(verts)
    return covered == set(range(G.n))


# spanning trees and network matrices


def _tree_structure(G: Digraph, T: SpanningTree):
    """Parent arc, parent vertex and depth of every vertex, rooted at 0."""
    if len(T.arcs) != G.n - 1 or len(set(T.arcs)) != len(T.arcs):
        raise InvalidTree("a spanning tree has exactly n-1 distinct arcs")
    if any(not 0 <= a < G.m for a in T.arcs):
        raise InvalidTree("tree arc index out of range")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for a in T.arcs:
        t, h = G.arcs[a]
        adj[t].append((h, a))
        adj[h].append((t, a))
    parent = [-1] * G.n
    parc = [-1] * G.n
    depth = [0] * G.n
    seen = {0}
    todo = deque([0])
    while todo:
        u = todo.popleft()
        for w, a in adj[u]:
            if w not in seen:
                seen.add(w)
                parent[w], parc[w], depth[w] = u, a, depth[u] + 1
                todo.append(w)
    if len(seen) != G.n:
        raise InvalidTree("tree arcs do not connect every vertex")
    return parent, parc, depth


def network_matrix(G: Digraph, T: SpanningTree) -> Mat:
    """``(n-1) x m`` matrix whose column ``j`` walks the tree path of arc ``j``.

    A tree arc used along its orientation contributes ``+1``, against it ``-1``.

    Raises:
        InvalidTree: if ``T`` is not a spanning tree of ``G``.
    """
    parent, parc, depth = _tree_structure(G, T)
    row_of = {a: r for r, a in enumerate(T.arcs)}
    cols = []
    for t, h in G.arcs:
        col = [ZERO] * (G.n - 1)
        u, w = t, h
        while u != w:
            if depth[u] >= depth[w]:
                a = parc[u]
                # walking from u up to its parent
                col[row_of[a]] += ONE if G.arcs[a][0] == u else -ONE
                u = parent[u]
            else:
                a = parc[w]
                # walking down from parent[w] to w
                col[row_of[a]] += ONE if G.arcs[a][1] == w else -ONE
                w = parent[w]
        cols.append(col)
    return Mat.from_columns(cols, G.n - 1)


def spanning_trees(G: Digraph) -> Iterable[SpanningTree]:
    """All spanning trees in lexicographic order of arc indices (brute force)."""
    for combo in combinations(range(G.m), G.n - 1):
        T = SpanningTree(combo)
        try:
            _tree_structure(G, T)
        except InvalidTree:
            continue
        yield T


def random_spanning_tree(G: Digraph, rng: random.Random) -> SpanningTree:
    """Random spanning tree from a shuffled Kruskal pass."""
    order = list(range(G.m))
    rng.shuffle(order)
    comp = list(range(G.n))

    def find(x: int) -> int:
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    chosen = []
    for a in order:
        t, h = G.arcs[a]
        rt, rh = find(t), find(h)
        if rt != rh:
            comp[rt] = rh
            chosen.append(a)
    if len(chosen) != G.n - 1:
        raise NotConnected("underlying undirected graph is disconnected")
    return SpanningTree(chosen)


def tree_change_witness(G: Digraph, T: SpanningTree, T2: SpanningTree) -> EquivWitness:
    """Witness mapping the network matrix for ``T`` onto the one for ``T2``.

    The basis consists of the ``T``-matrix columns of the arcs of ``T2``.
    """
    M = network_matrix(G, T)
    w = EquivWitness(M.select_columns(T2.arcs), range(G.m), (ONE,) * G.m)
    assert apply_equiv(M, w) == network_matrix(G, T2)
    return w


def verify_sign_is_network_matrix(G: Digraph, M: Mat) -> SpanningTree | None:
    """A spanning tree whose network matrix equals ``M`` up to row and column order."""
    if M.nrows != G.n - 1 or M.ncols != G.m:
        return None
    if any(v not in (-1, 0, 1) for r in M.rows for v in r):
        return None
    target = sorted(M.columns())
    for T in spanning_trees(G):
        N = network_matrix(G, T)
        for perm in permutations(range(G.n - 1)):
            if sorted(N.select_rows(perm).columns()) == target:
                return T
    return None


def is_minimally_strongly_connected(G: Digraph) -> bool:
    if not is_strongly_connected(G):
        return False
    return not any(is_strongly_connected(G.without_arc(a)) for a in range(G.m))


# generators


def gen_min_sc_2n_minus_3(
    n: int,
    circuits: int,
    tree_sizes: Sequence[int] = (),
    attach: Sequence[int] | None = None,
    parents: Sequence[Sequence[int]] | None = None,
    rng: random.Random | None = None,
) -> Digraph:
    """Minimally strongly connected digraph with ``2n-3`` arcs.

    Vertex 0 and 1 carry the shared arc ``0 -> 1``; vertices ``2..circuits+1``
    close one 3-circuit each. Each bi-directed tree hangs from the circuit
    vertex ``attach[t]``. ``parents[t][k]`` is the parent of the ``k``-th tree
    vertex: ``-1`` for the attachment vertex, else an earlier tree vertex.
    Missing shapes are drawn from ``rng`` or default to paths.

    Raises:
        InconsistentParameters: if the counts do not add up to ``n``.
    """
    if circuits < 1 or any(s < 1 for s in tree_sizes):
        raise InconsistentParameters("need at least one circuit and non-empty trees")
    if n != 2 + circuits + sum(tree_sizes):
        raise InconsistentParameters("circuit and tree vertices must add up to n")
    core = 2 + circuits
    if attach is None:
        attach = [rng.randrange(core) if rng else 0 for _ in tree_sizes]
    if len(attach) != len(tree_sizes) or any(not 0 <= a < core for a in attach):
        raise InconsistentParameters("each tree needs one circuit vertex to attach to")
    arcs = [(0, 1)]
    for i in range(circuits):
        arcs += [(1, 2 + i), (2 + i, 0)]
    nxt = core
    for t, size in enumerate(tree_sizes):
        if parents is not None:
            shape = list(parents[t])
        elif rng is not None:
            shape = [rng.randrange(-1, k) for k in range(size)]
        else:
            shape = [k - 1 for k in range(size)]
        if len(shape) != size or any(not -1 <= p < k for k, p in enumerate(shape)):
            raise InconsistentParameters("tree parents must point to earlier vertices")
        ids = list(range(nxt, nxt + size))
        for k, p in enumerate(shape):
            up = attach[t] if p == -1 else ids[p]
            arcs += [(up, ids[k]), (ids[k], up)]
        nxt += size
    G = Digraph(n, tuple(arcs))
    assert G.m == 2 * n - 3 and is_minimally_strongly_connected(G)
    return G


def gen_min_sc_n_plus_1(
    n: int, overlap: int, first_private: int | None = None, rng: random.Random | None = None
) -> Digraph:
    """Two circuits sharing a directed path of ``overlap`` arcs; ``n+1`` arcs.

    With ``overlap = 0`` the circuits share one vertex. ``first_private`` is
    the number of vertices only on the first circuit. Each circuit needs a
    private vertex, otherwise its closing arc is a chord of the other one.

    Raises:
        InconsistentParameters: unless ``n >= 3`` and ``0 <= overlap <= n-3``.
    """
    if n < 3 or not 0 <= overlap <= n - 3:
        raise InconsistentParameters("need n >= 3 and 0 <= overlap <= n-3")
    rest = n - overlap - 1
    if first_private is None:
        first_private = rng.randint(1, rest - 1) if rng else rest // 2
    if not 1 <= first_private <= rest - 1:
        raise InconsistentParameters("each circuit needs at least one private vertex")
    path = list(range(overlap + 1))
    arcs = [(path[i], path[i + 1]) for i in range(overlap)]
    nxt = overlap + 1
    for count in (first_private, rest - first_private):
        chain = [path[-1]] + list(range(nxt, nxt + count)) + [path[0]]
        arcs += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
        nxt += count
    G = Digraph(n, tuple(arcs))
    assert G.m == n + 1 and is_minimally_strongly_connected(G)
    return G


# text formats


def parse_digraph(text: str) -> Digraph:
    """Parse ``n m`` followed by ``m`` lines of ``tail head`` (0-indexed)."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        if not lines or len(lines[0]) != 2:
            raise ParseError("header must be 'n m'")
        n, m = (int(v) for v in lines[0])
        if len(lines) != m + 1 or any(len(ln) != 2 for ln in lines[1:]):
            raise ParseError(f"expected {m} arc lines of two integers")
        return Digraph(n, tuple((int(t), int(h)) for t, h in lines[1:]))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_digraph(G: Digraph) -> str:
    return "\n".join([f"{G.n} {G.m}"] + [f"{t} {h}" for t, h in G.arcs]) + "\n"


def parse_tree(text: str) -> SpanningTree:
    try:
        return SpanningTree(int(v) for v in text.split())
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_tree(T: SpanningTree) -> str:
    return " ".join(str(a) for a in T.arcs) + "\n"
