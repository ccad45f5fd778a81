"""Reference matrices and digraphs used by tests and ``posspan selfcheck``.

Arc lists are 0-indexed; the comments give the 1-based arc labels used when
the examples were drawn.
"""

from __future__ import annotations

from .digraph import Digraph, SpanningTree
from .exact import Mat

# Strongly connected digraph on 5 vertices; tree = arcs 1..4.
SC_GRAPH = Digraph(
    5,
    (
        (4, 0),  # 1
        (0, 1),  # 2
        (1, 3),  # 3
        (2, 1),  # 4
        (3, 4),  # 5
        (3, 2),  # 6
    ),
)
SC_TREE = SpanningTree((0, 1, 2, 3))
SC_NETMAT = Mat(
    [
        [1, 0, 0, 0, -1, 0],
        [0, 1, 0, 0, -1, 0],
        [0, 0, 1, 0, -1, -1],
        [0, 0, 0, 1, 0, -1],
    ]
)
SC_COMBINATION = (1, 1, 2, 1, 1, 1)

# Not strongly connected digraph on 7 vertices; tree = arcs 1..6.
NSC_GRAPH = Digraph(
    7,
    (
        (4, 6),  # 1
        (2, 1),  # 2
        (0, 1),  # 3
        (2, 3),  # 4
        (3, 4),  # 5
        (5, 0),  # 6
        (6, 5),  # 7
        (1, 6),  # 8
        (3, 1),  # 9
        (4, 2),  # 10
    ),
)
NSC_TREE = SpanningTree((0, 1, 2, 3, 4, 5))
NSC_NETMAT = Mat(
    [
        [1, 0, 0, 0, 0, 0, -1, 1, 0, 0],
        [0, 1, 0, 0, 0, 0, 1, -1, 1, 0],
        [0, 0, 1, 0, 0, 0, -1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0, -1, 1, -1, -1],
        [0, 0, 0, 0, 1, 0, -1, 1, 0, -1],
        [0, 0, 0, 0, 0, 1, -1, 0, 0, 0],
    ]
)
NSC_SEPARATOR = (1, 1, 0, 0, 0, 0)
# tree arcs crossed by the drawn cut (0-based)
NSC_CUT_TREE_ARCS = frozenset({0, 1})

# Strongly connected digraph with a 4-arc circuit and a 3-arc ear.
EAR_GRAPH = Digraph(6, ((0, 1), (1, 2), (2, 3), (3, 0), (1, 5), (5, 4), (4, 2)))

# Positive basis of Q^5 of size 8 that is also a network matrix.
D58 = Mat(
    [
        [1, 0, 0, 0, 0, -1, 0, 0],
        [0, 1, 0, 0, 0, -1, -1, 1],
        [0, 0, 1, 0, 0, -1, -1, 1],
        [0, 0, 0, 1, 0, 0, -1, 0],
        [0, 0, 0, 0, 1, 0, 0, -1],
    ]
)

# Minimally strongly connected digraph on 9 vertices and 15 arcs:
# u=0, v=1, w1..w3=2..4, tree vertices t1..t4=5..8.
MIN_SC_9 = Digraph(
    9,
    (
        (0, 1),
        (1, 2), (2, 0),
        (1, 3), (3, 0),
        (1, 4), (4, 0),
        (0, 5), (5, 0),
        (5, 6), (6, 5),
        (5, 7), (7, 5),
        (1, 8), (8, 1),
    ),
)

# 6x4 negative row echelon matrix with free entries set to zero.
NEM_6x4 = Mat(
    [
        [-1, 0, 0, 0],
        [-1, 0, 0, 0],
        [0, -1, 0, 0],
        [0, -1, 0, 0],
        [0, 0, -1, 0],
        [0, 0, 0, -1],
    ]
)
NEM_6x4_BREAKPOINTS = (1, 3, 5, 6)

MATRIX_FILES = {"m1.mat": SC_NETMAT, "m2.mat": NSC_NETMAT, "d58.mat": D58}
DIGRAPH_FILES = {
    "sc5.dg": SC_GRAPH,
    "nsc7.dg": NSC_GRAPH,
    "ears6.dg": EAR_GRAPH,
    "min9.dg": MIN_SC_9,
}
TREE_FILES = {"sc5.tree": SC_TREE, "nsc7.tree": NSC_TREE}
