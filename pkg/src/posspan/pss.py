"""Positive spanning, acyclicity and circuit certificates.

The central routine is :func:`decompose_in_ina`, which brings a nonzero
matrix into one of two exhaustive block forms by repeatedly extracting a
circuit (a minimal positively dependent set of columns), putting it in
``[I -1]`` form and recursing on the rows it does not cover:

* ``[I_n | N | X]`` with ``N`` a negative row echelon matrix (NEM): the
  input positively spans ``Q^n``;
* ``[I_l N X; 0 0 A]`` with ``A`` acyclic: it does not.

All certificates are exact and carry a ``verify`` method.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence, Union

from . import simplex
from .errors import InvalidCertificate, IsAcyclic, NotNem, NotPss, ZeroMatrix
from .exact import (
    ONE,
    ZERO,
    EquivWitness,
    Mat,
    apply_equiv,
    complete_basis,
    dot,
    hstack,
    inverse,
    nullspace,
    rank,
    rref,
    vec,
)


def _min_one(x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if not x:
        return ()
    lo = min(x)
    return tuple(v / lo for v in x)


def primitive(y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale by a positive factor to coprime integers. Signs are kept."""
    den = lcm(*(v.denominator for v in y)) if y else 1
    ints = [int(v * den) for v in y]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return tuple(Fraction(v // g) for v in ints)


# certificate types


@dataclass(frozen=True)
class PositiveCombination:
    """``x >= 1`` with ``D x = 0`` (so ``D`` positively spans its span)."""

    x: tuple[Fraction, ...]
    kind = "positive-combination"

    def verify(self, D: Mat) -> bool:
        return (
            len(self.x) == D.ncols
            and all(v >= 1 for v in self.x)
            and min(self.x, default=ONE) == 1
            and all(v == 0 for v in D @ self.x)
        )


@dataclass(frozen=True)
class SeparatingVector:
    """``y`` with ``y^T D >= 0`` and ``y^T D != 0``."""

    y: tuple[Fraction, ...]
    kind = "separating-vector"

    def verify(self, D: Mat) -> bool:
        if len(self.y) != D.nrows:
            return False
        row = self.y @ D
        return all(v >= 0 for v in row) and any(row)


@dataclass(frozen=True)
class LeftNullVector:
    """Nonzero ``y`` with ``y^T D = 0``: ``D`` does not span ``Q^n``."""

    y: tuple[Fraction, ...]
    kind = "left-null-vector"

    def verify(self, D: Mat) -> bool:
        return len(self.y) == D.nrows and any(self.y) and not any(self.y @ D)


@dataclass(frozen=True)
class GordanVector:
    """``y`` with ``y^T A >= 1`` componentwise: ``A`` is acyclic."""

    y: tuple[Fraction, ...]
    kind = "gordan-vector"

    def verify(self, A: Mat) -> bool:
        return len(self.y) == A.nrows and any(self.y) and all(v >= 1 for v in self.y @ A)


@dataclass(frozen=True)
class NonnegativeNullVector:
    """Nonzero ``x >= 0`` with ``A x = 0``: ``A`` is not acyclic."""

    x: tuple[Fraction, ...]
    kind = "nonnegative-null-vector"

    def verify(self, A: Mat) -> bool:
        return (
            len(self.x) == A.ncols
            and all(v >= 0 for v in self.x)
            and any(self.x)
            and not any(A @ self.x)
        )


Certificate = Union[
    PositiveCombination, SeparatingVector, LeftNullVector, GordanVector, NonnegativeNullVector
]


@dataclass(frozen=True)
class Decision:
    verdict: bool
    certificate: Certificate


@dataclass(frozen=True)
class PssResult:
    verdict: bool
    certificate: Certificate
    rank: int
    combination: PositiveCombination | None = None


# theorems of the alternative


def stiemke_alternative(D: Mat) -> PositiveCombination | SeparatingVector:
    """Either ``x >= 1`` with ``Dx = 0`` or ``y`` with ``y^T D >= 0, != 0``.

    Uses the substitution ``x = 1 + z``, ``z >= 0``; the Farkas vector of the
    infeasible case satisfies ``y^T D 1 > 0``.
    """
    ones = (ONE,) * D.ncols
    res = simplex.solve(D, tuple(-v for v in D @ ones))
    if res.feasible:
        return PositiveCombination(_min_one(tuple(1 + z for z in res.x)))
    return SeparatingVector(primitive(res.y))


def gordan_alternative(A: Mat) -> GordanVector | NonnegativeNullVector:
    """Either ``y`` with ``y^T A >= 1`` or nonzero ``x >= 0`` with ``Ax = 0``.

    The null vector comes from a basic feasible solution of
    ``Ax = 0, 1^T x = 1, x >= 0`` and therefore has minimal support.
    """
    n, m = A.shape
    if m == 0:
        return GordanVector(tuple(ONE if i == 0 else ZERO for i in range(n)))
    aug = Mat(A.rows + ((ONE,) * m,), m)
    res = simplex.solve(aug, (ZERO,) * n + (ONE,))
    if res.feasible:
        return NonnegativeNullVector(primitive(res.x))
    *u, t = res.y
    # u^T A + t 1^T >= 0 with t < 0
    return GordanVector(tuple(v / -t for v in u))


def is_pss(D: Mat, full_space: bool = True) -> PssResult:
    """Decide whether ``D`` positively spans ``Q^n`` (or its own span).

    With ``full_space=False`` the question is span-relative. A rank
    deficient matrix that positively spans its span is reported as not
    spanning ``Q^n`` with a :class:`LeftNullVector`.
    """
    alt = stiemke_alternative(D)
    r = rank(D)
    if isinstance(alt, SeparatingVector):
        return PssResult(False, alt, r)
    if full_space and r < D.nrows:
        y = primitive(nullspace(D.T)[0])
        return PssResult(False, LeftNullVector(y), r, alt)
    return PssResult(True, alt, r, alt)


def is_acyclic(A: Mat) -> Decision:
    alt = gordan_alternative(A)
    return Decision(isinstance(alt, GordanVector), alt)


def acyclic_positive_form(A: Mat, y: GordanVector | Sequence) -> EquivWitness:
    """Witness whose basis change turns ``A`` into a strictly positive matrix.

    The inverse basis has rows ``y^T + eta e_i^T``; ``eta`` starts from a
    safe bound and is halved until positivity and nonsingularity hold.
    """
    g = y if isinstance(y, GordanVector) else GordanVector(vec(y))
    if not g.verify(A):
        raise InvalidCertificate("vector does not certify acyclicity")
    n, m = A.shape
    if m == 0:
        return EquivWitness.identity(n, 0)
    lo = min(g.y @ A)
    spread = max(sum(abs(a) for a in A.col(j)) for j in range(m))
    eta = lo / 2 / (spread + 1)
    while True:
        binv = Mat(
            [[g.y[j] + (eta if i == j else ZERO) for j in range(n)] for i in range(n)], n
        )
        if eta + sum(g.y) != 0 and all(v > 0 for r in (binv @ A).rows for v in r):
            return EquivWitness.from_inverse(binv, range(m), (ONE,) * m)
        eta /= 2


# circuits


def _reduce_support(D: Mat, x: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """Shrink the support of a nonnegative null vector until it is minimal."""
    while True:
        S = [j for j, v in enumerate(x) if v]
        sub = D.select_columns(S)
        if rank(sub) == len(S) - 1:
            return x
        xs = [x[j] for j in S]
        y = next(
            v for v in nullspace(sub)
            if rank(Mat.from_columns([xs, v])) == 2
        )
        if all(v >= 0 for v in y):
            y = tuple(-v for v in y)
        sigma = max(-yi / xi for xi, yi in zip(xs, y) if yi < 0)
        z = [sigma * xi + yi for xi, yi in zip(xs, y)]
        full = [ZERO] * D.ncols
        for j, v in zip(S, z):
            full[j] = v
        x = tuple(full)


def find_circuit_with_combination(D: Mat) -> tuple[tuple[int, ...], tuple[Fraction, ...]] | None:
    """Minimal positively dependent column set and its positive weights."""
    alt = gordan_alternative(D)
    if isinstance(alt, GordanVector):
        return None
    x = _reduce_support(D, alt.x)
    S = tuple(j for j, v in enumerate(x) if v)
    return S, primitive(tuple(x[j] for j in S))


def find_circuit(D: Mat) -> tuple[int, ...] | None:
    """Inclusion-minimal set of columns admitting a positive null combination.

    ``None`` exactly when ``D`` is acyclic. A zero column is a circuit of
    size one.
    """
    found = find_circuit_with_combination(D)
    return None if found is None else found[0]


def is_circuit(D: Mat) -> bool:
    """Positively spans its span and every proper column subset is acyclic.

    Equivalent to: a positive null vector exists and ``m = rank + 1``.
    """
    if D.ncols == 0:
        return False
    return isinstance(stiemke_alternative(D), PositiveCombination) and D.ncols == rank(D) + 1


def _circuit_basis(D: Mat, S: Sequence[int], x: Sequence[Fraction]) -> tuple[Mat, int]:
    """Inverse basis putting circuit ``S`` (weights ``x``) in ``[I -1; 0 0]`` form."""
    ell = len(S) - 1
    cols = [tuple(x[i] * v for v in D.col(S[i])) for i in range(ell)]
    B = Mat.from_columns(complete_basis(cols, D.nrows))
    return inverse(B), ell


@dataclass(frozen=True)
class ZeroColumn:
    index: int


@dataclass(frozen=True)
class CircuitBlock:
    """``witness`` maps ``M`` to ``[I_l -1_l X; 0 0 Y]``."""

    ell: int
    witness: EquivWitness
    canonical: Mat

    @property
    def X(self) -> Mat:
        return self.canonical.block(range(self.ell), range(self.ell + 1, self.canonical.ncols))

    @property
    def Y(self) -> Mat:
        c = self.canonical
        return c.block(range(self.ell, c.nrows), range(self.ell + 1, c.ncols))


def non_acyclic_witness(M: Mat) -> ZeroColumn | CircuitBlock:
    for j in range(M.ncols):
        if M.column_is_zero(j):
            return ZeroColumn(j)
    found = find_circuit_with_combination(M)
    if found is None:
        raise IsAcyclic("matrix is acyclic")
    S, x = found
    binv, ell = _circuit_basis(M, S, x)
    rest = [j for j in range(M.ncols) if j not in S]
    w = EquivWitness.from_inverse(binv, list(S) + rest, list(x) + [ONE] * len(rest))
    return CircuitBlock(ell, w, apply_equiv(M, w))


# negative row echelon matrices


@dataclass(frozen=True)
class NemShape:
    """Column count and 1-based breakpoints ``z_0 = 1 < z_1 < ...``."""

    s: int
    breakpoints: tuple[int, ...]


def validate_nem(N: Mat) -> NemShape | None:
    n, s = N.shape
    if not 1 <= s <= n:
        return None
    z = [1]
    for j in range(s - 1):
        i = z[-1]
        while i <= n and N[i - 1, j] == -1:
            i += 1
        if i == z[-1] or any(N[r - 1, j] for r in range(i, n + 1)):
            return None
        z.append(i)
    if z[-1] > n or any(N[r - 1, s - 1] != -1 for r in range(z[-1], n + 1)):
        return None
    return NemShape(s, tuple(z))


def nem_combination(N: Mat) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Weights ``c > 0`` with ``N c < 0``, built by the backward recursion.

    Returns ``(c, w)`` with ``w = N c`` strictly negative.
    """
    if validate_nem(N) is None:
        raise NotNem("matrix is not a negative row echelon matrix")
    n, s = N.shape
    cols = N.columns()
    c = [ZERO] * s
    c[s - 1] = ONE
    w = cols[s - 1]
    for i in range(1, s):
        f = 2 * max(abs(v) for v in w)
        c[s - 1 - i] = f
        w = tuple(a + f * b for a, b in zip(w, cols[s - 1 - i]))
    assert all(v < 0 for v in w)
    return tuple(c), w


def nem_positive_combination(N: Mat) -> PositiveCombination:
    """Positive combination certifying that ``[I_n N]`` positively spans."""
    c, w = nem_combination(N)
    return PositiveCombination(_min_one(tuple(-v for v in w) + c))


# IN / INA decomposition


@dataclass(frozen=True)
class InForm:
    """``witness`` maps the input to ``[I_n | N | X]`` with ``N`` a NEM."""

    ell: int
    k: int
    N: Mat
    X: Mat
    nem: NemShape
    witness: EquivWitness
    canonical: Mat

    def verify(self, M: Mat) -> bool:
        n = M.nrows
        c = self.canonical
        return (
            self.ell == n
            and self.k >= 1
            and apply_equiv(M, self.witness) == c
            and c.block(range(n), range(n)) == Mat.identity(n)
            and c.block(range(n), range(n, n + self.k)) == self.N
            and c.block(range(n), range(n + self.k, c.ncols)) == self.X
            and validate_nem(self.N) == self.nem
        )


@dataclass(frozen=True)
class InaForm:
    """``witness`` maps the input to ``[I_l N X; 0 0 [0 A]]`` with ``A`` acyclic.

    ``zero_tail`` counts leading tail columns whose lower part is zero; they
    sit between ``N`` and the columns that carry ``A``.
    """

    ell: int
    k: int
    N: Mat
    X: Mat
    A: Mat
    zero_tail: int
    acyclic_witness: GordanVector
    witness: EquivWitness
    canonical: Mat

    @property
    def nem(self) -> NemShape | None:
        return validate_nem(self.N) if self.k else None

    def separating_vector(self) -> tuple[Fraction, ...]:
        """``y`` with ``y^T canonical >= 0`` built from the acyclic block."""
        return (ZERO,) * self.ell + self.acyclic_witness.y

    def verify(self, M: Mat) -> bool:
        n = M.nrows
        c = self.canonical
        l, k, z = self.ell, self.k, self.zero_tail
        lower = range(l, n)
        return (
            0 <= k <= l < n
            and apply_equiv(M, self.witness) == c
            and c.block(range(l), range(l)) == Mat.identity(l)
            and c.block(range(l), range(l, l + k)) == self.N
            and c.block(range(l), range(l + k, c.ncols)) == self.X
            and c.block(lower, range(l + k + z)).is_zero()
            and c.block(lower, range(l + k + z, c.ncols)) == self.A
            and (k == 0 or validate_nem(self.N) is not None)
            and self.acyclic_witness.verify(self.A)
        )


@dataclass
class _Level:
    kind: str
    binv: Mat
    order: list[int]
    scale: list[Fraction]
    ell: int
    k: int
    zero_tail: int = 0
    gordan: tuple[Fraction, ...] | None = None


def _block_diag(a: Mat, b: Mat) -> Mat:
    top = hstack(a, Mat.zeros(a.nrows, b.ncols))
    bottom = hstack(Mat.zeros(b.nrows, a.ncols), b)
    return Mat(top.rows + bottom.rows, a.ncols + b.ncols)


def _decompose(M: Mat) -> _Level:
    n, m = M.shape
    nonzero = [j for j in range(m) if not M.column_is_zero(j)]
    zero = [j for j in range(m) if M.column_is_zero(j)]
    if not nonzero:
        e1 = tuple(ONE if i == 0 else ZERO for i in range(n))
        return _Level("INA", Mat.identity(n), zero, [ONE] * m, 0, 0, len(zero), e1)
    W = M.select_columns(nonzero)
    found = find_circuit_with_combination(W)
    if found is None:
        g = gordan_alternative(W)
        return _Level("INA", Mat.identity(n), zero + nonzero, [ONE] * m, 0, 0, len(zero), g.y)

    local, x = found
    S = [nonzero[j] for j in local]
    binv1, ell1 = _circuit_basis(M, S, x)
    rest = [j for j in range(m) if j not in S]
    if ell1 == n:
        return _Level("IN", binv1, S[:-1] + [S[-1]] + rest, list(x) + [ONE] * len(rest), n, 1)

    M1 = binv1 @ M
    sub = _decompose(M1.block(range(ell1, n), rest))
    binv2 = _block_diag(Mat.identity(ell1), sub.binv) @ binv1
    sub_cols = [rest[p] for p in sub.order]
    lb = sub.ell
    # clear the entries above the residual identity columns
    E = (binv2 @ M.select_columns(sub_cols[:lb])).scale_columns(sub.scale[:lb])
    elim = [
        [(ONE if i == j else ZERO) - (E[i, j - ell1] if i < ell1 and ell1 <= j < ell1 + lb else ZERO)
         for j in range(n)]
        for i in range(n)
    ]
    binv3 = Mat(elim, n) @ binv2
    order = S[:-1] + sub_cols[:lb] + [S[-1]] + sub_cols[lb:]
    scale = list(x[:-1]) + sub.scale[:lb] + [x[-1]] + sub.scale[lb:]
    if sub.kind == "IN":
        return _Level("IN", binv3, order, scale, n, sub.k + 1)
    return _Level("INA", binv3, order, scale, ell1 + lb, sub.k + 1, sub.zero_tail, sub.gordan)


def decompose_in_ina(M: Mat) -> InForm | InaForm:
    """Structural equivalence to an IN form (PSS of ``Q^n``) or an INA form.

    The result is verified before it is returned.
    """
    if M.is_zero():
        raise ZeroMatrix("cannot decompose the zero matrix")
    n, m = M.shape
    lev = _decompose(M)
    w = EquivWitness.from_inverse(lev.binv, lev.order, lev.scale)
    c = apply_equiv(M, w)
    l, k = lev.ell, lev.k
    if lev.kind == "IN":
        N = c.block(range(n), range(n, n + k))
        form = InForm(l, k, N, c.block(range(n), range(n + k, m)), validate_nem(N), w, c)
    else:
        t0 = l + k + lev.zero_tail
        form = InaForm(
            l,
            k,
            c.block(range(l), range(l, l + k)),
            c.block(range(l), range(l + k, m)),
            c.block(range(l, n), range(t0, m)),
            lev.zero_tail,
            GordanVector(lev.gordan),
            w,
            c,
        )
    if not form.verify(M):
        raise AssertionError("decomposition failed self-verification")
    return form


@dataclass(frozen=True)
class CanonicalPss:
    """``witness`` maps ``D`` to ``[I_l v_1 ... v_r; 0 ... 0]`` with ``sum v_i = -1``."""

    ell: int
    vectors: tuple[tuple[Fraction, ...], ...]
    witness: EquivWitness
    canonical: Mat


def canonical_pss_form(D: Mat) -> CanonicalPss:
    alt = stiemke_alternative(D)
    if not isinstance(alt, PositiveCombination):
        raise NotPss("matrix does not positively span its span")
    x = alt.x
    _, pivots, _ = rref(D)
    ell = len(pivots)
    cols = [tuple(x[p] * v for v in D.col(p)) for p in pivots]
    B = Mat.from_columns(complete_basis(cols, D.nrows))
    others = [j for j in range(D.ncols) if j not in pivots]
    perm = pivots + others
    w = EquivWitness(B, perm, [x[j] for j in perm])
    c = apply_equiv(D, w)
    vectors = tuple(c.col(j)[:ell] for j in range(ell, D.ncols))
    assert all(sum(v[i] for v in vectors) == -1 for i in range(ell))
    return CanonicalPss(ell, vectors, w, c)
