"""Positive bases: critical vectors, critical structure and near-extreme sizes.

A positive basis is a positive spanning set of its span with no removable
column. Two exact deciders are provided and cross-checked:

* the removal oracle, which drops each column in turn and re-tests positive
  spanning and rank;
* the critical-structure test, which reads the blocks of the IN form
  ``[I_n N]`` off the NEM breakpoints and checks that every free block is a
  critical matrix. It is only available when every block has at most two
  rows.

Cone tags and block indices in reports are 1-based; everything else is
0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import (
    BadDimensions,
    BadParameters,
    DimensionTooSmall,
    MalformedInForm,
    NotPositiveBasis,
    UnsupportedDimension,
)
from .exact import (
    ONE,
    ZERO,
    EquivWitness,
    Mat,
    hstack,
    inverse,
    rank,
    rref,
    vec,
    verify_equiv,
)
from .pss import (
    InForm,
    PositiveCombination,
    SeparatingVector,
    _block_diag,
    decompose_in_ina,
    is_pss,
    stiemke_alternative,
    validate_nem,
)

# critical vectors


@dataclass(frozen=True)
class CriticalVerdict:
    """``cone`` is ``(i,)`` for ``K_i`` or ``(i, j)`` for ``K_{i,j}``, 1-based."""

    is_critical: bool
    cone: tuple[int, ...] | None

    @property
    def label(self) -> str:
        return "none" if self.cone is None else "K" + ",".join(map(str, self.cone))


def is_critical_vector(v: Sequence) -> CriticalVerdict:
    """Critical iff the maximum is zero, or positive and attained twice.

    Raises:
        DimensionTooSmall: for vectors of length below 2.
    """
    v = vec(v)
    if len(v) < 2:
        raise DimensionTooSmall("critical vectors need n >= 2")
    top = max(v)
    hits = [i + 1 for i, a in enumerate(v) if a == top]
    if top < 0:
        return CriticalVerdict(False, None)
    if top == 0:
        return CriticalVerdict(True, (hits[0],))
    if len(hits) >= 2:
        return CriticalVerdict(True, (hits[0], hits[1]))
    return CriticalVerdict(False, None)


def _simplex_frame(n: int) -> list[tuple[Fraction, ...]]:
    return Mat.identity(n).columns() + [(-ONE,) * n]


def replacement_oracle(v: Sequence) -> bool:
    """True iff no column of ``[I_n -1_n]`` can be swapped for ``v`` keeping a PSS."""
    v = vec(v)
    frame = _simplex_frame(len(v))
    for k in range(len(frame)):
        cols = frame[:k] + [v] + frame[k + 1 :]
        if is_pss(Mat.from_columns(cols, len(v))).verdict:
            return False
    return True


# critical structure


@dataclass(frozen=True)
class CriticalStructure:
    """Row blocks of ``[I_n N]`` induced by the NEM breakpoints.

    ``blocks[i]`` holds rows ``row_offsets[i] .. + block_sizes[i] - 1`` of NEM
    columns ``i+1 .. s-1`` (0-based).
    """

    block_sizes: tuple[int, ...]
    blocks: tuple[Mat, ...]
    row_offsets: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.block_sizes)

    @property
    def s(self) -> int:
        return len(self.block_sizes)

    def reassemble(self) -> Mat:
        n, s = self.n, self.s
        N = [[ZERO] * s for _ in range(n)]
        for i, (size, off) in enumerate(zip(self.block_sizes, self.row_offsets)):
            for r in range(size):
                N[off + r][i] = -ONE
                if i < s - 1:
                    for c in range(s - 1 - i):
                        N[off + r][i + 1 + c] = self.blocks[i][r, c]
        return hstack(Mat.identity(n), Mat(N, s))


def critical_structure(form: InForm) -> CriticalStructure:
    """Critical structure of an IN form ``[I_n N]`` without free tail.

    Raises:
        MalformedInForm: unless the form is ``[I_n N]`` with ``N`` a NEM.
    """
    n = form.canonical.nrows
    if form.ell != n or form.k < 1 or form.X.ncols or validate_nem(form.N) is None:
        raise MalformedInForm("critical structure needs [I_n N] with N a NEM")
    z = list(validate_nem(form.N).breakpoints) + [n + 1]
    s = form.k
    sizes = tuple(z[i + 1] - z[i] for i in range(s))
    offsets = tuple(zi - 1 for zi in z[:s])
    blocks = tuple(
        form.N.block(range(offsets[i], offsets[i] + sizes[i]), range(i + 1, s))
        for i in range(s - 1)
    )
    cs = CriticalStructure(sizes, blocks, offsets)
    assert cs.reassemble() == form.canonical
    return cs


def two_row_cone(X: Mat) -> str | None:
    """Which of ``K1``, ``K2``, ``K12`` in ``Q^2`` contains every column (first match)."""
    cols = X.columns()
    if all(a == 0 and b <= 0 for a, b in cols):
        return "K1"
    if all(b == 0 and a <= 0 for a, b in cols):
        return "K2"
    if all(a == b and a >= 0 for a, b in cols):
        return "K12"
    return None


def is_critical_matrix_low_dim(X: Mat) -> bool:
    """Criticality of a block with one or two rows.

    Raises:
        UnsupportedDimension: for any other row count.
    """
    if X.nrows == 1:
        return X.is_zero()
    if X.nrows == 2:
        return two_row_cone(X) is not None
    raise UnsupportedDimension("criticality is only decided for 1 or 2 rows")


# recognition


def removal_oracle(D: Mat) -> tuple[bool, int | None, PositiveCombination | None]:
    """Decide positive-basis status by deleting each column in turn.

    Returns ``(verdict, removable, certificate)``; for a PSS that is not a
    basis, ``certificate`` shows that ``D`` without column ``removable`` is
    still a PSS of the same span. Non-PSS input yields ``(False, None, None)``.
    """
    if not isinstance(stiemke_alternative(D), PositiveCombination):
        return False, None, None
    r = rank(D)
    for j in range(D.ncols):
        rest = D.drop_column(j)
        alt = stiemke_alternative(rest)
        if isinstance(alt, PositiveCombination) and rank(rest) == r:
            return False, j, alt
    return True, None, None


@dataclass(frozen=True)
class PosBasisReport:
    verdict: bool
    method: str
    rank: int
    combination: PositiveCombination | None = None
    separating: SeparatingVector | None = None
    removable: int | None = None
    removal_certificate: PositiveCombination | None = None
    structure: CriticalStructure | None = None
    block_verdicts: tuple[bool, ...] = ()
    normalized: InForm | None = field(default=None, compare=False)

    def verify(self, D: Mat) -> bool:
        """Check the attached certificates (not the universal claim itself)."""
        if self.separating is not None:
            return not self.verdict and self.separating.verify(D)
        if self.combination is None or not self.combination.verify(D):
            return False
        if self.verdict:
            return self.removable is None
        rest = D.drop_column(self.removable)
        return self.removal_certificate.verify(rest) and rank(rest) == rank(D)


def span_coordinates(D: Mat) -> tuple[Mat, Mat, int]:
    """``(P, C, l)`` with ``D = C[:, :l] P`` and ``P`` of full row rank ``l``."""
    R, pivots, C = rref(D)
    ell = len(pivots)
    return R.select_rows(range(ell)), C, ell


def lift_witness(C: Mat, w: EquivWitness) -> EquivWitness:
    """Turn a witness for span coordinates into one for the original matrix."""
    n = C.nrows
    basis = C @ _block_diag(w.basis, Mat.identity(n - w.n))
    return EquivWitness(basis, w.perm, w.scale)


def is_positive_basis(D: Mat) -> PosBasisReport:
    """Decide whether ``D`` is a positive basis of its span.

    A non-PSS is rejected with a separating vector. Otherwise the IN form of
    the span coordinates is computed; a free tail means a removable column.
    Blocks of at most two rows are decided by cone membership, larger ones by
    the removal oracle. Every negative verdict names a removable column.
    """
    alt = stiemke_alternative(D)
    r = rank(D)
    if isinstance(alt, SeparatingVector):
        return PosBasisReport(False, "not-pss", r, separating=alt)
    if r == 0:
        if D.ncols == 0:
            return PosBasisReport(True, "removal-oracle", 0, alt)
        rest = D.drop_column(0)
        return PosBasisReport(
            False, "removal-oracle", 0, alt, removable=0,
            removal_certificate=stiemke_alternative(rest),
        )
    P, _, _ = span_coordinates(D)
    form = decompose_in_ina(P)
    assert isinstance(form, InForm)
    if form.X.ncols:
        j = form.witness.perm[form.ell + form.k]
        rest = D.drop_column(j)
        return PosBasisReport(
            False, "removal-oracle", r, alt, removable=j,
            removal_certificate=stiemke_alternative(rest),
        )
    cs = critical_structure(form)
    if max(cs.block_sizes) <= 2:
        verdicts = tuple(is_critical_matrix_low_dim(X) for X in cs.blocks)
        if all(verdicts):
            normalized, _ = normalize_two_row_blocks(form, cs)
            return PosBasisReport(
                True, "critical-structure", r, alt, structure=cs,
                block_verdicts=verdicts, normalized=normalized,
            )
        _, j, cert = removal_oracle(D)
        return PosBasisReport(
            False, "critical-structure", r, alt, removable=j, removal_certificate=cert,
            structure=cs, block_verdicts=verdicts,
        )
    ok, j, cert = removal_oracle(D)
    return PosBasisReport(ok, "removal-oracle", r, alt, removable=j,
                          removal_certificate=cert, structure=cs)


# equivalence moves on IN forms


def _transform(form: InForm, E: Mat, order: Sequence[int]) -> InForm:
    """Apply a row operation ``E`` and then the column order ``order``."""
    w = form.witness
    c = (E @ form.canonical).select_columns(order)
    nw = EquivWitness.from_inverse(
        E @ w.basis_inverse, [w.perm[j] for j in order], [w.scale[j] for j in order]
    )
    n, k = form.ell, form.k
    N = c.block(range(n), range(n, n + k))
    nem = validate_nem(N)
    if nem is None or c.block(range(n), range(n)) != Mat.identity(n):
        raise AssertionError("equivalence move left the IN shape")
    return InForm(n, k, N, c.block(range(n), range(n + k, c.ncols)), nem, nw, c)


def _row_swap_move(form: InForm, a: int, b: int) -> InForm:
    n = form.ell
    sigma = list(range(n))
    sigma[a], sigma[b] = sigma[b], sigma[a]
    E = Mat.identity(n).select_rows(sigma)
    order = sigma + list(range(n, form.canonical.ncols))
    return _transform(form, E, order)


def normalize_two_row_blocks(
    form: InForm, cs: CriticalStructure
) -> tuple[InForm, CriticalStructure]:
    """Bring every two-row free block into the cone ``K1`` of ``Q^2``.

    Blocks are treated last to first: later moves only touch rows above.
    A ``K2`` block swaps its two rows; a ``K12`` block negates its second row,
    adds it to the first, exchanges the resulting column with the NEM column
    and clears the rows above.

    Raises:
        NotPositiveBasis: if a two-row block lies in none of the cones.
    """
    n = form.ell
    for i in reversed(range(cs.s - 1)):
        if cs.block_sizes[i] != 2:
            continue
        cone = two_row_cone(cs.blocks[i])
        if cone is None:
            raise NotPositiveBasis(f"block {i + 1} is not critical")
        r = cs.row_offsets[i]
        if cone == "K2":
            form = _row_swap_move(form, r, r + 1)
        elif cone == "K12":
            rows = Mat.identity(n).to_lists()
            rows[r + 1][r + 1] = -ONE
            rows[r][r + 1] = -ONE
            E = Mat(rows, n)
            order = list(range(form.canonical.ncols))
            order[r + 1], order[n + i] = order[n + i], order[r + 1]
            c = (E @ form.canonical).select_columns(order)
            # clear the entries above row r+1 in the new identity column
            rows = Mat.identity(n).to_lists()
            for q in range(r):
                rows[q][r + 1] = -c[q, r + 1]
            E2 = Mat(rows, n) @ E
            form = _transform(form, E2, order)
        cs = critical_structure(form)
    for i, X in enumerate(cs.blocks):
        if cs.block_sizes[i] == 2 and two_row_cone(X) != "K1":
            raise NotPositiveBasis(f"block {i + 1} is not critical")
    return form, cs


# generators


def _pad(top: Mat, n: int) -> Mat:
    if n < top.nrows:
        raise BadDimensions("need n >= l")
    return Mat(top.rows + Mat.zeros(n - top.nrows, top.ncols).rows, top.ncols)


def gen_minimal_pb(ell: int, n: int) -> Mat:
    """``[I_l -1_l]`` padded with zero rows to ``n`` rows."""
    if not 1 <= ell <= n:
        raise BadDimensions("need 1 <= l <= n")
    return _pad(hstack(Mat.identity(ell), Mat.from_columns([(-ONE,) * ell])), n)


def gen_maximal_pb(ell: int, n: int) -> Mat:
    """``[I_l -I_l]`` padded with zero rows to ``n`` rows."""
    if not 1 <= ell <= n:
        raise BadDimensions("need 1 <= l <= n")
    return _pad(hstack(Mat.identity(ell), -Mat.identity(ell)), n)


def gen_pb_2l_minus_1(ell: int, n: int, x: Sequence) -> Mat:
    """Positive basis of size ``2l-1``: ``N`` has a two-row block ``[0; x]``.

    Raises:
        BadDimensions: unless ``n >= l >= 2``.
        BadParameters: if ``x`` has the wrong length or a positive entry.
    """
    if not 2 <= ell <= n:
        raise BadDimensions("need n >= l >= 2")
    x = vec(x)
    if len(x) != ell - 2 or any(v > 0 for v in x):
        raise BadParameters("x must be a non-positive vector of length l-2")
    N = [[ZERO] * (ell - 1) for _ in range(ell)]
    N[0][0] = N[1][0] = -ONE
    for j, v in enumerate(x):
        N[1][j + 1] = v
        N[j + 2][j + 1] = -ONE
    return _pad(hstack(Mat.identity(ell), Mat(N, ell - 1)), n)


def gen_pb_l_plus_2(ell: int, n: int, k: int, x: Sequence) -> Mat:
    """Positive basis of size ``l+2``: ``N = [-1_k x; 0 -1_{l-k}]``.

    Raises:
        BadDimensions: unless ``n >= l >= 2``.
        BadParameters: unless ``1 <= k <= l-1``, ``x <= 0`` and ``x_1 = 0``.
    """
    if not 2 <= ell <= n:
        raise BadDimensions("need n >= l >= 2")
    x = vec(x)
    if not 1 <= k <= ell - 1 or len(x) != k or any(v > 0 for v in x) or x[0] != 0:
        raise BadParameters("need 1 <= k <= l-1 and x <= 0 of length k with x_1 = 0")
    N = [[-ONE, x[i]] if i < k else [ZERO, -ONE] for i in range(ell)]
    return _pad(hstack(Mat.identity(ell), Mat(N, 2)), n)


# near-extreme sizes


@dataclass(frozen=True)
class NearExtremeForm:
    """``witness`` maps the input onto the generator output for these parameters.

    ``family`` is ``"2l-1"`` or ``"l+2"``; ``k`` is only meaningful for the
    latter.
    """

    family: str
    ell: int
    k: int
    x: tuple[Fraction, ...]
    witness: EquivWitness
    canonical: Mat


def _reduce_2l_minus_1(form: InForm) -> tuple[InForm, tuple[Fraction, ...]]:
    n = form.ell
    form, cs = normalize_two_row_blocks(form, critical_structure(form))
    i = cs.block_sizes.index(2)
    r = cs.row_offsets[i]
    sigma = [r, r + 1] + [q for q in range(n) if q not in (r, r + 1)]
    tau = [i] + [q for q in range(form.k) if q != i]
    E = Mat.identity(n).select_rows(sigma)
    form = _transform(form, E, sigma + [n + q for q in tau])
    return form, tuple(form.N[1, j] for j in range(1, form.k))


def _reduce_l_plus_2(form: InForm) -> tuple[InForm, int, tuple[Fraction, ...]]:
    n = form.ell
    k = validate_nem(form.N).breakpoints[1] - 1
    w = [form.N[q, 1] for q in range(k)]
    top = max(w)
    if top <= 0:
        i = w.index(ZERO)
        form = _row_swap_move(form, 0, i)
    else:
        i, j = [q for q in range(k) if w[q] == top][:2]
        cols = Mat.identity(n).columns()
        cols[i] = form.N.col(0)
        E = inverse(Mat.from_columns(cols))
        order = list(range(form.canonical.ncols))
        order[i], order[n] = order[n], order[i]
        form = _transform(form, E, order)
        form = _row_swap_move(form, 0, j)
    return form, k, tuple(form.N[q, 1] for q in range(k))


def reduce_to_near_extreme_form(D: Mat) -> list[NearExtremeForm] | None:
    """Witnesses onto the size ``2l-1`` and ``l+2`` canonical families.

    Both families are attempted; for ``l = 3`` the sizes coincide and both
    reductions are returned. ``None`` if ``D`` is not a positive basis of a
    matching size.
    """
    n, m = D.shape
    if not removal_oracle(D)[0]:
        return None
    P, C, ell = span_coordinates(D)
    if ell < 2 or m not in (2 * ell - 1, ell + 2):
        return None
    base = decompose_in_ina(P)
    out = []
    if m == 2 * ell - 1:
        form, x = _reduce_2l_minus_1(base)
        target = gen_pb_2l_minus_1(ell, n, x)
        out.append(NearExtremeForm("2l-1", ell, ell - 1, x, lift_witness(C, form.witness), target))
    if m == ell + 2:
        form, k, x = _reduce_l_plus_2(base)
        target = gen_pb_l_plus_2(ell, n, k, x)
        out.append(NearExtremeForm("l+2", ell, k, x, lift_witness(C, form.witness), target))
    for res in out:
        if not verify_equiv(D, res.canonical, res.witness):
            raise AssertionError("near-extreme reduction failed verification")
    return out
