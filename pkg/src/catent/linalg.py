"""Exact rational linear algebra: weightings, magnitude and Moebius inversion.

Everything here works over :class:`fractions.Fraction`; no floating point
is involved.  Vectors are plain tuples of fractions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .errors import NotSquare, ShapeMismatch, SizeLimit

Vector = Tuple[Fraction, ...]

#: Default bound on the matrix size accepted by :func:`has_nonnegative_weighting`.
NONNEGATIVE_SIZE_LIMIT = 12


def size_limit(default: int) -> int:
    """Return ``default`` unless ``CATENT_SIZE_LIMIT`` overrides it."""
    value = os.environ.get("CATENT_SIZE_LIMIT")
    if value is None or value.strip() == "":
        return default
    return int(value)


def as_fraction(value) -> Fraction:
    # floats keep their exact binary value; file input never produces them
    return Fraction(value)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense row-major matrix of fractions."""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RationalMatrix":
        rows = [[as_fraction(x) for x in row] for row in rows]
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        if any(len(row) != n_cols for row in rows):
            raise ShapeMismatch("ragged rows")
        return cls(n_rows, n_cols, tuple(x for row in rows for x in row))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix.from_rows([self.col(j) for j in range(self.cols)])

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.col(j) for j in range(other.cols)]
            return RationalMatrix.from_rows(
                [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols]
                 for i in range(self.rows)]
            )
        vec = tuple(as_fraction(x) for x in other)
        if len(vec) != self.cols:
            raise ShapeMismatch(f"cannot multiply {self.shape} by vector of length {len(vec)}")
        return tuple(
            sum((a * b for a, b in zip(self.row(i), vec)), Fraction(0))
            for i in range(self.rows)
        )

    def kron(self, other: "RationalMatrix") -> "RationalMatrix":
        """Kronecker product, row-major in (self index, other index)."""
        return RationalMatrix.from_rows(
            [[self[i, j] * other[k, l] for j in range(self.cols) for l in range(other.cols)]
             for i in range(self.rows) for k in range(other.rows)]
        )

    def direct_sum(self, other: "RationalMatrix") -> "RationalMatrix":
        """Block-diagonal matrix with ``self`` first."""
        return block_diagonal([self, other])

    def submatrix(self, indices: Sequence[int]) -> "RationalMatrix":
        """Principal submatrix on ``indices``."""
        return RationalMatrix.from_rows([[self[i, j] for j in indices] for i in indices])


def block_diagonal(blocks: Sequence[RationalMatrix]) -> RationalMatrix:
    n_rows = sum(b.rows for b in blocks)
    n_cols = sum(b.cols for b in blocks)
    out = [[Fraction(0)] * n_cols for _ in range(n_rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return RationalMatrix.from_rows(out) if n_rows else RationalMatrix(0, n_cols, ())


def as_matrix(M) -> RationalMatrix:
    """Coerce nested sequences (or a :class:`RationalMatrix`) to a matrix."""
    if isinstance(M, RationalMatrix):
        return M
    return RationalMatrix.from_rows(M)


def _require_square(M) -> RationalMatrix:
    M = as_matrix(M)
    if not M.is_square:
        raise NotSquare(f"expected a square matrix, got {M.rows}x{M.cols}")
    return M


def _rref(rows: list, n_cols: int) -> list:
    """Reduce ``rows`` in place to reduced row echelon form.

    Only the first ``n_cols`` columns are used for pivoting; anything to the
    right is carried along (augmented columns).  Returns the pivot columns.
    """
    pivots = []
    r = 0
    n_rows = len(rows)
    for c in range(n_cols):
        if r == n_rows:
            break
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def solve(M, rhs) -> Optional[Vector]:
    """Return a solution of ``M x = rhs`` with free variables set to zero.

    Returns ``None`` when the system is inconsistent.  Because the reduced
    row echelon form is unique, the returned representative does not
    depend on pivoting order.
    """
    M = as_matrix(M)
    rhs = [as_fraction(x) for x in rhs]
    if len(rhs) != M.rows:
        raise ShapeMismatch(f"right-hand side has length {len(rhs)}, expected {M.rows}")
    rows = [list(M.row(i)) + [rhs[i]] for i in range(M.rows)]
    pivots = _rref(rows, M.cols)
    for i in range(len(pivots), M.rows):
        if rows[i][-1] != 0:
            return None
    x = [Fraction(0)] * M.cols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return tuple(x)


def rank(M) -> int:
    M = as_matrix(M)
    return len(_rref([list(M.row(i)) for i in range(M.rows)], M.cols))


def solve_weighting(M) -> Optional[Vector]:
    """Weighting of a square matrix: any ``w`` with ``M w = 1``.

    Parameters
    ----------
    M : RationalMatrix or nested sequence
        Square matrix.

    Returns
    -------
    tuple of Fraction or None
        The free-variables-zero solution, or ``None`` if none exists.

    Examples
    --------
    >>> solve_weighting([[1, 2], [0, 1]])
    (Fraction(-1, 1), Fraction(1, 1))
    """
    M = _require_square(M)
    return solve(M, [1] * M.rows)


def solve_coweighting(M) -> Optional[Vector]:
    """Coweighting: ``w`` with ``w^T M = 1^T``, i.e. a weighting of ``M.T``."""
    M = _require_square(M)
    return solve(M.T, [1] * M.rows)


def mobius_inverse(M) -> Optional[RationalMatrix]:
    """Exact inverse of ``M`` (the Moebius matrix when ``M`` is a zeta matrix).

    Returns ``None`` if ``M`` is singular.
    """
    M = _require_square(M)
    n = M.rows
    rows = [list(M.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivots = _rref(rows, n)
    if len(pivots) < n:
        return None
    return RationalMatrix.from_rows([row[n:] for row in rows])


def _phase_one(A: RationalMatrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """Exact phase-1 simplex for ``{x : A x = b, x >= 0}`` with ``b >= 0``.

    Bland's rule guarantees termination.  Returns a basic feasible solution
    or ``None``.
    """
    m, n = A.rows, A.cols
    width = n + m + 1
    tab = [list(A.row(i)) + [Fraction(int(k == i)) for k in range(m)] + [b[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    # reduced costs for minimising the sum of artificials
    obj = [Fraction(0)] * width
    for j in range(n, n + m):
        obj[j] = Fraction(1)
    for row in tab:
        obj = [o - x for o, x in zip(obj, row)]

    while True:
        entering = next((j for j in range(n + m) if obj[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            if tab[i][entering] > 0:
                ratio = tab[i][-1] / tab[i][entering]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # unbounded direction cannot occur: the objective is bounded below by 0
            raise AssertionError("phase-one objective unbounded")
        r = best[1]
        lead = tab[r][entering]
        tab[r] = [x / lead for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        f = obj[entering]
        obj = [o - f * y for o, y in zip(obj, tab[r])]
        basis[r] = entering

    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = tab[i][-1]
    return tuple(x)


def min_norm_weighting(M) -> Optional[Vector]:
    """The weighting of least Euclidean norm, ``M^T y`` with ``M M^T y = 1``.

    Unique when it exists, and equivariant under relabelling of objects.
    """
    M = _require_square(M)
    y = solve(M @ M.T, [1] * M.rows)
    if y is None:
        return None
    w = M.T @ y
    # M M^T y = 1 is consistent iff M w = 1 is
    return w


def nonnegative_weighting(M) -> Optional[Vector]:
    """Like :func:`has_nonnegative_weighting` but without any size bound.

    The minimum-norm weighting is returned when it is nonnegative; otherwise
    a vertex found by exact phase-one simplex.
    """
    M = _require_square(M)
    if M.rows == 0:
        return ()
    w = min_norm_weighting(M)
    if w is None:
        return None
    if min(w) >= 0:
        return w
    return _phase_one(M, [Fraction(1)] * M.rows)


def has_nonnegative_weighting(M, limit: Optional[int] = None) -> Tuple[bool, Optional[Vector]]:
    """Decide whether ``M w = 1`` has a solution with ``w >= 0``.

    Parameters
    ----------
    M : RationalMatrix or nested sequence
        Square matrix.
    limit : int, optional
        Largest accepted size; defaults to ``CATENT_SIZE_LIMIT`` or 12.

    Returns
    -------
    (bool, tuple of Fraction or None)
        Feasibility and, when feasible, a vertex of the feasible polytope.
    """
    M = _require_square(M)
    if limit is None:
        limit = size_limit(NONNEGATIVE_SIZE_LIMIT)
    if M.rows > limit:
        raise SizeLimit(f"nonnegative weighting search limited to N <= {limit}, got {M.rows}")
    w = nonnegative_weighting(M)
    return w is not None, w


@dataclass(frozen=True)
class MagnitudeResult:
    weighting: Optional[Vector]
    coweighting: Optional[Vector]
    magnitude: Optional[Fraction]
    has_nonnegative_weighting: bool
    nonnegative_weighting: Optional[Vector]

    @property
    def exists(self) -> bool:
        return self.magnitude is not None


def magnitude(M) -> MagnitudeResult:
    """Magnitude of a square matrix.

    The magnitude exists iff both a weighting and a coweighting exist, in
    which case their sums agree and give the value.  The 0x0 matrix has
    magnitude 0.
    """
    M = _require_square(M)
    w = solve_weighting(M)
    cw = solve_coweighting(M)
    value = None
    if w is not None and cw is not None:
        value = sum(w, Fraction(0))
        # both sums equal w-bar^T M w
        assert value == sum(cw, Fraction(0))
    nonneg = nonnegative_weighting(M)
    return MagnitudeResult(
        weighting=w,
        coweighting=cw,
        magnitude=value,
        has_nonnegative_weighting=nonneg is not None,
        nonnegative_weighting=nonneg,
    )


def category_magnitude(category) -> MagnitudeResult:
    """Magnitude (Euler characteristic) of a finite category via its zeta matrix."""
    return magnitude(RationalMatrix.from_rows(category.zeta))
