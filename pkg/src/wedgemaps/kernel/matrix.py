"""Dense exact matrices and the linear algebra the invariants need."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .poly import Poly
from .scalar import Scalar, div, exact


class Matrix:
    """Immutable rows x cols matrix of exact rationals (0 x 0 is allowed)."""

    __slots__ = ("rows", "cols", "_e", "_hash")

    def __init__(self, entries: Iterable[Iterable] = (), rows: int | None = None,
                 cols: int | None = None):
        e = tuple(tuple(exact(x) for x in row) for row in entries)
        if not e and rows:
            # k x 0 matrices have rows but no entries
            if cols:
                raise ValueError(f"no entries given for a {rows} x {cols} matrix")
            e = ((),) * rows
        r = len(e)
        c = len(e[0]) if e else (cols or 0)
        if any(len(row) != c for row in e):
            raise ValueError("ragged matrix rows")
        if rows is not None and rows != r:
            raise ValueError(f"expected {rows} rows, got {r}")
        if cols is not None and cols != c:
            raise ValueError(f"expected {cols} columns, got {c}")
        self.rows, self.cols, self._e = r, c, e
        self._hash = None

    @classmethod
    def _raw(cls, e: tuple, rows: int, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m._e, m._hash = rows, cols, e, None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw(tuple((0,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; every block row must share heights, every block column widths."""
        rows = []
        for brow in blocks:
            h = brow[0].rows
            for i in range(h):
                row = []
                for b in brow:
                    if b.rows != h:
                        raise ValueError("block heights disagree within a block row")
                    row.extend(b._e[i])
                rows.append(tuple(row))
        width = sum(b.cols for b in blocks[0]) if blocks else 0
        return cls._raw(tuple(rows), len(rows), width)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self._e[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self._e)

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self._e]

    def __iter__(self):
        return iter(self._e)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._e))
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()!r})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._e for x in r)

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self._e for x in r)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)),
                           self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._e, other._e)),
                           self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._e), self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        c = exact(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._e), self.rows, self.cols)

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        # row-by-row accumulation skipping zeros: exterior powers and wedge
        # assemblies are mostly zero blocks
        sparse_rows = [[(j, b) for j, b in enumerate(row) if b] for row in other._e]
        out = []
        for r in self._e:
            acc = [0] * other.cols
            for a, srow in zip(r, sparse_rows):
                if a:
                    for j, b in srow:
                        acc[j] += a * b
            out.append(tuple(acc))
        e = tuple(out)
        return Matrix._raw(tuple(tuple(exact(x) for x in r) for r in e)
                           if not self.is_integral() or not other.is_integral() else e,
                           self.rows, other.cols)

    def __pow__(self, m: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if m < 0:
            raise ValueError("negative matrix power")
        result, base = Matrix.identity(self.rows), self
        while m:
            if m & 1:
                result = result @ base
            base = base @ base
            m >>= 1
        return result

    def transpose(self) -> "Matrix":
        if self.rows == 0:
            return Matrix.zeros(self.cols, 0)
        return Matrix._raw(tuple(zip(*self._e)), self.cols, self.rows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._e[i][j] for j in cols) for i in rows),
                           len(rows), len(cols))

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Rows r0:r1 and columns c0:c1."""
        return self.submatrix(range(r0, r1), range(c0, c1))

    def trace(self) -> Scalar:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self._e[i][i] for i in range(self.rows)), 0)

    def det(self) -> Scalar:
        return determinant(self)


def determinant(M: Matrix) -> Scalar:
    """Bareiss fraction-free elimination; divisions are exact at every step."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = div(row_i[j] * akk - aik * row_k[j], prev)
        prev = akk
    return sign * a[n - 1][n - 1]


def char_poly(M: Matrix) -> Poly:
    """det(tI - M) by Berkowitz's division-free algorithm.

    Integer input gives a monic integer polynomial.  Rational input gives the
    rational characteristic polynomial rescaled to primitive integer form.
    """
    if not M.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.rows
    if n == 0:
        return Poly([1])
    a = [list(r) for r in M]
    # vectors of descending coefficients for leading principal submatrices
    poly = [1, -a[0][0]]
    for k in range(1, n):
        # A_k = a[:k][:k], column C = a[:k][k], row R = a[k][:k], diagonal a[k][k]
        C = [a[i][k] for i in range(k)]
        R = [a[k][j] for j in range(k)]
        items = [1, -a[k][k]]
        v = C
        for _ in range(k):
            items.append(-sum(r * x for r, x in zip(R, v)))
            v = [sum(a[i][j] * v[j] for j in range(k)) for i in range(k)]
        # Toeplitz (k+2) x (k+1) lower-triangular product with poly
        new = []
        for i in range(k + 2):
            new.append(sum(items[i - j] * poly[j] for j in range(min(i, k) + 1)))
        poly = new
    p = Poly(reversed(poly))
    return p if p.is_integral() else p.primitive()


def trace_power(M: Matrix, m: int, method: str = "power") -> Scalar:
    """trace(M**m) for m >= 1.

    ``method="power"`` multiplies out the power; ``method="newton"`` runs the
    power-sum recurrence off the characteristic polynomial.
    """
    if not M.is_square():
        raise ValueError("trace of a non-square matrix")
    if m < 1:
        raise ValueError("iterates start at m = 1")
    if method == "power":
        return (M**m).trace()
    if method == "newton":
        return power_sums(M, m)[m - 1]
    raise ValueError(f"unknown method {method!r}")


def power_sums(M: Matrix, m_max: int) -> list[Scalar]:
    """[trace(M), trace(M^2), ..., trace(M^m_max)] from Newton's identities.

    Uses the monic characteristic polynomial t^n + c1 t^(n-1) + ... + cn, so
    p_m = -(c1 p_(m-1) + ... + c_(m-1) p_1 + m c_m) for m <= n and the
    Cayley-Hamilton recurrence beyond.
    """
    n = M.rows
    if n == 0:
        return [0] * m_max
    cp = char_poly(M) if M.is_integral() else _rational_char_poly(M)
    c = [cp[n - i] for i in range(n + 1)]  # c[0] = 1
    p: list[Scalar] = []
    for m in range(1, m_max + 1):
        acc = sum(c[i] * p[m - i - 1] for i in range(1, min(m - 1, n) + 1))
        if m <= n:
            acc += m * c[m]
        p.append(exact(-acc))
    return p


def _rational_char_poly(M: Matrix) -> Poly:
    # monic rational form, reusing the integral routine on a scaled matrix
    from math import lcm
    from fractions import Fraction
    d = lcm(*(Fraction(x).denominator for r in M for x in r))
    cp = char_poly(M.scale(d))  # det(tI - dM) = d^n det((t/d) I - M)
    n = M.rows
    return Poly(div(cp[i], d ** (n - i)) for i in range(n + 1))


def exterior_power(A: Matrix, k: int) -> Matrix:
    """k-th compound matrix: all k x k minors, index tuples in lexicographic order.

    Square input follows the usual contract (0 <= k <= n).  Rectangular input
    (a map between exterior algebras of different ranks) is allowed for
    0 <= k <= max(rows, cols); a side with fewer than k indices gives an empty
    dimension.
    """
    if k < 0:
        raise ValueError("exterior power degree must be nonnegative")
    limit = A.rows if A.is_square() else max(A.rows, A.cols)
    if k > limit:
        raise ValueError(f"exterior power degree {k} exceeds dimension {limit}")
    row_sets = list(combinations(range(A.rows), k))
    col_sets = list(combinations(range(A.cols), k))
    if k == 1:
        return A
    e = tuple(tuple(determinant(A.submatrix(I, J)) for J in col_sets) for I in row_sets)
    return Matrix._raw(e, len(row_sets), len(col_sets))
