"""Exact dense linear algebra over rationals and over polynomial rings.

Matrices are immutable and ring-homogeneous: every entry is either a
``Fraction`` or an ``MPoly``.  Determinants of polynomial matrices default to
Laplace expansion memoized over column subsets; a fraction-free Bareiss
routine is kept alongside and the two are cross-checked in the test suite.
Characteristic polynomials and adjugates come from the Faddeev-LeVerrier
iteration, whose only divisions are by the integers 1..n.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Union

from .errors import InternalCheckError, PreconditionError
from .exact import MPoly, UniPoly, exact_div, frac

Entry = Union[Fraction, MPoly]

LAMBDA = "lam"


def _is_poly(x) -> bool:
    return isinstance(x, MPoly)


def _zero_like(x) -> Entry:
    return MPoly.zero(x.vars) if _is_poly(x) else Fraction(0)


def _one_like(x) -> Entry:
    return MPoly.const(1, x.vars) if _is_poly(x) else Fraction(1)


def _entry_is_zero(x) -> bool:
    return x.is_zero() if _is_poly(x) else x == 0


def _ring_div(num: Entry, den: Entry) -> Entry:
    """Exact division; raises if the division is not exact."""
    if _is_poly(num) or _is_poly(den):
        if not _is_poly(num):
            num = MPoly.const(num)
        if not _is_poly(den):
            den = MPoly.const(den)
        q = exact_div(num, den)
        if q is None:
            raise InternalCheckError("INTERNAL", "inexact division in fraction-free elimination")
        return q
    return num / den


class Mat:
    """Dense matrix with Fraction or MPoly entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[Entry]]):
        self.data = tuple(tuple(row) for row in data)
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @staticmethod
    def from_ints(data) -> "Mat":
        return Mat([[frac(x) for x in row] for row in data])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "Mat":
        return Mat([[Fraction(0)] * cols for _ in range(rows)])

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            self.data[i][j] == other.data[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
        )

    __hash__ = None

    def __add__(self, other: "Mat") -> "Mat":
        self._shape_check(other)
        return Mat([
            [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ])

    def __sub__(self, other: "Mat") -> "Mat":
        self._shape_check(other)
        return Mat([
            [self.data[i][j] - other.data[i][j] for j in range(self.cols)]
            for i in range(self.rows)
        ])

    def __neg__(self) -> "Mat":
        return Mat([[-x for x in row] for row in self.data])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = None
                for k in range(self.cols):
                    a = self.data[i][k]
                    b = other.data[k][j]
                    if _entry_is_zero(a) or _entry_is_zero(b):
                        continue
                    term = a * b
                    acc = term if acc is None else acc + term
                if acc is None:
                    acc = _zero_like(self.data[i][0]) if self.cols else Fraction(0)
                row.append(acc)
            out.append(row)
        return Mat(out)

    def scale(self, c) -> "Mat":
        return Mat([[x * c for x in row] for row in self.data])

    def transpose(self) -> "Mat":
        return Mat([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def trace(self) -> Entry:
        acc = self.data[0][0]
        for i in range(1, min(self.rows, self.cols)):
            acc = acc + self.data[i][i]
        return acc

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def _shape_check(self, other: "Mat"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def map(self, fn) -> "Mat":
        return Mat([[fn(x) for x in row] for row in self.data])

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.data) + "]"

    def __repr__(self) -> str:
        return f"Mat({self})"


# -- reduced row echelon form over the rationals --------------------------

class Echelon:
    """rank, pivots, the reduced rows, and a kernel basis of a Fraction matrix."""

    def __init__(self, rank: int, pivots: List[int], rows: List[List[Fraction]], cols: int):
        self.rank = rank
        self.pivots = pivots
        self.rows = rows
        self.cols = cols

    def kernel_basis(self) -> List[List[Fraction]]:
        free = [j for j in range(self.cols) if j not in self.pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for r, p in enumerate(self.pivots):
                v[p] = -self.rows[r][f]
            basis.append(v)
        return basis

    def reduce_vector(self, v: Sequence[Fraction]) -> List[Fraction]:
        """Residue of v modulo the row space (eliminate pivot coordinates)."""
        out = [frac(x) for x in v]
        for r, p in enumerate(self.pivots):
            c = out[p]
            if c == 0:
                continue
            for j in range(self.cols):
                out[j] -= c * self.rows[r][j]
        return out

    def solve_coordinates(self, v: Sequence[Fraction]) -> Optional[List[Fraction]]:
        """Coefficients expressing v in the original row space, or None.

        Returned in terms of the reduced rows; use ``member`` helpers when the
        original basis matters.
        """
        out = [frac(x) for x in v]
        coords = [Fraction(0)] * len(self.pivots)
        for r, p in enumerate(self.pivots):
            c = out[p]
            coords[r] = c
            if c == 0:
                continue
            for j in range(self.cols):
                out[j] -= c * self.rows[r][j]
        if any(x != 0 for x in out):
            return None
        return coords


def rref(matrix: Sequence[Sequence[Fraction]]) -> Echelon:
    rows = [[frac(x) for x in row] for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return Echelon(r, pivots, rows[:r], ncols)


def mat_rank(m: Mat) -> int:
    return rref(m.data).rank


def mat_kernel(m: Mat) -> List[List[Fraction]]:
    return rref(m.data).kernel_basis()


def inverse(m: Mat) -> Mat:
    """Inverse of a square Fraction matrix; raises on singular input."""
    if not m.is_square():
        raise PreconditionError("NOT_SQUARE", "inverse needs a square matrix")
    n = m.rows
    aug = [list(m.data[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    ech = rref(aug)
    if ech.pivots[:n] != list(range(n)) or ech.rank < n:
        raise PreconditionError("SINGULAR", "matrix is singular")
    return Mat([row[n:] for row in ech.rows])


# -- determinants ----------------------------------------------------------

def det_bareiss(m: Mat) -> Entry:
    """Fraction-free determinant (exact divisions by previous pivots)."""
    if not m.is_square():
        raise PreconditionError("NOT_SQUARE", "determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = [list(row) for row in m.data]
    sign = 1
    prev = _one_like(a[0][0])
    for k in range(n - 1):
        if _entry_is_zero(a[k][k]):
            swap = next((i for i in range(k + 1, n) if not _entry_is_zero(a[i][k])), None)
            if swap is None:
                return _zero_like(a[0][0])
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = _ring_div(num, prev)
        prev = a[k][k]
    result = a[n - 1][n - 1]
    return -result if sign < 0 else result


def det_laplace(m: Mat) -> Entry:
    """Determinant via Laplace expansion memoized over column subsets."""
    if not m.is_square():
        raise PreconditionError("NOT_SQUARE", "determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    memo = {(): _one_like(m.data[0][0])}

    def minor(cols: tuple) -> Entry:
        cached = memo.get(cols)
        if cached is not None:
            return cached
        row = len(cols) - 1
        acc = None
        for idx, c in enumerate(cols):
            e = m.data[row][c]
            if _entry_is_zero(e):
                continue
            sub = minor(cols[:idx] + cols[idx + 1:])
            if _entry_is_zero(sub):
                continue
            term = e * sub
            if (row + idx) % 2:
                term = -term
            acc = term if acc is None else acc + term
        if acc is None:
            acc = _zero_like(m.data[0][0])
        memo[cols] = acc
        return acc

    return minor(tuple(range(n)))


def det(m: Mat) -> Entry:
    """Exact determinant; Bareiss over rationals, memoized Laplace over polynomials."""
    if m.rows and _is_poly(m.data[0][0]):
        return det_laplace(m)
    return det_bareiss(m)


# -- Faddeev-LeVerrier: characteristic polynomial and adjugate ------------

def _faddeev_leverrier(m: Mat):
    """Returns (coefficients c_0..c_n of charpoly, adjugate matrix).

    charpoly(lam) = lam^n + c_1 lam^(n-1) + ... + c_n, returned low-index-first
    as [c_n, ..., c_1, 1]; all divisions are by integers 1..n.
    """
    if not m.is_square():
        raise PreconditionError("NOT_SQUARE", "characteristic polynomial needs a square matrix")
    n = m.rows
    one = _one_like(m.data[0][0]) if n else Fraction(1)
    ident = Mat([[one if i == j else _zero_like(one) for j in range(n)] for i in range(n)])
    mk = ident
    cs = []  # c_1 .. c_n
    for k in range(1, n + 1):
        if k > 1:
            mk = m @ mk + ident.scale(cs[-1])
        prod = m @ mk
        ck = prod.trace() * Fraction(-1, k)
        cs.append(ck)
    adj = mk if n % 2 else -mk
    coeffs = list(reversed(cs)) + [one]
    return coeffs, adj


def charpoly(m: Mat) -> UniPoly:
    """Monic characteristic polynomial det(lam*I - M) in the variable ``lam``."""
    coeffs, _ = _faddeev_leverrier(m)
    return UniPoly(LAMBDA, [c if _is_poly(c) else MPoly.const(c) for c in coeffs])


def adjugate(m: Mat) -> Mat:
    """Adjugate: M @ adj(M) = det(M) * I."""
    _, adj = _faddeev_leverrier(m)
    return adj


def adjugate_cofactor(m: Mat) -> Mat:
    """Independent adjugate via cofactors by definition (test oracle)."""
    n = m.rows
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = Mat([
                [m.data[r][c] for c in range(n) if c != j]
                for r in range(n) if r != i
            ]) if n > 1 else None
            cof = det_laplace(sub) if n > 1 else _one_like(m.data[0][0])
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof
    return Mat(out)


def minpoly(m: Mat) -> UniPoly:
    """Least-degree monic annihilator of a square Fraction matrix."""
    if not m.is_square():
        raise PreconditionError("NOT_SQUARE", "minimal polynomial needs a square matrix")
    if m.rows and _is_poly(m.data[0][0]):
        raise PreconditionError("NOT_SCALAR", "minimal polynomial is defined over rationals only")
    n = m.rows
    power = Mat.identity(n)
    stack: List[List[Fraction]] = []
    for _ in range(n + 1):
        vec = [power.data[i][j] for i in range(n) for j in range(n)]
        if stack:
            combo = express_in_rows(stack, vec)
            if combo is not None:
                coeffs = [-c for c in combo] + [Fraction(1)]
                return UniPoly(LAMBDA, [MPoly.const(c) for c in coeffs])
        stack.append(vec)
        power = power @ m
    raise InternalCheckError("INTERNAL", "no annihilator up to degree n")


def express_in_rows(rows: List[List[Fraction]], v: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Coefficients c with sum(c_i * rows_i) = v, or None when v is outside."""
    work = [list(r) for r in rows]
    track = [[Fraction(int(i == j)) for j in range(len(rows))] for i in range(len(rows))]
    target = [frac(x) for x in v]
    coeff = [Fraction(0)] * len(rows)
    ncols = len(v)
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        track[r], track[pivot] = track[pivot], track[r]
        inv = Fraction(1) / work[r][c]
        work[r] = [x * inv for x in work[r]]
        track[r] = [x * inv for x in track[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
                track[i] = [a - f * b for a, b in zip(track[i], track[r])]
        if target[c] != 0:
            f = target[c]
            target = [a - f * b for a, b in zip(target, work[r])]
            coeff = [a + f * b for a, b in zip(coeff, track[r])]
        r += 1
    if any(x != 0 for x in target):
        return None
    return coeff
