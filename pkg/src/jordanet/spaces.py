"""Linear subspaces of symmetric matrices as Grassmannian points.

A ``MatSpace`` is an ordered basis of symmetric n x n rational matrices,
validated for symmetry and independence at construction.  Symmetric matrices
vectorize to their upper triangle read row by row; for n = 4 the coordinate
order is (11, 12, 13, 14, 22, 23, 24, 33, 34, 44).  All Pluecker coordinates,
kernels and membership tests use that fixed order.

``ParametricBasis`` holds a one-parameter family (entries polynomial in t)
and ``grassmann_limit`` computes its limit at t -> 0 by valuation-normalized
row reduction.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import PreconditionError
from .exact import MPoly, frac
from .linalg import Echelon, Mat, det, express_in_rows, rref
from .prng import SplitMix64


def sym_dim(n: int) -> int:
    return n * (n + 1) // 2


def sym_pairs(n: int) -> List[Tuple[int, int]]:
    """Upper-triangle index pairs in canonical order, 0-based."""
    return [(i, j) for i in range(n) for j in range(i, n)]


def vectorize(m: Mat) -> List:
    return [m[i, j] for i, j in sym_pairs(m.rows)]


def unvectorize(n: int, vec: Sequence) -> Mat:
    entries = [[None] * n for _ in range(n)]
    for (i, j), v in zip(sym_pairs(n), vec):
        entries[i][j] = v
        entries[j][i] = v
    return Mat(entries)


class MatSpace:
    """An m-dimensional subspace of the symmetric n x n matrices."""

    __slots__ = ("n", "m", "basis", "_echelon", "_generic_det")

    def __init__(self, n: int, basis: Sequence[Mat]):
        self.n = n
        self.basis = tuple(basis)
        self.m = len(self.basis)
        self._echelon = None
        self._generic_det = None
        if self.m == 0:
            raise PreconditionError("DEPENDENT_BASIS", "empty basis")
        for b in self.basis:
            if b.rows != n or b.cols != n:
                raise PreconditionError("NOT_SYMMETRIC", "basis size mismatch")
            if not b.is_symmetric():
                raise PreconditionError("NOT_SYMMETRIC", "basis matrix is not symmetric")
        if self.echelon().rank != self.m:
            raise PreconditionError("DEPENDENT_BASIS", "basis matrices are dependent")

    # -- coordinates ----------------------------------------------------

    def coordinate_rows(self) -> List[List[Fraction]]:
        return [vectorize(b) for b in self.basis]

    def echelon(self) -> Echelon:
        if self._echelon is None:
            self._echelon = rref(self.coordinate_rows())
        return self._echelon

    def element(self, coords: Sequence) -> Mat:
        acc = self.basis[0].scale(frac(coords[0]))
        for c, b in zip(coords[1:], self.basis[1:]):
            acc = acc + b.scale(frac(c))
        return acc

    def __eq__(self, other) -> bool:
        """Equality as subspaces (same row space), not as ordered bases."""
        if not isinstance(other, MatSpace):
            return NotImplemented
        if (self.n, self.m) != (other.n, other.m):
            return False
        return self.echelon().rows == other.echelon().rows

    __hash__ = None

    def __repr__(self) -> str:
        return f"MatSpace(n={self.n}, m={self.m})"


def make_space(n: int, basis: Sequence[Mat]) -> MatSpace:
    return MatSpace(n, basis)


def generic_names(m: int) -> Tuple[str, ...]:
    return tuple(f"t{k + 1}" for k in range(m))


def generic_element(space: MatSpace, names: Optional[Sequence[str]] = None) -> Mat:
    """sum_k t_k * basis_k with fresh polynomial variables t1..tm."""
    names = tuple(names) if names is not None else generic_names(space.m)
    if len(names) != space.m:
        raise PreconditionError("PARSE_ERROR", "need one variable name per basis element")
    vars = tuple(sorted(names))
    entries = [[MPoly.zero(vars) for _ in range(space.n)] for _ in range(space.n)]
    for name, b in zip(names, space.basis):
        idx = vars.index(name)
        for i in range(space.n):
            for j in range(space.n):
                c = b[i, j]
                if c == 0:
                    continue
                exps = [0] * len(vars)
                exps[idx] = 1
                key = tuple(exps)
                cur = entries[i][j]
                entries[i][j] = cur + MPoly(vars, {key: c})
    return Mat(entries)


def generic_det(space: MatSpace, names: Optional[Sequence[str]] = None) -> MPoly:
    """Determinant of the generic element; nonzero iff the space is regular."""
    if names is None and space._generic_det is not None:
        return space._generic_det
    result = det(generic_element(space, names))
    if names is None:
        space._generic_det = result
    return result


def is_regular(space: MatSpace) -> bool:
    return not generic_det(space).is_zero()


def integer_sweep(m: int, max_norm: Optional[int] = None):
    """Deterministic enumeration of nonzero integer tuples by increasing
    max-norm; within a shell, values are tried in the order 0, 1, -1, 2, -2...
    """
    shell = 1
    while max_norm is None or shell <= max_norm:
        ordered = [0]
        for v in range(1, shell + 1):
            ordered.extend((v, -v))
        for tup in itertools.product(ordered, repeat=m):
            if max(abs(x) for x in tup) == shell:
                yield tup
        shell += 1


def find_invertible(space: MatSpace) -> Tuple[Mat, Tuple[int, ...]]:
    """First invertible element in sweep order; the identity wins if present.

    The sweep over max-norm shells terminates for regular spaces: the generic
    determinant has degree n, so it cannot vanish on a grid wider than n + 1.
    """
    if not is_regular(space):
        raise PreconditionError("NOT_REGULAR", "space has identically zero determinant")
    ident = Mat.identity(space.n)
    coords = contains(space, ident)
    if coords is not None:
        return ident, tuple(coords)
    for tup in integer_sweep(space.m, max_norm=space.n + 1):
        cand = space.element(tup)
        if det(cand) != 0:
            return cand, tup
    raise PreconditionError("NOT_REGULAR", "sweep exhausted without invertible element")


def contains(space: MatSpace, m: Mat) -> Optional[List[Fraction]]:
    """Coordinates of m in the basis, or None when m is outside the space."""
    if m.rows != space.n or m.cols != space.n:
        raise PreconditionError("NOT_SYMMETRIC", "size mismatch")
    if not m.is_symmetric():
        return None
    return express_in_rows(space.coordinate_rows(), vectorize(m))


def residue_mod_space(space: MatSpace, m: Mat) -> Mat:
    """Canonical representative of m modulo the space (pivot elimination)."""
    red = space.echelon().reduce_vector(vectorize(m))
    return unvectorize(space.n, red)


def orth_complement(space: MatSpace) -> MatSpace:
    """All symmetric Z with trace(B Z) = 0 for every basis element B."""
    n = space.n
    pairs = sym_pairs(n)
    rows = []
    for b in space.basis:
        row = []
        for i, j in pairs:
            w = b[i, j] if i == j else 2 * b[i, j]
            row.append(w)
        rows.append(row)
    kernel = rref(rows).kernel_basis()
    if not kernel:
        raise PreconditionError("DEPENDENT_BASIS", "complement of the full space is zero")
    return MatSpace(n, [unvectorize(n, v) for v in kernel])


def congruence_transform(space: MatSpace, p: Mat) -> MatSpace:
    """Basis-wise map B -> P^T B P; requires P invertible."""
    if det(p) == 0:
        raise PreconditionError("SINGULAR_P", "congruence by a singular matrix")
    pt = p.transpose()
    return MatSpace(space.n, [pt @ b @ p for b in space.basis])


def sample_congruent(space: MatSpace, seed: int) -> MatSpace:
    """Deterministic congruence image: P has integer entries in [-3, 3]."""
    rng = SplitMix64(seed)
    while True:
        p = Mat.from_ints([
            [rng.int_between(-3, 3) for _ in range(space.n)]
            for _ in range(space.n)
        ])
        if det(p) != 0:
            return congruence_transform(space, p)


class PluckerVector:
    """Maximal minors of the coordinate matrix, indexed by column tuples."""

    __slots__ = ("n", "m", "values")

    def __init__(self, n: int, m: int, values: Dict[Tuple[int, ...], Fraction]):
        self.n = n
        self.m = m
        self.values = values

    def __getitem__(self, key: Tuple[int, ...]) -> Fraction:
        return self.values.get(tuple(key), Fraction(0))

    def nonzero(self) -> Dict[Tuple[int, ...], Fraction]:
        return {k: v for k, v in self.values.items() if v != 0}

    def proportional_to(self, other: "PluckerVector") -> bool:
        ratio = None
        for key in set(self.values) | set(other.values):
            a, b = self[key], other[key]
            if a == 0 and b == 0:
                continue
            if a == 0 or b == 0:
                return False
            r = a / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
        return ratio is not None


def plucker(space: MatSpace) -> PluckerVector:
    """All m x m minors of the m x binom(n+1,2) coordinate matrix."""
    rows = space.coordinate_rows()
    ncols = sym_dim(space.n)
    values = {}
    for cols in itertools.combinations(range(ncols), space.m):
        sub = Mat([[rows[r][c] for c in cols] for r in range(space.m)])
        values[cols] = det(sub)
    return PluckerVector(space.n, space.m, values)


class ParametricBasis:
    """Family of subspaces: basis entries are polynomials in one parameter."""

    __slots__ = ("n", "m", "basis", "param")

    def __init__(self, n: int, basis: Sequence[Mat], param: str = "t"):
        self.n = n
        self.basis = tuple(basis)
        self.m = len(self.basis)
        self.param = param
        for b in self.basis:
            if b.rows != n or b.cols != n or not b.is_symmetric():
                raise PreconditionError("NOT_SYMMETRIC", "family matrices must be symmetric")

    def at(self, value) -> List[Mat]:
        """Numeric basis matrices at a parameter value (no independence check)."""
        out = []
        for b in self.basis:
            out.append(b.map(lambda e: _eval_entry(e, self.param, value)))
        return out

    def coordinate_rows(self) -> List[List[MPoly]]:
        return [[_as_poly(e, self.param) for e in vectorize(b)] for b in self.basis]


def _as_poly(e, param: str) -> MPoly:
    return e if isinstance(e, MPoly) else MPoly.const(e, (param,))


def _eval_entry(e, param: str, value) -> Fraction:
    if isinstance(e, MPoly):
        sub = {v: frac(value) if v == param else 0 for v in e.vars}
        out = e.substitute(sub) if sub else e
        return out.constant_value()
    return frac(e)


def generic_rank(family: ParametricBasis) -> int:
    """Rank over the rational function field, by enough numeric samples.

    A nonzero m x m minor is a polynomial of degree at most m * max entry
    degree, so it cannot vanish at more than that many distinct parameter
    values; sampling one more value makes the maximum rank exact.
    """
    maxdeg = 0
    for b in family.basis:
        for e in vectorize(b):
            if isinstance(e, MPoly) and not e.is_zero():
                maxdeg = max(maxdeg, int(e.total_degree()))
    samples = family.m * maxdeg + 1
    best = 0
    for k in range(samples + 1):
        rows = [vectorize(b) for b in family.at(k)]
        best = max(best, rref(rows).rank)
        if best == family.m:
            break
    return best


def _valuation(p: MPoly, param: str) -> int:
    idx = p.vars.index(param)
    return min(e[idx] for e in p.terms)


def grassmann_limit(family: ParametricBasis) -> MatSpace:
    """Limit subspace at t -> 0 via valuation-normalized row reduction.

    Repeatedly: evaluate at t = 0; while the rank drops, pick a kernel
    combination of the evaluated rows, form the same combination of the
    polynomial rows, strip its t-valuation and use it to replace one row in
    the combination's support.  Each pass strictly decreases the total
    t-valuation of the Pluecker vector, so the loop terminates.
    """
    if generic_rank(family) != family.m:
        raise PreconditionError("NOT_GENERIC_RANK", "family is degenerate for generic t")
    param = family.param
    rows = family.coordinate_rows()
    t_zero = {param: Fraction(0)}

    def eval_zero(poly: MPoly) -> Fraction:
        if param in poly.vars:
            return poly.substitute(t_zero).constant_value()
        return poly.constant_value()

    for _ in range(10000):
        numeric = [[eval_zero(e) for e in row] for row in rows]
        ech = rref(numeric)
        if ech.rank == family.m:
            basis = [unvectorize(family.n, [eval_zero(e) for e in row]) for row in rows]
            return MatSpace(family.n, basis)
        combo = _row_kernel_vector(numeric)
        new_row = [MPoly.zero((param,)) for _ in rows[0]]
        for c, row in zip(combo, rows):
            if c == 0:
                continue
            new_row = [acc + e.scale(c) for acc, e in zip(new_row, row)]
        vals = [
            _valuation(e.with_vars(tuple(sorted(set(e.vars) | {param}))), param)
            for e in new_row if not e.is_zero()
        ]
        if not vals:
            raise PreconditionError("NOT_GENERIC_RANK", "rows became dependent over QQ(t)")
        v = min(vals)
        shifted = []
        for e in new_row:
            if e.is_zero():
                shifted.append(e)
                continue
            e = e.with_vars(tuple(sorted(set(e.vars) | {param})))
            idx = e.vars.index(param)
            shifted.append(MPoly(e.vars, {
                key[:idx] + (key[idx] - v,) + key[idx + 1:]: coeff
                for key, coeff in e.terms.items()
            }))
        target = max(i for i, c in enumerate(combo) if c != 0)
        rows[target] = shifted
    raise PreconditionError("NOT_GENERIC_RANK", "limit iteration did not stabilize")


def _row_kernel_vector(numeric_rows: List[List[Fraction]]) -> List[Fraction]:
    """First kernel vector of the 'combine rows' map (rows as a matrix^T)."""
    transposed = [[numeric_rows[i][j] for i in range(len(numeric_rows))]
                  for j in range(len(numeric_rows[0]))]
    basis = rref(transposed).kernel_basis()
    if not basis:
        raise PreconditionError("NOT_GENERIC_RANK", "no kernel combination found")
    return basis[0]
