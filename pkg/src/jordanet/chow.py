"""Chow matrices of nets and the generic Chow-form determinant.

For a net (or any m-dimensional space) L with basis B_1..B_m, write the
adjugate of the generic element t_1 B_1 + ... + t_m B_m.  Each entry is a
homogeneous polynomial of degree n-1 in the t's; collecting coefficients
gives the Chow matrix, with one row per upper-triangle position (i, j) and
one column per degree-(n-1) monomial.  For m = 3 the matrix is square of
size binom(n+1, 2); its rank equals the dimension of the linear span of the
reciprocal variety, and its left kernel consists of the linear forms that
vanish on all inverses.

The fully symbolic n = 3 determinant (degree 12 in the 18 entry variables)
is expensive, so it is computed once and cached on disk keyed by a content
hash of the construction.
"""

from __future__ import annotations

import hashlib
import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Sequence, Tuple

from .errors import PreconditionError
from .exact import MPoly, parse_poly
from .linalg import Mat, adjugate, det, det_laplace, mat_rank, rref
from .spaces import (
    MatSpace,
    generic_element,
    generic_names,
    integer_sweep,
    is_regular,
    sym_pairs,
    vectorize,
)


def monomial_columns(m: int, degree: int) -> List[Tuple[int, ...]]:
    """Exponent tuples of total degree ``degree`` in graded-lex order
    (t1 > t2 > ...), e.g. for m = 3, degree 2: x^2, xy, xz, y^2, yz, z^2."""
    tuples = [
        exps
        for exps in itertools.product(range(degree + 1), repeat=m)
        if sum(exps) == degree
    ]
    return sorted(tuples, reverse=True)


@dataclass
class ChowMatrix:
    n: int
    m: int
    row_labels: List[Tuple[int, int]]  # 1-based symmetric positions
    col_monomials: List[Tuple[int, ...]]
    entries: List[List]  # Fraction rows (numeric net) or MPoly rows (symbolic)

    def as_mat(self) -> Mat:
        return Mat(self.entries)


def chow_matrix(space: MatSpace) -> ChowMatrix:
    """Chow matrix of a numeric space; square exactly when m = 3."""
    names = generic_names(space.m)
    adj = adjugate(generic_element(space, names))
    cols = monomial_columns(space.m, space.n - 1)
    rows = []
    labels = []
    for i, j in sym_pairs(space.n):
        labels.append((i + 1, j + 1))
        poly = adj[i, j]
        row = [
            poly.coefficient({name: e for name, e in zip(names, mono)})
            for mono in cols
        ]
        rows.append(row)
    return ChowMatrix(space.n, space.m, labels, cols, rows)


def chow_rank(space: MatSpace) -> int:
    if not is_regular(space):
        raise PreconditionError("NOT_REGULAR", "Chow rank needs a regular space")
    return mat_rank(chow_matrix(space).as_mat())


def chow_minors_vanish(space: MatSpace, k: int) -> bool:
    """True iff every (k+1) x (k+1) minor vanishes, i.e. rank <= k."""
    return mat_rank(chow_matrix(space).as_mat()) <= k


def chow_kernel_forms(space: MatSpace) -> List[MPoly]:
    """Left-kernel vectors rendered as linear forms in z_ij.

    Normalized deterministically: reduced echelon basis of the kernel,
    scaled to integer coefficients of content one with the first nonzero
    coefficient positive.
    """
    if not is_regular(space):
        raise PreconditionError("NOT_REGULAR", "kernel forms need a regular space")
    cm = chow_matrix(space)
    kernel = rref(cm.as_mat().transpose().data).kernel_basis()
    if not kernel:
        return []
    reduced = rref(kernel).rows
    forms = []
    for vec in reduced:
        form = MPoly.zero()
        for (i, j), c in zip(cm.row_labels, vec):
            if c == 0:
                continue
            form = form + MPoly.var(f"z{i}{j}").scale(c)
        forms.append(form.sign_normalized())
    return forms


def sampled_reciprocal_span(space: MatSpace, trials: int) -> int:
    """Rank of stacked vectorized adjugates at deterministic invertible points.

    Independent oracle for ``chow_rank``: the adjugates of elements of the
    space sweep out the column space of the Chow matrix.
    """
    if not is_regular(space):
        raise PreconditionError("NOT_REGULAR", "need a regular space")
    rows = []
    for tup in integer_sweep(space.m):
        x = space.element(tup)
        if det(x) == 0:
            continue
        rows.append(vectorize(adjugate(x)))
        if len(rows) >= trials:
            break
    return rref(rows).rank


# -- fully symbolic n = 3 construction -------------------------------------

def generic_symmetric(n: int, prefix: str) -> Mat:
    """Symmetric matrix of fresh variables prefix_ij (1-based, i <= j)."""
    entries = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = MPoly.var(f"{prefix}{i + 1}{j + 1}")
            entries[i][j] = v
            entries[j][i] = v
    return Mat(entries)


def chow_matrix_generic(n: int = 3, prefixes: Sequence[str] = ("x", "y", "z")) -> ChowMatrix:
    """Chow matrix of the generic net spanned by symbolic symmetric matrices."""
    m = len(prefixes)
    mats = [generic_symmetric(n, p) for p in prefixes]
    weight_names = tuple(f"w{k + 1}" for k in range(m))
    acc = None
    for name, mat in zip(weight_names, mats):
        w = MPoly.var(name)
        scaled = mat.map(lambda e, _w=w: e * _w)
        acc = scaled if acc is None else acc + scaled
    adj = adjugate(acc)
    cols = monomial_columns(m, n - 1)
    rows = []
    labels = []
    for i, j in sym_pairs(n):
        labels.append((i + 1, j + 1))
        buckets = adj[i, j].split_by_vars(weight_names)
        row = [buckets.get(mono, MPoly.zero()) for mono in cols]
        rows.append(row)
    return ChowMatrix(n, m, labels, cols, rows)


def _cache_dir() -> Path:
    env = os.environ.get("JORDANET_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "jordanet"


_DET_MEMO = {}


def chow_det_generic(n: int = 3, cache: bool = True) -> MPoly:
    """Determinant of the fully symbolic Chow matrix (only n = 3 supported).

    Degree 12 in the 18 variables x11..z33; the result is cached in memory
    and on disk in the canonical text format.
    """
    if n != 3:
        raise PreconditionError("UNSUPPORTED_DIM", "symbolic Chow determinant is n = 3 only")
    key_src = f"chow-det:n={n}:prefixes=x,y,z:cols=grlex-desc:rows=upper-tri"
    key = hashlib.sha256(key_src.encode()).hexdigest()[:24]
    if key in _DET_MEMO:
        return _DET_MEMO[key]
    path = _cache_dir() / f"{key}.txt"
    if cache and path.exists():
        poly = parse_poly(path.read_text())
        _DET_MEMO[key] = poly
        return poly
    cm = chow_matrix_generic(n)
    poly = det_laplace(cm.as_mat())
    _DET_MEMO[key] = poly
    if cache:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(str(poly))
        except OSError:
            pass
    return poly


def chow_det_eval_at_net(space: MatSpace) -> Fraction:
    """Evaluate the generic n = 3 Chow determinant at a net's basis entries."""
    if space.n != 3 or space.m != 3:
        raise PreconditionError("UNSUPPORTED_DIM", "evaluation needs a net of 3 x 3 matrices")
    poly = chow_det_generic(3)
    assignment = {}
    for prefix, mat in zip(("x", "y", "z"), space.basis):
        for i in range(3):
            for j in range(i, 3):
                assignment[f"{prefix}{i + 1}{j + 1}"] = mat[i, j]
    values = [assignment.get(v, Fraction(0)) for v in poly.vars]
    total = Fraction(0)
    for exps, coeff in poly.terms.items():
        term = coeff
        for val, e in zip(values, exps):
            if e:
                term *= val ** e
            if term == 0:
                break
        total += term
    return total
