"""The Jordan product on symmetric matrices and algebra-level analysis.

For an invertible symmetric U, the product is

    X * Y = (X U^{-1} Y + Y U^{-1} X) / 2,

commutative with unit U and power-associative but not associative.  A
subspace closed under this product (for an invertible U inside it) is a
Jordan subalgebra; equivalently its reciprocal variety is again a linear
space, and the two conditions are cross-checked throughout the test suite.

Radicals are computed as the kernel of the trace form (x, y) -> tr(L_{x*y}),
the characteristic-zero semisimplicity criterion; a verification report then
confirms the kernel is an ideal of nilpotents, so a disagreement between the
two radical definitions can never produce a silent wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InternalCheckError, PreconditionError
from .linalg import Mat, det, express_in_rows, inverse, rref
from .prng import SplitMix64
from .spaces import (
    MatSpace,
    contains,
    find_invertible,
    integer_sweep,
    is_regular,
    residue_mod_space,
    sym_dim,
    unvectorize,
    vectorize,
)


def jordan_product(x: Mat, y: Mat, u: Mat) -> Mat:
    """X * Y = (X U^{-1} Y + Y U^{-1} X) / 2 with unit U."""
    for m in (x, y, u):
        if not m.is_symmetric():
            raise PreconditionError("NOT_SYMMETRIC", "Jordan product needs symmetric matrices")
    if det(u) == 0:
        raise PreconditionError("SINGULAR_U", "unit must be invertible")
    uinv = inverse(u)
    return _product(x, y, uinv)


def _product(x: Mat, y: Mat, uinv: Mat) -> Mat:
    return (x @ uinv @ y + y @ uinv @ x).scale(Fraction(1, 2))


def _resolve_unit(space: MatSpace, u: Optional[Mat]) -> Mat:
    if not is_regular(space):
        raise PreconditionError("NOT_REGULAR", "space contains no invertible matrix")
    if u is None:
        return find_invertible(space)[0]
    if contains(space, u) is None:
        raise PreconditionError("U_NOT_IN_SPACE", "unit must lie in the space")
    if det(u) == 0:
        raise PreconditionError("SINGULAR_U", "unit must be invertible")
    return u


@dataclass
class JordanWitness:
    """Failure witness: basis product (i, j) escapes the space."""

    i: int
    j: int
    product: Mat
    residue: Mat


def is_jordan(space: MatSpace, u: Optional[Mat] = None) -> Tuple[bool, Optional[JordanWitness]]:
    """Closure test: every pairwise basis product must stay in the space."""
    u = _resolve_unit(space, u)
    uinv = inverse(u)
    for i in range(space.m):
        for j in range(i, space.m):
            p = _product(space.basis[i], space.basis[j], uinv)
            if contains(space, p) is None:
                return False, JordanWitness(i, j, p, residue_mod_space(space, p))
    return True, None


def jordan_closure(space: MatSpace, u: Mat) -> MatSpace:
    """Smallest subspace containing the space and closed under the product.

    Saturates by adjoining pairwise products of the current basis and
    re-echelonizing; the dimension strictly grows each round, so at most
    binom(n+1, 2) rounds are needed.
    """
    u = _resolve_unit(space, u)
    uinv = inverse(u)
    n = space.n
    cap = sym_dim(n)
    rows = [vectorize(b) for b in space.basis]
    for _ in range(cap + 1):
        ech = rref(rows)
        basis = [unvectorize(n, r) for r in ech.rows]
        new_rows = [list(r) for r in ech.rows]
        grew = False
        for i in range(len(basis)):
            for j in range(i, len(basis)):
                p = _product(basis[i], basis[j], uinv)
                vec = vectorize(p)
                red = rref(new_rows).reduce_vector(vec)
                if any(c != 0 for c in red):
                    new_rows.append(red)
                    grew = True
        if not grew:
            return MatSpace(n, basis)
        rows = new_rows
    raise InternalCheckError("INTERNAL", "closure failed to stabilize")


@dataclass
class JordanStructure:
    """A Jordan subalgebra with its structure-constant tensor.

    ``tensor[i][j]`` holds the coordinates of basis_i * basis_j in the basis.
    """

    space: MatSpace
    unit: Mat
    unit_coords: Tuple[Fraction, ...]
    tensor: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    _radical: Optional[List[List[Fraction]]] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.space.m

    def multiply_coords(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
        m = self.dim
        out = [Fraction(0)] * m
        for i in range(m):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(m):
                bj = b[j]
                if bj == 0:
                    continue
                c = self.tensor[i][j]
                f = ai * bj
                for k in range(m):
                    if c[k] != 0:
                        out[k] += f * c[k]
        return out

    def operator_matrix(self, coords: Sequence[Fraction]) -> Mat:
        """Matrix of left multiplication by the element with these coordinates."""
        m = self.dim
        cols = []
        for j in range(m):
            basis_j = [Fraction(int(t == j)) for t in range(m)]
            cols.append(self.multiply_coords(coords, basis_j))
        return Mat([[cols[j][k] for j in range(m)] for k in range(m)])

    def element(self, coords: Sequence[Fraction]) -> Mat:
        return self.space.element(coords)

    def to_json(self) -> dict:
        """JSON-ready dict: basis, unit coordinates, structure tensor, radical."""
        from .exact import frac_str

        radical_coords = self._radical if self._radical is not None else None
        return {
            "n": self.space.n,
            "m": self.dim,
            "basis": [[[frac_str(b[i, j]) for j in range(self.space.n)]
                       for i in range(self.space.n)] for b in self.space.basis],
            "unit_coordinates": [frac_str(c) for c in self.unit_coords],
            "tensor": [[[frac_str(c) for c in row] for row in plane]
                       for plane in self.tensor],
            "radical_coordinates": None if radical_coords is None
            else [[frac_str(c) for c in vec] for vec in radical_coords],
        }


def structure_constants(space: MatSpace, u: Optional[Mat] = None,
                        axiom_trials: int = 20, seed: int = 0) -> JordanStructure:
    """Structure tensor of a Jordan subalgebra, with the Jordan axiom verified
    on randomized pairs; raises NOT_JORDAN when the space is not closed."""
    u = _resolve_unit(space, u)
    uinv = inverse(u)
    m = space.m
    tensor = []
    for i in range(m):
        row = []
        for j in range(m):
            if j < i:
                row.append(tensor[j][i])
                continue
            p = _product(space.basis[i], space.basis[j], uinv)
            coords = contains(space, p)
            if coords is None:
                raise PreconditionError("NOT_JORDAN", f"basis product ({i}, {j}) escapes the space")
            row.append(tuple(coords))
        tensor.append(tuple(row))
    unit_coords = tuple(contains(space, u))
    structure = JordanStructure(space, u, unit_coords, tuple(tensor))
    _verify_axioms(structure, uinv, axiom_trials, seed)
    return structure


def _verify_axioms(a: JordanStructure, uinv: Mat, trials: int, seed: int):
    rng = SplitMix64(seed)
    m = a.dim
    for _ in range(trials):
        x = a.element([rng.int_between(-4, 4) for _ in range(m)])
        y = a.element([rng.int_between(-4, 4) for _ in range(m)])
        if _product(a.unit, x, uinv) != x:
            raise InternalCheckError("INTERNAL", "unit law failed")
        x2 = _product(x, x, uinv)
        lhs = _product(x2, _product(x, y, uinv), uinv)
        rhs = _product(x, _product(x2, y, uinv), uinv)
        if lhs != rhs:
            raise InternalCheckError("INTERNAL", "Jordan axiom failed")


@dataclass
class RadicalReport:
    dim: int
    basis_coords: List[List[Fraction]]
    ideal_ok: bool
    nilpotency_ok: bool


def radical(a: JordanStructure) -> Tuple[List[Mat], RadicalReport]:
    """Radical as the kernel of the trace form tr(L_{x*y}).

    The report re-verifies, in terms of the original nilpotency definition,
    that the kernel is an ideal and that each kernel element X satisfies
    X^(k+1) = 0 where k is the kernel dimension; failures raise rather than
    return, because they would mean the two radical definitions diverge.
    """
    if a._radical is None:
        m = a.dim
        traces = []
        for k in range(m):
            basis_k = [Fraction(int(t == k)) for t in range(m)]
            traces.append(a.operator_matrix(basis_k).trace())
        gram = []
        for i in range(m):
            row = []
            for j in range(m):
                val = Fraction(0)
                for k in range(m):
                    c = a.tensor[i][j][k]
                    if c != 0:
                        val += c * traces[k]
                row.append(val)
            gram.append(row)
        a._radical = rref(gram).kernel_basis()
    coords = a._radical
    k = len(coords)
    ideal_ok = True
    for r in coords:
        for j in range(a.dim):
            basis_j = [Fraction(int(t == j)) for t in range(a.dim)]
            prod = a.multiply_coords(r, basis_j)
            if any(c != 0 for c in prod) and express_in_rows(coords, prod) is None:
                ideal_ok = False
    if not ideal_ok:
        raise InternalCheckError("IDEAL_CHECK_FAILED", "trace-form kernel is not an ideal")
    nilpotency_ok = True
    for r in coords:
        power = list(r)
        for _ in range(k):
            power = a.multiply_coords(power, r)
        if any(c != 0 for c in power):
            nilpotency_ok = False
    if not nilpotency_ok:
        raise InternalCheckError("NILPOTENCY_CHECK_FAILED",
                                 "radical element is not nilpotent of the expected order")
    mats = [a.element(c) for c in coords]
    return mats, RadicalReport(k, coords, ideal_ok, nilpotency_ok)


def radical_dim(a: JordanStructure) -> int:
    return radical(a)[1].dim


def is_associative(a: JordanStructure) -> bool:
    """(b_i * b_j) * b_k = b_i * (b_j * b_k) on all basis triples."""
    m = a.dim
    unit_vecs = [[Fraction(int(t == i)) for t in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(m):
            ij = a.multiply_coords(unit_vecs[i], unit_vecs[j])
            for k in range(m):
                jk = a.multiply_coords(unit_vecs[j], unit_vecs[k])
                if a.multiply_coords(ij, unit_vecs[k]) != a.multiply_coords(unit_vecs[i], jk):
                    return False
    return True


def rad_square_dim(a: JordanStructure) -> int:
    """Dimension of the span of pairwise products of radical elements."""
    _, report = radical(a)
    coords = report.basis_coords
    if not coords:
        return 0
    rows = []
    for i in range(len(coords)):
        for j in range(i, len(coords)):
            rows.append(a.multiply_coords(coords[i], coords[j]))
    return rref(rows).rank


def peirce(a: JordanStructure, idempotents: Sequence[Mat]) -> Dict[Tuple[int, int], List[Mat]]:
    """Joint eigenspace decomposition for orthogonal idempotents summing to U.

    Piece (i, i) collects Y with X_i * Y = Y; piece (i, j) for i < j collects
    Y with 2 X_i * Y = 2 X_j * Y = Y.  Dimensions always sum to the algebra
    dimension; a shortfall raises, it cannot silently truncate.
    """
    uinv = inverse(a.unit)
    d = len(idempotents)
    coords = []
    for x in idempotents:
        c = contains(a.space, x)
        if c is None:
            raise PreconditionError("NOT_ORTHOGONAL_IDEMPOTENTS", "idempotent outside the algebra")
        coords.append(c)
        if _product(x, x, uinv) != x:
            raise PreconditionError("NOT_ORTHOGONAL_IDEMPOTENTS", "element is not idempotent")
    for i in range(d):
        for j in range(i + 1, d):
            if not _is_zero_mat(_product(idempotents[i], idempotents[j], uinv)):
                raise PreconditionError("NOT_ORTHOGONAL_IDEMPOTENTS", "idempotents are not orthogonal")
    total = idempotents[0]
    for x in idempotents[1:]:
        total = total + x
    if total != a.unit:
        raise PreconditionError("NOT_ORTHOGONAL_IDEMPOTENTS", "idempotents do not sum to the unit")

    m = a.dim
    ops = [a.operator_matrix(c) for c in coords]
    ident = Mat.identity(m)
    pieces: Dict[Tuple[int, int], List[Mat]] = {}
    used = 0
    for i in range(d):
        kernel = rref((ops[i] - ident).data).kernel_basis()
        pieces[(i, i)] = [a.element(v) for v in kernel]
        used += len(kernel)
        for j in range(i + 1, d):
            stacked = (ops[i].scale(2) - ident).data + (ops[j].scale(2) - ident).data
            kernel = rref(list(stacked)).kernel_basis()
            pieces[(i, j)] = [a.element(v) for v in kernel]
            used += len(kernel)
    if used != m:
        raise InternalCheckError("INTERNAL", f"Peirce pieces span {used} of {m} dimensions")
    return pieces


def _is_zero_mat(m: Mat) -> bool:
    return all(x == 0 for row in m.data for x in row)


def check_reciprocal_identity(space: MatSpace, u: Optional[Mat] = None,
                              trials: int = 10) -> Tuple[bool, Optional[Mat]]:
    """Sampled test of: inverses of elements land in U^{-1} L U^{-1}.

    Walks the deterministic integer sweep, keeps the first ``trials``
    invertible elements X, and checks U X^{-1} U back in the space (an exact
    reformulation avoiding the conjugated basis).  Points with every
    coordinate nonzero are tried first: sparse coordinate patterns often sit
    inside well-behaved subalgebras and would mask a failure.  Returns
    (ok, witness).
    """
    u = _resolve_unit(space, u)
    found = 0

    def candidates():
        for tup in integer_sweep(space.m, max_norm=space.n + 2):
            if all(c != 0 for c in tup):
                yield tup
        yield from integer_sweep(space.m)

    for tup in candidates():
        x = space.element(tup)
        if det(x) == 0:
            continue
        found += 1
        xinv = inverse(x)
        if contains(space, u @ xinv @ u) is None:
            return False, x
        if found >= trials:
            break
    if found == 0:
        raise PreconditionError("NOT_REGULAR", "no invertible sample points found")
    return True, None
