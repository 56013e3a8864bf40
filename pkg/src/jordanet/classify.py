"""Classification of low-dimensional Jordan subalgebras.

Pencils (m = 2) split into ⌊n/2⌋ diagonalizable families V_i (two generic
eigenvalue groups of sizes i and n - i) plus a nilpotent family.  Nets
(m = 3) in S^4 fall into eight congruence classes, separated here by five
congruence-invariant quantities: radical dimension, associativity, the
dimension of the radical's square, the generic multiplicity partition, and
the number of rank-one points in a two-dimensional radical.  The decision
table is not assumed: it is rebuilt from the catalog's canonical nets and
checked for pairwise distinctness before first use, and inputs whose
invariant vector falls outside the table raise UNRECOGNIZED rather than
guessing.

Multiplicity partitions are always taken relative to the unit U (roots of
det(lam * U - generic element)); plain eigenvalues would not be congruence
invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .catalog import canonical
from .errors import InternalCheckError, PreconditionError
from .exact import squarefree_decomposition
from .jordan import (
    JordanStructure,
    is_associative,
    is_jordan,
    rad_square_dim,
    radical,
    structure_constants,
)
from .linalg import charpoly, inverse
from .spaces import MatSpace, find_invertible, generic_element, make_space
from .varieties import rank_one_pencil

NET_LABELS = ("1a", "1b", "2a1", "2a2", "2b", "3a", "3b1", "3b2")


def generic_multiplicity_partition(space: MatSpace, u=None) -> Tuple[int, ...]:
    """Multiplicities of the generic eigenvalues relative to the unit.

    Computed exactly: squarefree decomposition of det(lam * U - X(t)) over
    the coefficient field QQ(t1..tm); a squarefree factor of lam-degree d
    with multiplicity k contributes d parts equal to k.
    """
    if u is None:
        u = find_invertible(space)[0]
    g = generic_element(space)
    cp = charpoly(inverse(u) @ g)
    _, factors = squarefree_decomposition(cp)
    parts: List[int] = []
    for factor, mult in factors:
        parts.extend([mult] * int(factor.degree()))
    return tuple(sorted(parts, reverse=True))


@dataclass(frozen=True)
class InvariantVector:
    dim_rad: int
    associative: bool
    rad_square: int
    partition: Tuple[int, ...]
    rad_rank_one: Optional[Union[int, str]]  # only defined when dim_rad == 2


def invariant_vector(space: MatSpace, u=None) -> InvariantVector:
    if u is None:
        u = find_invertible(space)[0]
    a = structure_constants(space, u)
    mats, report = radical(a)
    dim_rad = report.dim
    assoc = is_associative(a)
    rad_sq = rad_square_dim(a)
    partition = generic_multiplicity_partition(space, u)
    rank_one = None
    if dim_rad == 2:
        rank_one = rank_one_pencil(make_space(space.n, mats))
    return InvariantVector(dim_rad, assoc, rad_sq, partition, rank_one)


# -- abstract classification (dimension 2 and 3) ---------------------------

def classify_abstract(a: JordanStructure) -> str:
    """Isomorphism type of a 2- or 3-dimensional Jordan algebra."""
    m = a.dim
    if m not in (2, 3):
        raise PreconditionError("UNSUPPORTED_DIM", "abstract classification covers dimensions 2 and 3")
    dim_rad = radical(a)[1].dim
    if m == 2:
        if dim_rad == 0:
            return "1"
        if dim_rad == 1:
            return "2"
        raise PreconditionError("UNRECOGNIZED", f"radical dimension {dim_rad} in dimension 2")
    assoc = is_associative(a)
    if dim_rad == 0:
        return "1a" if assoc else "1b"
    if dim_rad == 1:
        return "2a" if assoc else "2b"
    if dim_rad == 2:
        return "3a" if rad_square_dim(a) == 1 else "3b"
    raise PreconditionError("UNRECOGNIZED", f"radical dimension {dim_rad} in dimension 3")


# -- pencils -----------------------------------------------------------------

@dataclass(frozen=True)
class PencilClass:
    kind: str  # NOT_JORDAN | diagonalizable | nilpotent
    index: Optional[int] = None  # V_index for the diagonalizable families

    @property
    def label(self) -> str:
        if self.kind == "diagonalizable":
            return f"V{self.index}"
        return self.kind


def classify_pencil(space: MatSpace) -> PencilClass:
    """Jordan test plus family label for a pencil (m = 2)."""
    if space.m != 2:
        raise PreconditionError("UNSUPPORTED_DIM", "pencil classification needs m = 2")
    u = find_invertible(space)[0]
    ok, _ = is_jordan(space, u)
    if not ok:
        return PencilClass("NOT_JORDAN")
    a = structure_constants(space, u)
    dim_rad = radical(a)[1].dim
    if dim_rad == 1:
        return PencilClass("nilpotent")
    partition = generic_multiplicity_partition(space, u)
    if len(partition) != 2:
        raise PreconditionError("UNRECOGNIZED",
                                f"Jordan pencil with partition {partition}")
    return PencilClass("diagonalizable", index=min(partition))


# -- nets in S^4 --------------------------------------------------------------

_DECISION_TABLE: Optional[Dict[InvariantVector, str]] = None

_CANONICAL_NET_IDS = {label: f"s4/{label}" for label in NET_LABELS}


def decision_table() -> Dict[InvariantVector, str]:
    """Invariant vector -> label, rebuilt from the canonical nets and
    verified to be collision-free before first use."""
    global _DECISION_TABLE
    if _DECISION_TABLE is None:
        table: Dict[InvariantVector, str] = {}
        for label, cid in _CANONICAL_NET_IDS.items():
            vec = invariant_vector(canonical(cid))
            if vec in table:
                raise InternalCheckError(
                    "INTERNAL", f"invariant collision between {table[vec]} and {label}: {vec}")
            table[vec] = label
        _DECISION_TABLE = table
    return _DECISION_TABLE


def classify_net_S4(space: MatSpace) -> str:
    """Label of a Jordan net in S^4 (one of the eight classes)."""
    if space.n != 4 or space.m != 3:
        raise PreconditionError("UNSUPPORTED_DIM", "net classification needs n = 4, m = 3")
    u = find_invertible(space)[0]
    ok, _ = is_jordan(space, u)
    if not ok:
        raise PreconditionError("NOT_JORDAN", "space is not closed under the product")
    vec = invariant_vector(space, u)
    label = decision_table().get(vec)
    if label is None:
        raise PreconditionError("UNRECOGNIZED", f"invariant vector outside the table: {vec}")
    return label


def classify_type1_partition(space: MatSpace) -> Optional[Tuple[int, int, int]]:
    """Block size partition (k1 >= k2 >= k3) for diagonalizable nets in any
    S^n; None when the net is not of the diagonalizable type."""
    if space.m != 3:
        raise PreconditionError("UNSUPPORTED_DIM", "type-1 partitions need m = 3")
    u = find_invertible(space)[0]
    ok, _ = is_jordan(space, u)
    if not ok:
        raise PreconditionError("NOT_JORDAN", "space is not closed under the product")
    a = structure_constants(space, u)
    if radical(a)[1].dim != 0 or not is_associative(a):
        return None
    partition = generic_multiplicity_partition(space, u)
    if len(partition) != 3:
        raise PreconditionError("UNRECOGNIZED", f"unexpected partition {partition}")
    return partition  # type: ignore[return-value]


# -- copencils in S^3 ---------------------------------------------------------

def classify_copencil_S3(space: MatSpace) -> str:
    """NOT_JORDAN, or the semisimple (L1) vs radical (L2) copencil class.

    The separation by radical dimension is this artifact's own invariant; it
    is validated against both canonical copencils in the test suite.
    """
    if space.n != 3 or space.m != 4:
        raise PreconditionError("UNSUPPORTED_DIM", "copencil classification needs n = 3, m = 4")
    try:
        u = find_invertible(space)[0]
        ok, _ = is_jordan(space, u)
    except PreconditionError as err:
        if err.code == "NOT_REGULAR":
            return "NOT_JORDAN"
        raise
    if not ok:
        return "NOT_JORDAN"
    a = structure_constants(space, u)
    dim_rad = radical(a)[1].dim
    return "CLASS_L1" if dim_rad == 0 else "CLASS_L2"


# -- component counting --------------------------------------------------------

def ejo_component_count(n: int) -> int:
    """Number of irreducible components of the formally-real net locus in S^n.

    Counts partitions of n into three positive parts, plus one for the
    two-identical-blocks family at even n; cross-checked against the
    generating function t^3/((1-t)(1-t^2)(1-t^3)) + t^2/(1-t^2).
    """
    if n < 3:
        raise PreconditionError("UNSUPPORTED_DIM", "component count needs n >= 3")
    count = sum(
        1
        for k1 in range(1, n + 1)
        for k2 in range(1, k1 + 1)
        for k3 in range(1, k2 + 1)
        if k1 + k2 + k3 == n
    )
    count += 1 if n % 2 == 0 else 0
    series = _series_coefficient(n)
    if series != count:
        raise InternalCheckError("INTERNAL",
                                 f"partition count {count} disagrees with series coefficient {series}")
    return count


def _series_coefficient(n: int) -> int:
    """Coefficient of t^n in t^3/((1-t)(1-t^2)(1-t^3)) + t^2/(1-t^2)."""

    def geometric(k: int) -> List[int]:
        out = [0] * (n + 1)
        for j in range(0, n + 1, k):
            out[j] = 1
        return out

    def mul(a: List[int], b: List[int]) -> List[int]:
        out = [0] * (n + 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if i + j > n:
                    break
                out[i + j] += ai * bj
        return out

    first = mul(mul(geometric(1), geometric(2)), geometric(3))
    total = first[n - 3] if n >= 3 else 0
    if n >= 2 and (n - 2) % 2 == 0:
        total += 1
    return total
