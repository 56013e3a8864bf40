"""Polynomial certificates: projective emptiness, rank-one loci, and the
stored certificate catalogs.

``macaulay_emptiness`` is a semi-decision procedure: it stacks the
coefficient vectors of all degree-D multiples of a homogeneous system and
certifies that the system has no projective solution whenever those multiples
span the entire degree-D coefficient space (then every ``x_i^D`` lies in the
ideal, so only the origin survives).  UNKNOWN is a legal answer.

The catalog polynomials are data, not derived objects: they are certificate
polynomials for specific loci (repeated-eigenvalue cubics, the Jordan-net
quadrics in the identity chart, and orbit-separating quadrics in dual
Pluecker coordinates), shipped as text files and pinned by checksum tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import InputError, PreconditionError
from .exact import MPoly, UniPoly, mpoly_gcd, parse_poly, subresultant_gcd
from .jordan import radical, structure_constants
from .linalg import Mat, mat_rank, rref
from .spaces import (
    MatSpace,
    PluckerVector,
    generic_element,
    generic_names,
    integer_sweep,
    plucker,
)

DATA_DIR = Path(__file__).resolve().parent / "data" / "polynomials"


@dataclass
class Certificate:
    kind: str  # CERTIFIED_EMPTY | UNKNOWN | SOLUTIONS_EXIST
    degree: Optional[int] = None
    span_rank: Optional[int] = None
    span_target: Optional[int] = None
    witness: Optional[Tuple[Fraction, ...]] = None


def _monomials(vars: Tuple[str, ...], degree: int) -> List[Tuple[int, ...]]:
    import itertools

    return sorted(
        (e for e in itertools.product(range(degree + 1), repeat=len(vars)) if sum(e) == degree),
        reverse=True,
    )


def macaulay_emptiness(polys: Sequence[MPoly], degree: int,
                       vars: Optional[Sequence[str]] = None) -> Certificate:
    """Degree-``degree`` Macaulay span test for a homogeneous system.

    ``vars`` fixes the ambient projective space; by default it is the union
    of the variables of the system, but callers testing loci inside a larger
    space must pass the full variable set.
    """
    if not polys:
        raise PreconditionError("NOT_HOMOGENEOUS", "empty system")
    for p in polys:
        if not p.is_homogeneous() or p.is_zero():
            raise PreconditionError("NOT_HOMOGENEOUS", "system must be homogeneous and nonzero")
    if vars is None:
        names = set()
        for p in polys:
            names.update(p.support_vars())
        vars = tuple(sorted(names))
    else:
        vars = tuple(sorted(vars))
    cols = _monomials(vars, degree)
    col_index = {mono: k for k, mono in enumerate(cols)}
    rows = []
    for p in polys:
        if not set(p.support_vars()) <= set(vars):
            raise PreconditionError("NOT_HOMOGENEOUS", "system variable outside the declared set")
        p = p.trimmed().with_vars(vars)
        d = int(p.total_degree())
        if d > degree:
            continue
        for mult in _monomials(vars, degree - d):
            row = [Fraction(0)] * len(cols)
            for exps, coeff in p.terms.items():
                key = tuple(a + b for a, b in zip(exps, mult))
                row[col_index[key]] = coeff
            rows.append(row)
    target = len(cols)
    rank = rref(rows).rank if rows else 0
    if rank == target:
        return Certificate("CERTIFIED_EMPTY", degree=degree, span_rank=rank, span_target=target)
    return Certificate("UNKNOWN", degree=degree, span_rank=rank, span_target=target)


def rank_one_system(space: MatSpace) -> List[MPoly]:
    """All 2x2 minors of the generic element: the rank <= 1 locus equations."""
    g = generic_element(space)
    n = space.n
    minors = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                for l in range(k + 1, n):
                    if (k, l) < (i, j):
                        continue
                    minor = g[i, k] * g[j, l] - g[i, l] * g[j, k]
                    if not minor.is_zero():
                        minors.append(minor)
    return minors


def rank_one_locus_certificate(space: MatSpace, max_degree: int = 6) -> Certificate:
    """Sweep Macaulay degrees 2..max_degree for the rank-one locus."""
    system = rank_one_system(space)
    vars = tuple(sorted(generic_names(space.m)))
    if not system:
        return Certificate("SOLUTIONS_EXIST")
    cert = Certificate("UNKNOWN")
    for d in range(2, max_degree + 1):
        cert = macaulay_emptiness(system, d, vars=vars)
        if cert.kind == "CERTIFIED_EMPTY":
            return cert
    return cert


def rank_one_pencil(space: MatSpace) -> Union[int, str]:
    """Number of distinct projective rank-one points of a pencil, or "ALL".

    The GCD of all 2x2-minor binary forms is itself a binary form; the answer
    is the degree of its squarefree part, counted projectively over the
    complex numbers (so irrational and complex root pairs are included).
    """
    if space.m != 2:
        raise PreconditionError("UNSUPPORTED_DIM", "pencil operation needs m = 2")
    minors = rank_one_system(space)
    if not minors:
        return "ALL"
    g = MPoly.zero()
    for minor in minors:
        g = mpoly_gcd(g, minor)
    if g.is_constant():
        return 0
    vars = tuple(sorted(generic_names(2)))
    g = g.with_vars(tuple(sorted(set(g.vars) | set(vars))))
    i1 = g.vars.index(vars[0])
    i2 = g.vars.index(vars[1])
    a = min(e[i1] for e in g.terms)
    b = min(e[i2] for e in g.terms)
    stripped = MPoly(g.vars, {
        tuple(x - (a if k == i1 else b if k == i2 else 0) for k, x in enumerate(e)): c
        for e, c in g.terms.items()
    })
    count = (1 if a > 0 else 0) + (1 if b > 0 else 0)
    if stripped.is_constant():
        return count
    w = UniPoly.from_mpoly(stripped.substitute({vars[1]: 1}).trimmed(), vars[0])
    d = int(w.degree())
    sf = subresultant_gcd(w, w.derivative())
    return count + d - int(sf.degree())


# -- stored certificate catalogs -------------------------------------------

#: catalog id -> (file name, input convention)
CATALOGS: Dict[str, Tuple[str, str]] = {
    "double_eigenvalue_cubics": ("double_eigenvalue_cubics.txt", "traceless_s3"),
    "jordan_net_quadrics": ("jordan_net_quadrics.txt", "net_with_identity_s3"),
    "plucker_spin_orbit_quadric": ("plucker_spin_orbit_quadric.txt", "plucker_s4"),
    "plucker_diagonal_orbit_quadric": ("plucker_diagonal_orbit_quadric.txt", "plucker_s4"),
    "plucker_separator_2a1_quadric": ("plucker_separator_2a1_quadric.txt", "plucker_s4"),
    "plucker_veronese_orbit_quadric": ("plucker_veronese_orbit_quadric.txt", "plucker_s4"),
}

_CATALOG_MEMO: Dict[str, List[MPoly]] = {}


def catalog_polynomials(catalog_id: str) -> List[MPoly]:
    if catalog_id not in CATALOGS:
        raise InputError("UNKNOWN_ID", f"no polynomial catalog {catalog_id!r}")
    if catalog_id not in _CATALOG_MEMO:
        fname, _ = CATALOGS[catalog_id]
        polys = []
        for line in (DATA_DIR / fname).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            polys.append(parse_poly(line))
        _CATALOG_MEMO[catalog_id] = polys
    return _CATALOG_MEMO[catalog_id]


def catalog_eval(catalog_id: str, value) -> List[Fraction]:
    """Evaluate every polynomial of a catalog at a matrix, net, or Pluecker
    vector, according to the catalog's input convention."""
    if catalog_id not in CATALOGS:
        raise InputError("UNKNOWN_ID", f"no polynomial catalog {catalog_id!r}")
    _, convention = CATALOGS[catalog_id]
    polys = catalog_polynomials(catalog_id)
    if convention == "traceless_s3":
        assignment = _traceless_s3_assignment(value)
    elif convention == "net_with_identity_s3":
        assignment = _net_with_identity_assignment(value)
    else:
        assignment = _plucker_assignment(value)
    out = []
    for p in polys:
        total = Fraction(0)
        for exps, coeff in p.terms.items():
            term = coeff
            for name, e in zip(p.vars, exps):
                if e:
                    term *= assignment.get(name, Fraction(0)) ** e
            total += term
        out.append(total)
    return out


def _traceless_s3_assignment(value) -> Dict[str, Fraction]:
    if not isinstance(value, Mat) or value.rows != 3 or not value.is_symmetric():
        raise PreconditionError("CONVENTION_MISMATCH", "need a symmetric 3 x 3 matrix")
    if value.trace() != 0:
        raise PreconditionError("CONVENTION_MISMATCH", "matrix must be traceless")
    return {f"x{i + 1}{j + 1}": value[i, j] for i in range(3) for j in range(i, 3)}


def _net_with_identity_assignment(value) -> Dict[str, Fraction]:
    if not isinstance(value, MatSpace) or value.n != 3 or value.m != 3:
        raise PreconditionError("CONVENTION_MISMATCH", "need a net of 3 x 3 matrices")
    if value.basis[0] != Mat.identity(3):
        raise PreconditionError("CONVENTION_MISMATCH",
                                "basis must be (identity, X, Y) for this catalog")
    out = {}
    for prefix, mat in zip(("x", "y"), value.basis[1:]):
        for i in range(3):
            for j in range(i, 3):
                out[f"{prefix}{i + 1}{j + 1}"] = mat[i, j]
    return out


def _plucker_assignment(value) -> Dict[str, Fraction]:
    if isinstance(value, MatSpace):
        if value.n != 4 or value.m != 3:
            raise PreconditionError("CONVENTION_MISMATCH", "need a net of 4 x 4 matrices")
        value = plucker(value)
    if not isinstance(value, PluckerVector) or value.m != 3 or value.n != 4:
        raise PreconditionError("CONVENTION_MISMATCH", "need Pluecker data for a net in S^4")
    return {f"p{i}{j}{k}": v for (i, j, k), v in value.values.items()}


# -- minimum-rank bounds ----------------------------------------------------

@dataclass
class MinRankBounds:
    upper: int
    lower: int
    certificate: Optional[Certificate]
    witness: Optional[Mat]

    @property
    def tau(self) -> Optional[int]:
        return self.upper if self.upper == self.lower else None


def min_rank_bounds(space: MatSpace, trials: int = 60, max_degree: int = 6) -> MinRankBounds:
    """Bracket the minimum rank of a nonzero element.

    Upper bound: best rank among basis elements, radical elements (when the
    space is a Jordan algebra) and deterministic integer combinations.  Lower
    bound: 2 when the rank-one locus is certified empty, else 1.  For a line
    (m = 1) the minimum rank is exact since every nonzero element is a
    multiple of the generator.
    """
    if space.m == 1:
        r = mat_rank(space.basis[0])
        return MinRankBounds(r, r, None, space.basis[0])

    best: Optional[int] = None
    witness = None
    candidates: List[Mat] = list(space.basis)
    try:
        structure = structure_constants(space)
        mats, _ = radical(structure)
        candidates.extend(mats)
    except PreconditionError:
        pass
    count = 0
    for tup in integer_sweep(space.m):
        candidates.append(space.element(tup))
        count += 1
        if count >= trials:
            break
    for cand in candidates:
        if all(x == 0 for row in cand.data for x in row):
            continue
        r = mat_rank(cand)
        if best is None or r < best:
            best, witness = r, cand

    cert = rank_one_locus_certificate(space, max_degree=max_degree)
    lower = 2 if cert.kind == "CERTIFIED_EMPTY" else 1
    if best == 1:
        lower = 1
    return MinRankBounds(best, min(lower, best), cert, witness)
