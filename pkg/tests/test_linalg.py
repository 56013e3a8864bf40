from fractions import Fraction

import pytest

from jordanet.exact import MPoly, UniPoly, parse_poly
from jordanet.linalg import (
    Mat,
    adjugate,
    adjugate_cofactor,
    charpoly,
    det,
    det_bareiss,
    det_laplace,
    express_in_rows,
    inverse,
    minpoly,
    rref,
)
from jordanet.prng import SplitMix64


def P(s):
    return parse_poly(s)


def U(s):
    return UniPoly.from_mpoly(parse_poly(s), "lam")


def poly_mat(rows):
    return Mat([[P(x) if isinstance(x, str) else MPoly.const(x) for x in row] for row in rows])


def random_scalar_mat(rng, n, lo=-5, hi=5):
    return Mat.from_ints([[rng.int_between(lo, hi) for _ in range(n)] for _ in range(n)])


def random_poly_mat(rng, n, vars=("s", "t")):
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            terms = {}
            for _ in range(2):
                exps = tuple(rng.int_between(0, 1) for _ in vars)
                terms[exps] = terms.get(exps, 0) + rng.int_between(-3, 3)
            row.append(MPoly.from_terms(vars, terms))
        rows.append(row)
    return Mat(rows)


class TestRref:
    def test_identity(self):
        e = rref(Mat.identity(3).data)
        assert e.rank == 3
        assert e.kernel_basis() == []

    def test_rank_one(self):
        e = rref(Mat.from_ints([[1, 2], [2, 4]]).data)
        assert e.rank == 1
        assert e.kernel_basis() == [[Fraction(-2), Fraction(1)]]

    def test_rank_nullity(self):
        rng = SplitMix64(3)
        for _ in range(20):
            rows = rng.int_between(1, 5)
            cols = rng.int_between(1, 5)
            m = [[rng.int_between(-3, 3) for _ in range(cols)] for _ in range(rows)]
            e = rref(m)
            assert e.rank + len(e.kernel_basis()) == cols

    def test_express_in_rows(self):
        rows = [[1, 0, 1], [0, 1, 1]]
        rows = [[Fraction(x) for x in r] for r in rows]
        assert express_in_rows(rows, [Fraction(2), Fraction(3), Fraction(5)]) == [2, 3]
        assert express_in_rows(rows, [Fraction(0), Fraction(0), Fraction(1)]) is None


class TestDet:
    def test_small(self):
        assert det(Mat.from_ints([[1, 2], [3, 4]])) == -2

    def test_poly_double_conic(self):
        # block-diagonal with two copies of [[x,y],[y,z]]
        m = poly_mat([
            ["x", "y", 0, 0],
            ["y", "z", 0, 0],
            [0, 0, "x", "y"],
            [0, 0, "y", "z"],
        ])
        assert det(m) == P("x^2*z^2 - 2*x*y^2*z + y^4")

    def test_bareiss_equals_laplace_scalar(self):
        rng = SplitMix64(17)
        for n in (2, 3, 4, 5, 6):
            m = random_scalar_mat(rng, n)
            assert det_bareiss(m) == det_laplace(m)

    def test_bareiss_equals_laplace_poly(self):
        rng = SplitMix64(29)
        for n in (2, 3, 4):
            for _ in range(3):
                m = random_poly_mat(rng, n)
                assert det_bareiss(m) == det_laplace(m)
        m = random_poly_mat(rng, 6)
        assert det_bareiss(m) == det_laplace(m)

    def test_singular(self):
        assert det(Mat.from_ints([[1, 2], [2, 4]])) == 0


class TestAdjugate:
    def test_diagonal(self):
        m = poly_mat([["a", 0, 0], [0, "b", 0], [0, 0, "c"]])
        adj = adjugate(m)
        assert adj == poly_mat([["b*c", 0, 0], [0, "a*c", 0], [0, 0, "a*b"]])

    def test_identity(self):
        for n in (1, 2, 4):
            assert adjugate(Mat.identity(n)) == Mat.identity(n)

    def test_matches_cofactor_oracle(self):
        rng = SplitMix64(31)
        for n in (2, 3, 4):
            m = random_poly_mat(rng, n)
            assert adjugate(m) == adjugate_cofactor(m)
        for n in (2, 3, 5):
            m = random_scalar_mat(rng, n)
            assert adjugate(m) == adjugate_cofactor(m)

    def test_fundamental_identity(self):
        rng = SplitMix64(37)
        for n in (2, 3, 4):
            m = random_scalar_mat(rng, n)
            d = det(m)
            assert m @ adjugate(m) == Mat.identity(n).scale(d)


class TestCharpoly:
    def test_swap_matrix(self):
        assert charpoly(Mat.from_ints([[0, 1], [1, 0]])) == U("lam^2 - 1")

    def test_zero_matrix(self):
        assert charpoly(Mat.zero(2, 2)) == U("lam^2")

    def test_nilpotent_tower_net(self):
        # generic element of the net x*Diag(J3,1) + y*(E12+E21) + z*E11;
        # frozen value cross-checked against a cofactor-expansion determinant
        m = poly_mat([
            ["z", "y", "x", 0],
            ["y", "x", 0, 0],
            ["x", 0, 0, 0],
            [0, 0, 0, "x"],
        ])
        cp = charpoly(m)
        expected = U("lam - x") * U("lam^3 - x*lam^2 - z*lam^2 + x*z*lam - x^2*lam - y^2*lam + x^3")
        assert cp == expected
        # independent oracle: det(lam*I - M) by memoized Laplace expansion
        lam = P("lam")
        shifted = Mat([
            [lam - m[i, j] if i == j else -m[i, j] for j in range(4)]
            for i in range(4)
        ])
        assert cp.to_mpoly() == det_laplace(shifted)

    def test_cayley_hamilton(self):
        rng = SplitMix64(43)
        for n in (2, 3, 4, 5, 6):
            m = random_scalar_mat(rng, n, -3, 3)
            cp = charpoly(m)
            acc = Mat.zero(n, n)
            power = Mat.identity(n)
            for c in cp.coeffs:
                acc = acc + power.scale(c.constant_value())
                power = power @ m
            assert acc == Mat.zero(n, n)

    def test_constant_term_is_det(self):
        rng = SplitMix64(47)
        for n in (2, 3, 4):
            m = random_scalar_mat(rng, n)
            cp = charpoly(m)
            assert cp.coeff(0).constant_value() == (-1) ** n * det(m)


class TestMinpoly:
    def test_two_blocks(self):
        m = Mat.from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
        assert minpoly(m) == U("lam^2 - 1")

    def test_identity(self):
        assert minpoly(Mat.identity(3)) == U("lam - 1")

    def test_distinct_eigenvalues(self):
        m = Mat.from_ints([[3, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
        assert minpoly(m) == U("lam^2 - 2*lam - 3")

    def test_annihilates(self):
        rng = SplitMix64(53)
        for _ in range(5):
            m = random_scalar_mat(rng, 4, -2, 2)
            mp = minpoly(m)
            acc = Mat.zero(4, 4)
            power = Mat.identity(4)
            for c in mp.coeffs:
                acc = acc + power.scale(c.constant_value())
                power = power @ m
            assert acc == Mat.zero(4, 4)


class TestInverse:
    def test_round_trip(self):
        rng = SplitMix64(59)
        found = 0
        while found < 5:
            m = random_scalar_mat(rng, 4)
            if det(m) == 0:
                continue
            found += 1
            assert m @ inverse(m) == Mat.identity(4)

    def test_singular_raises(self):
        from jordanet.errors import PreconditionError

        with pytest.raises(PreconditionError):
            inverse(Mat.from_ints([[1, 2], [2, 4]]))
