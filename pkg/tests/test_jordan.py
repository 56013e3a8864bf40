from fractions import Fraction

import pytest

from jordanet.errors import PreconditionError
from jordanet.jordan import (
    check_reciprocal_identity,
    is_associative,
    is_jordan,
    jordan_closure,
    jordan_product,
    peirce,
    rad_square_dim,
    radical,
    radical_dim,
    structure_constants,
)
from jordanet.linalg import Mat, det
from jordanet.prng import SplitMix64
from jordanet.spaces import (
    contains,
    find_invertible,
    make_space,
    sample_congruent,
    sym_dim,
    sym_pairs,
)


def E(n, i, j):
    m = [[0] * n for _ in range(n)]
    m[i - 1][j - 1] = 1
    m[j - 1][i - 1] = 1
    return Mat.from_ints(m)


def diag(*vals):
    n = len(vals)
    return Mat.from_ints([[vals[i] if i == j else 0 for j in range(n)] for i in range(n)])


def antidiag(n):
    return Mat.from_ints([[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)])


def intro_L1():
    bw = Mat.from_ints([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    return make_space(4, [E(4, 1, 1), E(4, 1, 2), E(4, 2, 2), bw])


def intro_L2(flip=False):
    s = 1 if flip else -1
    bw = Mat.from_ints([
        [0, 0, 0, 1],
        [0, 0, s, 0],
        [0, s, 0, 0],
        [1, 0, 0, 0],
    ])
    bx = diag(1, 0, 1, 0)
    by = Mat.from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    bz = diag(0, 1, 0, 1)
    return make_space(4, [bx, by, bz, bw])


def full_space(n):
    return make_space(n, [E(n, i + 1, j + 1) for i, j in sym_pairs(n)])


def net_rank8():
    bx = Mat.identity(4).map(lambda v: Fraction(v))
    bx = Mat.from_ints([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    by = diag(1, -1, 0, 0)
    bz = Mat.from_ints([[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 1], [0, 1, 1, 0]])
    return make_space(4, [bx, by, bz])


def spin_net():
    # 1_2 (x) S^2: two identical 2x2 blocks
    bx = diag(1, 0, 1, 0)
    by = Mat.from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    bz = diag(0, 1, 0, 1)
    return make_space(4, [bx, by, bz])


class TestJordanProduct:
    def test_idempotent(self):
        u = Mat.identity(2)
        assert jordan_product(E(2, 1, 1), E(2, 1, 1), u) == E(2, 1, 1)

    def test_orthogonal_idempotents(self):
        u = Mat.identity(2)
        assert jordan_product(E(2, 1, 1), E(2, 2, 2), u) == Mat.zero(2, 2)

    def test_nilpotent_for_antidiagonal_unit(self):
        u = E(2, 1, 2)
        assert jordan_product(E(2, 1, 1), E(2, 1, 1), u) == Mat.zero(2, 2)

    def test_singular_unit_rejected(self):
        with pytest.raises(PreconditionError) as err:
            jordan_product(E(2, 1, 1), E(2, 1, 1), E(2, 1, 1))
        assert err.value.code == "SINGULAR_U"

    def test_unit_law_and_commutativity(self):
        rng = SplitMix64(3)
        u = Mat.from_ints([[2, 1], [1, 1]])
        for _ in range(10):
            x = Mat.from_ints([[rng.int_between(-3, 3) for _ in range(2)] for _ in range(2)])
            x = (x + x.transpose()).scale(Fraction(1, 2))
            y = Mat.from_ints([[rng.int_between(-3, 3) for _ in range(2)] for _ in range(2)])
            y = (y + y.transpose()).scale(Fraction(1, 2))
            assert jordan_product(u, x, u) == x
            assert jordan_product(x, y, u) == jordan_product(y, x, u)


class TestIsJordan:
    def test_intro_spaces(self):
        ok1, _ = is_jordan(intro_L1(), Mat.identity(4))
        ok2, _ = is_jordan(intro_L2(), Mat.identity(4))
        assert ok1 and ok2

    def test_sign_flip_breaks_it(self):
        ok, witness = is_jordan(intro_L2(flip=True), Mat.identity(4))
        assert not ok
        assert witness is not None
        assert contains(intro_L2(flip=True), witness.product) is None
        assert any(x != 0 for row in witness.residue.data for x in row)

    def test_full_space(self):
        for n in (2, 3):
            ok, _ = is_jordan(full_space(n))
            assert ok

    def test_default_unit(self):
        ok, _ = is_jordan(intro_L1())
        assert ok

    def test_not_regular(self):
        with pytest.raises(PreconditionError) as err:
            is_jordan(make_space(2, [E(2, 1, 1)]))
        assert err.value.code == "NOT_REGULAR"

    def test_unit_outside_space_rejected(self):
        with pytest.raises(PreconditionError) as err:
            is_jordan(spin_net(), E(4, 1, 3))
        assert err.value.code == "U_NOT_IN_SPACE"

    def test_unit_choice_does_not_matter(self):
        # one invertible U suffices; spot-check several units per space
        from jordanet.spaces import integer_sweep

        for space, expected in [(intro_L1(), True), (intro_L2(), True),
                                (intro_L2(flip=True), False)]:
            units = 0
            for tup in integer_sweep(space.m):
                u = space.element(tup)
                if det(u) == 0:
                    continue
                units += 1
                ok, _ = is_jordan(space, u)
                assert ok is expected
                if units >= 4:
                    break


class TestClosure:
    def test_fixed_point(self):
        sp = intro_L1()
        u = Mat.identity(4)
        assert jordan_closure(sp, u) == sp

    def test_closure_fills_everything(self):
        sp = net_rank8()
        u, _ = find_invertible(sp)
        clo = jordan_closure(sp, u)
        assert clo.m == 10
        assert clo == full_space(4)

    def test_powers_of_three_eigenvalues(self):
        sp = make_space(3, [Mat.identity(3), diag(1, 2, 3)])
        clo = jordan_closure(sp, Mat.identity(3))
        assert clo.m == 3
        assert contains(clo, diag(1, 4, 9)) is not None

    def test_unit_independence_on_catalog_like_spaces(self):
        # closure dimension must agree across several choices of unit
        from jordanet.spaces import integer_sweep

        for sp in (net_rank8(), spin_net(), intro_L2(flip=True)):
            dims = set()
            units = 0
            for tup in integer_sweep(sp.m):
                u = sp.element(tup)
                if det(u) == 0:
                    continue
                units += 1
                dims.add(jordan_closure(sp, u).m)
                if units >= 3:
                    break
            assert len(dims) == 1


class TestStructureConstants:
    def test_spin_relations(self):
        # U = 1_4, X = 1_2 (x) diag(1, -1), Y = 1_2 (x) offdiag: X*X = U, Y*Y = U, X*Y = 0
        u = Mat.identity(4)
        x = diag(1, -1, 1, -1)
        y = Mat.from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
        sp = make_space(4, [u, x, y])
        a = structure_constants(sp, u)
        assert a.multiply_coords([0, 1, 0], [0, 1, 0]) == [1, 0, 0]
        assert a.multiply_coords([0, 0, 1], [0, 0, 1]) == [1, 0, 0]
        assert a.multiply_coords([0, 1, 0], [0, 0, 1]) == [0, 0, 0]

    def test_span_of_identity(self):
        sp = make_space(3, [Mat.identity(3)])
        a = structure_constants(sp, Mat.identity(3))
        assert a.tensor == (((Fraction(1),),),)

    def test_not_jordan_raises(self):
        with pytest.raises(PreconditionError) as err:
            structure_constants(intro_L2(flip=True), Mat.identity(4))
        assert err.value.code == "NOT_JORDAN"

    def test_tensor_symmetry(self):
        a = structure_constants(intro_L1(), Mat.identity(4))
        m = a.dim
        for i in range(m):
            for j in range(m):
                assert a.tensor[i][j] == a.tensor[j][i]


def canonical_3b1():
    return make_space(4, [antidiag(4), E(4, 1, 1), E(4, 2, 2)])


def canonical_3a():
    b1 = Mat.from_ints([[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]])
    return make_space(4, [b1, E(4, 1, 2), E(4, 1, 1)])


def canonical_2b():
    b1 = Mat.from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    b2 = Mat.from_ints([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    return make_space(4, [b1, b2, E(4, 1, 3)])


def canonical_1a():
    return make_space(4, [diag(1, 1, 0, 0), E(4, 3, 3), E(4, 4, 4)])


class TestRadical:
    def test_semisimple_diagonal(self):
        a = structure_constants(canonical_1a())
        mats, report = radical(a)
        assert report.dim == 0 and mats == []

    def test_spin_factor_semisimple(self):
        a = structure_constants(spin_net())
        assert radical_dim(a) == 0

    def test_two_dim_radical(self):
        a = structure_constants(canonical_3b1())
        mats, report = radical(a)
        assert report.dim == 2
        assert report.ideal_ok and report.nilpotency_ok

    def test_one_dim_radical(self):
        a = structure_constants(canonical_2b())
        assert radical_dim(a) == 1


class TestAssociativity:
    def test_diagonal_net_is_associative(self):
        assert is_associative(structure_constants(canonical_1a()))

    def test_spin_net_is_not(self):
        assert not is_associative(structure_constants(spin_net()))

    def test_2b_is_not(self):
        assert not is_associative(structure_constants(canonical_2b()))


class TestRadSquare:
    def test_3a_has_square(self):
        assert rad_square_dim(structure_constants(canonical_3a())) == 1

    def test_3b_variants_square_to_zero(self):
        assert rad_square_dim(structure_constants(canonical_3b1())) == 0

    def test_semisimple_zero(self):
        assert rad_square_dim(structure_constants(canonical_1a())) == 0


class TestPeirce:
    def test_full_s3_diagonal_idempotents(self):
        sp = full_space(3)
        a = structure_constants(sp, Mat.identity(3))
        pieces = peirce(a, [E(3, 1, 1), E(3, 2, 2), E(3, 3, 3)])
        assert len(pieces) == 6
        assert all(len(v) == 1 for v in pieces.values())
        assert contains(make_space(3, pieces[(0, 1)]), E(3, 1, 2)) is not None

    def test_single_idempotent(self):
        sp = intro_L1()
        a = structure_constants(sp, Mat.identity(4))
        pieces = peirce(a, [Mat.identity(4)])
        assert len(pieces[(0, 0)]) == a.dim

    def test_2a1_dims(self):
        # Diag(x J2 + y E11, z 1_2) with orthogonal idempotents Diag(J2, 0), Diag(0, 1_2)
        j2 = Mat.from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
        sp = make_space(4, [j2, E(4, 1, 1), diag(0, 0, 1, 1)])
        u = Mat.from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        a = structure_constants(sp, u)
        x1 = j2
        x2 = diag(0, 0, 1, 1)
        pieces = peirce(a, [x1, x2])
        dims = (len(pieces[(0, 0)]), len(pieces[(0, 1)]), len(pieces[(1, 1)]))
        assert dims == (2, 0, 1)

    def test_bad_idempotents_rejected(self):
        sp = full_space(3)
        a = structure_constants(sp, Mat.identity(3))
        with pytest.raises(PreconditionError) as err:
            peirce(a, [E(3, 1, 1), E(3, 2, 2)])  # do not sum to the unit
        assert err.value.code == "NOT_ORTHOGONAL_IDEMPOTENTS"


class TestReciprocal:
    def test_intro_space_passes(self):
        ok, _ = check_reciprocal_identity(intro_L1(), Mat.identity(4))
        assert ok

    def test_flipped_fails_with_witness(self):
        ok, witness = check_reciprocal_identity(intro_L2(flip=True), Mat.identity(4))
        assert not ok
        assert witness is not None and det(witness) != 0

    def test_identity_span(self):
        ok, _ = check_reciprocal_identity(make_space(3, [Mat.identity(3)]))
        assert ok


class TestConditionCoherence:
    def test_three_conditions_agree(self):
        spaces = [intro_L1(), intro_L2(), intro_L2(flip=True), net_rank8(), spin_net()]
        for sp in spaces:
            for seed in range(4):
                image = sample_congruent(sp, seed)
                u, _ = find_invertible(image)
                jordan_ok, _ = is_jordan(image, u)
                recip_ok, _ = check_reciprocal_identity(image, u, trials=8)
                closure_fixed = jordan_closure(image, u).m == image.m
                assert jordan_ok == recip_ok == closure_fixed


class TestCodimensionBound:
    def test_proper_closures_have_large_codimension(self):
        rng = SplitMix64(2024)
        for n in (3, 4, 5):
            total = sym_dim(n)
            checked = 0
            attempts = 0
            while checked < 100 and attempts < 1000:
                attempts += 1
                m = rng.int_between(1, total - 1)
                basis = []
                try:
                    rows = []
                    for _ in range(m):
                        cand = [[0] * n for _ in range(n)]
                        for i in range(n):
                            for j in range(i, n):
                                cand[i][j] = cand[j][i] = rng.int_between(-2, 2)
                        basis.append(Mat.from_ints(cand))
                    sp = make_space(n, basis)
                    u, _ = find_invertible(sp)
                except PreconditionError:
                    continue
                clo = jordan_closure(sp, u)
                checked += 1
                if clo.m < total:
                    assert total - clo.m >= n - 1


class TestSerialization:
    def test_structure_round_trips_through_json(self):
        import json

        a = structure_constants(spin_net())
        radical(a)  # populate the radical field
        blob = json.dumps(a.to_json(), sort_keys=True)
        data = json.loads(blob)
        assert data["m"] == 3 and data["n"] == 4
        # the off-diagonal block element squares to the unit
        assert data["tensor"][1][1] == data["unit_coordinates"]
        assert data["radical_coordinates"] == []
