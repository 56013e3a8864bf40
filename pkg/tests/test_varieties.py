import hashlib
from fractions import Fraction

import pytest

from jordanet.catalog import canonical
from jordanet.errors import InputError, PreconditionError
from jordanet.exact import UniPoly, mpoly_gcd, parse_poly
from jordanet.linalg import Mat, inverse
from jordanet.prng import SplitMix64
from jordanet.spaces import make_space, plucker, sample_congruent
from jordanet.varieties import (
    CATALOGS,
    DATA_DIR,
    catalog_eval,
    catalog_polynomials,
    macaulay_emptiness,
    min_rank_bounds,
    rank_one_locus_certificate,
    rank_one_pencil,
    rank_one_system,
)


def P(s):
    return parse_poly(s)


def E(n, i, j):
    m = [[0] * n for _ in range(n)]
    m[i - 1][j - 1] = 1
    m[j - 1][i - 1] = 1
    return Mat.from_ints(m)


def diag(*vals):
    n = len(vals)
    return Mat.from_ints([[vals[i] if i == j else 0 for j in range(n)] for i in range(n)])


def eval_poly_at(p, point):
    total = Fraction(0)
    for exps, coeff in p.terms.items():
        term = coeff
        for name, e in zip(p.vars, exps):
            if e:
                term *= point[name] ** e
        total += term
    return total


def cayley_orthogonal(seed, n):
    """Rational orthogonal matrix via the Cayley transform of a skew matrix."""
    rng = SplitMix64(seed)
    while True:
        s = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = Fraction(rng.int_between(-3, 3), rng.int_between(1, 3))
                s[i][j] = v
                s[j][i] = -v
        skew = Mat(s)
        ident = Mat.identity(n)
        try:
            return (ident - skew) @ inverse(ident + skew)
        except PreconditionError:
            continue


class TestMacaulay:
    def test_two_squares_degree_three(self):
        cert = macaulay_emptiness([P("x^2"), P("y^2")], 3)
        assert cert.kind == "CERTIFIED_EMPTY"

    def test_two_squares_degree_two(self):
        cert = macaulay_emptiness([P("x^2"), P("y^2")], 2)
        assert cert.kind == "UNKNOWN"
        assert cert.span_rank == 2 and cert.span_target == 3  # xy is missed

    def test_inhomogeneous_rejected(self):
        with pytest.raises(PreconditionError) as err:
            macaulay_emptiness([P("x^2 + y")], 3)
        assert err.value.code == "NOT_HOMOGENEOUS"

    def test_variable_universe_matters(self):
        # {x^2} alone is empty in P^0 but has the solution (0 : 1) in P^1
        assert macaulay_emptiness([P("x^2")], 2).kind == "CERTIFIED_EMPTY"
        assert macaulay_emptiness([P("x^2")], 2, vars=("x", "y")).kind == "UNKNOWN"

    def test_certificate_soundness_sampled(self):
        system = [P("x^2 + y^2"), P("x*y")]
        cert = macaulay_emptiness(system, 3)
        assert cert.kind == "CERTIFIED_EMPTY"
        rng = SplitMix64(5)
        for _ in range(500):
            point = {
                "x": Fraction(rng.int_between(-6, 6), rng.int_between(1, 4)),
                "y": Fraction(rng.int_between(-6, 6), rng.int_between(1, 4)),
            }
            if all(v == 0 for v in point.values()):
                continue
            assert any(eval_poly_at(p, point) != 0 for p in system)


class TestRankOneSystem:
    def test_diagonal_pencil(self):
        system = rank_one_system(make_space(2, [E(2, 1, 1), E(2, 2, 2)]))
        assert len(system) == 1 and system[0] == P("t1*t2")

    def test_identity_line(self):
        assert rank_one_system(make_space(2, [Mat.identity(2)])) == [P("t1^2")]

    def test_lstar_contains_expected_minors(self):
        system = rank_one_system(canonical("s5/Lstar"))
        strs = {str(p) for p in system} | {str(-p) for p in system}
        assert "t1^2" in strs
        assert "t1^2 + t1*t2" in strs


class TestRankOnePencil:
    def test_two_points(self):
        assert rank_one_pencil(make_space(2, [E(2, 1, 1), E(2, 2, 2)])) == 2

    def test_one_point(self):
        assert rank_one_pencil(make_space(3, [E(3, 1, 1), E(3, 1, 3)])) == 1

    def test_zero_points(self):
        assert rank_one_pencil(make_space(3, [E(3, 1, 2), E(3, 1, 3)])) == 0

    def test_conjugate_pair_counts_projectively(self):
        # det(t1 Diag(1,2) + t2 offdiag) = 2 t1^2 - t2^2: two irrational roots
        sp = make_space(2, [diag(1, 2), E(2, 1, 2)])
        assert rank_one_pencil(sp) == 2

    def test_matches_root_scan_oracle(self):
        rng = SplitMix64(77)
        cases = 0
        while cases < 12:
            a = rng.nonzero_int_between(-3, 3)
            b = rng.int_between(-3, 3)
            c = rng.int_between(-2, 2)
            d = rng.nonzero_int_between(-3, 3)
            try:
                sp = make_space(3, [diag(a, b, 0), diag(c, d, 0)])
            except PreconditionError:
                continue
            cases += 1
            assert rank_one_pencil(sp) == rank_one_count_oracle(sp)


def rank_one_count_oracle(sp):
    """Distinct projective rank-one points via rational root scanning plus a
    discriminant check on the deflated remainder (independent of the
    squarefree-part route used by rank_one_pencil)."""
    minors = rank_one_system(sp)
    if not minors:
        return "ALL"
    from jordanet.exact import MPoly

    g = MPoly.zero()
    for m in minors:
        g = mpoly_gcd(g, m)
    if g.is_constant():
        return 0
    count = 0
    i2 = g.vars.index("t2") if "t2" in g.vars else None
    if i2 is not None and min(e[i2] for e in g.terms) > 0:
        count += 1  # root at (1 : 0)
    w = UniPoly.from_mpoly(g.substitute({"t2": 1}).trimmed() if "t2" in g.vars else g, "t1")
    # deflate rational roots found by scanning small heights
    for num in range(-24, 25):
        for den in range(1, 9):
            r = Fraction(num, den)
            value = sum(
                (c.constant_value() * r ** k for k, c in enumerate(w.coeffs)), Fraction(0))
            if value == 0:
                count += 1
                root = UniPoly("t1", [MPoly.const(-r), MPoly.const(1)])
                from jordanet.exact import uni_exact_div

                while True:
                    q = uni_exact_div(w, root)
                    if q is None:
                        break
                    w = q
    if w.degree() == 2:
        a2 = w.coeffs[2].constant_value()
        a1 = w.coeffs[1].constant_value()
        a0 = w.coeffs[0].constant_value()
        if a1 * a1 - 4 * a2 * a0 != 0:
            count += 2
        else:
            count += 1
    elif w.degree() not in (0, 2):
        raise AssertionError("oracle cannot handle this leftover degree")
    return count


class TestCatalogFiles:
    def test_checksums(self):
        import json
        from pathlib import Path

        frozen = json.loads((Path(__file__).parent / "data" / "catalog_checksums.json").read_text())
        for fname, sha in frozen.items():
            digest = hashlib.sha256((DATA_DIR / fname).read_bytes()).hexdigest()
            assert digest == sha, f"{fname} changed: {digest}"
        listed = {meta[0] for meta in CATALOGS.values()}
        assert listed == set(frozen)

    def test_counts(self):
        assert len(catalog_polynomials("double_eigenvalue_cubics")) == 7
        assert len(catalog_polynomials("jordan_net_quadrics")) == 3
        for cid in CATALOGS:
            if cid.startswith("plucker"):
                assert len(catalog_polynomials(cid)) == 1

    def test_unknown_id(self):
        with pytest.raises(InputError):
            catalog_polynomials("nope")


class TestCatalogEval:
    def test_cubics_vanish_on_double_eigenvalue_matrix(self):
        assert catalog_eval("double_eigenvalue_cubics", diag(2, -1, -1)) == [0] * 7

    def test_cubics_nonzero_on_three_distinct(self):
        assert any(v != 0 for v in catalog_eval("double_eigenvalue_cubics", diag(1, 2, -3)))

    def test_cubics_vanish_on_conjugated_samples(self):
        for k in range(10):
            q = cayley_orthogonal(300 + k, 3)
            x = q.transpose() @ diag(2, -1, -1) @ q
            assert catalog_eval("double_eigenvalue_cubics", x) == [0] * 7

    def test_trace_convention_enforced(self):
        with pytest.raises(PreconditionError) as err:
            catalog_eval("double_eigenvalue_cubics", diag(1, 1, 1))
        assert err.value.code == "CONVENTION_MISMATCH"

    def test_quadrics_vanish_on_orthogonal_frame_net(self):
        q = cayley_orthogonal(42, 3)
        rows = [Mat([[q[k, i] * q[k, j] for j in range(3)] for i in range(3)]) for k in range(3)]
        net = make_space(3, [Mat.identity(3), rows[0], rows[1]])
        assert catalog_eval("jordan_net_quadrics", net) == [0, 0, 0]

    def test_quadrics_nonzero_on_random_net(self):
        x = Mat.from_ints([[1, 2, 0], [2, 0, 1], [0, 1, 1]])
        y = Mat.from_ints([[0, 1, 1], [1, 1, 0], [1, 0, 2]])
        net = make_space(3, [Mat.identity(3), x, y])
        assert any(v != 0 for v in catalog_eval("jordan_net_quadrics", net))

    def test_quadrics_need_identity_first(self):
        net = make_space(3, [E(3, 1, 1), E(3, 2, 2), E(3, 3, 3)])
        with pytest.raises(PreconditionError) as err:
            catalog_eval("jordan_net_quadrics", net)
        assert err.value.code == "CONVENTION_MISMATCH"

    def test_spin_quadric_on_orbits(self):
        spin = canonical("s4/1b")
        for seed in range(5):
            assert catalog_eval("plucker_spin_orbit_quadric", sample_congruent(spin, seed)) == [0]
        diag_net = canonical("s4/1a")
        witnesses = [
            catalog_eval("plucker_spin_orbit_quadric", sample_congruent(diag_net, s))[0]
            for s in range(6)
        ]
        assert any(v != 0 for v in witnesses)

    def test_veronese_quadric(self):
        l3 = canonical("nets/L3")
        for seed in range(5):
            assert catalog_eval("plucker_veronese_orbit_quadric", sample_congruent(l3, seed)) == [0]

    def test_plucker_vector_input(self):
        pv = plucker(canonical("s4/1b"))
        assert catalog_eval("plucker_spin_orbit_quadric", pv) == [0]


class TestMinRank:
    def test_lstar_tau_two(self):
        bounds = min_rank_bounds(canonical("s5/Lstar"))
        assert bounds.upper == 2 and bounds.lower == 2
        assert bounds.tau == 2
        assert bounds.certificate.kind == "CERTIFIED_EMPTY"
        assert bounds.certificate.degree <= 6

    def test_diagonalizable_s5_net_tau_one(self):
        sp = make_space(5, [diag(1, 1, 0, 0, 0), diag(0, 0, 1, 1, 0), diag(0, 0, 0, 0, 1)])
        bounds = min_rank_bounds(sp)
        assert bounds.upper == 1
        assert bounds.tau == 1

    def test_identity_line_tau_n(self):
        for n in (2, 3, 5):
            assert min_rank_bounds(make_space(n, [Mat.identity(n)])).tau == n

    def test_2b_net_certified(self):
        cert = rank_one_locus_certificate(canonical("s4/2b"))
        assert cert.kind == "CERTIFIED_EMPTY" and cert.degree == 2

    def test_rank_one_certificate_soundness_sampled(self):
        sp = canonical("s4/2b")
        system = rank_one_system(sp)
        assert rank_one_locus_certificate(sp).kind == "CERTIFIED_EMPTY"
        rng = SplitMix64(17)
        for _ in range(500):
            point = {f"t{k + 1}": Fraction(rng.int_between(-5, 5), rng.int_between(1, 3))
                     for k in range(3)}
            if all(v == 0 for v in point.values()):
                continue
            assert any(eval_poly_at(p, point) != 0 for p in system)
