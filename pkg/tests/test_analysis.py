import itertools
import random

import numpy as np
import pytest

from qpc.analysis import (
    CSSParams,
    check_commutation,
    css_distance,
    css_params,
    hgp_canonical_logicals,
    hgp_distance_bound,
    hgp_k_formula,
    logical_count,
    lp_bp_coincide,
    search_noncommuting_lp,
    verify_logical_basis,
)
from qpc.classical import ClassicalCode, hamming_7_4_check, repetition_check
from qpc.errors import BudgetError, PreconditionError
from qpc.gf2 import BitMatrix, matmul, rank, transpose, vstack
from qpc.groups import (
    FiniteGroup,
    GroupAlgebraMatrix,
    parse_element,
)
from qpc.products import hgp, lifted_product


def rep3():
    return ClassicalCode(repetition_check(3))


def toric():
    return hgp(rep3(), rep3())


def ring_1px(group):
    return GroupAlgebraMatrix(group, [[parse_element("1+x", group)]])


def s3():
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(g[h[x]] for x in range(3))] for h in perms] for g in perms
    ]
    return FiniteGroup(table, spec="S3")


def in_rowspace(vec_int, h):
    stacked = vstack(h, BitMatrix.from_row_ints([vec_int], h.cols))
    return rank(stacked) == rank(h)


def weight_ordered_distance(code, max_weight=4):
    """Oracle: scan vectors of increasing weight for the lightest Z logical."""
    n = code.n
    hx = code.h_x
    for w in range(1, max_weight + 1):
        for support in itertools.combinations(range(n), w):
            vec = 0
            for j in support:
                vec |= 1 << j
            as_col = transpose(BitMatrix.from_row_ints([vec], n))
            if not matmul(hx, as_col).is_zero():
                continue
            if not in_rowspace(vec, code.h_z):
                return w
    return None


def brute_force_css_distance(code):
    """Oracle: scan all of F_2^n (n <= 14) for the lightest logical each way."""
    assert code.n <= 14
    best_z = best_x = None
    for vec in range(1, 1 << code.n):
        col = transpose(BitMatrix.from_row_ints([vec], code.n))
        w = vec.bit_count()
        if matmul(code.h_x, col).is_zero() and not in_rowspace(vec, code.h_z):
            best_z = w if best_z is None else min(best_z, w)
        if matmul(code.h_z, col).is_zero() and not in_rowspace(vec, code.h_x):
            best_x = w if best_x is None else min(best_x, w)
    return best_x, best_z


class TestCommutation:
    def test_hgp_always_commutes(self):
        ok, pairs = check_commutation(toric())
        assert ok and pairs == []

    def test_checkless_code_commutes(self):
        trivial = ClassicalCode(BitMatrix.zeros(0, 1))
        ok, pairs = check_commutation(hgp(trivial, trivial))
        assert ok

    def test_noncommuting_lp_lists_pairs(self):
        hit = search_noncommuting_lp(s3(), 2, 2, 10_000, seed=11)
        assert hit is not None
        m1, m2, draw = hit
        code = lifted_product(m1, m2)
        ok, pairs = check_commutation(code)
        assert not ok and len(pairs) >= 1
        i, j = pairs[0]
        assert 0 <= i < code.m_x and 0 <= j < code.m_z


class TestLogicalCount:
    def test_toric_has_two(self):
        assert logical_count(toric()) == 2

    def test_checkless_code_has_n(self):
        trivial = ClassicalCode(BitMatrix.zeros(0, 1))
        assert logical_count(hgp(trivial, trivial)) == 1

    def test_lifted_z3_example(self):
        group = FiniteGroup.cyclic(3)
        code = lifted_product(ring_1px(group), ring_1px(group))
        assert logical_count(code) == 2

    def test_noncommuting_refused(self):
        m1, m2, _ = search_noncommuting_lp(s3(), 2, 2, 10_000, seed=11)
        code = lifted_product(m1, m2)
        with pytest.raises(PreconditionError):
            logical_count(code)


class TestKFormula:
    def test_rep3_squared(self):
        assert hgp_k_formula(rep3(), rep3()) == 2

    def test_full_rank_square_inputs(self):
        c = ClassicalCode(BitMatrix.identity(3))
        assert hgp_k_formula(c, c) == 0

    def test_hamming_squared(self):
        ham = ClassicalCode(hamming_7_4_check())
        assert hgp_k_formula(ham, ham) == 16

    def test_matches_rank_count_on_random_pairs(self):
        rng = random.Random(137)
        for _ in range(100):
            def rand_code():
                m = rng.randint(1, 5)
                n = rng.randint(1, 7)
                return ClassicalCode(BitMatrix.from_dense(
                    np.array([[rng.randint(0, 1) for _ in range(n)] for _ in range(m)])
                ))
            c1, c2 = rand_code(), rand_code()
            assert logical_count(hgp(c1, c2)) == hgp_k_formula(c1, c2)


class TestDistance:
    def test_toric_parameters(self):
        code = toric()
        d_x, d_z, d = css_distance(code)
        assert (d_x, d_z, d) == (3, 3, 3)
        assert weight_ordered_distance(code) == 3

    def test_lifted_z3_is_distance_two(self):
        group = FiniteGroup.cyclic(3)
        code = lifted_product(ring_1px(group), ring_1px(group))
        d_x, d_z, d = css_distance(code)
        assert d == 2
        oracle_x, oracle_z = brute_force_css_distance(code)
        assert (d_x, d_z) == (oracle_x, oracle_z)

    def test_zero_k_has_no_distance(self):
        c = ClassicalCode(BitMatrix.identity(2))
        code = hgp(c, c)
        assert logical_count(code) == 0
        assert css_distance(code) == (None, None, None)

    def test_budget_refusal(self):
        trivial = ClassicalCode(BitMatrix.zeros(1, 4))
        code = hgp(trivial, trivial)
        with pytest.raises(BudgetError) as err:
            css_distance(code, budget=1 << 10)
        assert err.value.limit == 1 << 10

    def test_matches_brute_force_on_small_random(self):
        rng = random.Random(139)
        tried = 0
        while tried < 6:
            m = rng.randint(1, 2)
            n = rng.randint(2, 3)
            c1 = ClassicalCode(BitMatrix.from_dense(
                np.array([[rng.randint(0, 1) for _ in range(n)] for _ in range(m)])
            ))
            c2 = ClassicalCode(BitMatrix.from_dense(
                np.array([[rng.randint(0, 1) for _ in range(2)] for _ in range(1)])
            ))
            code = hgp(c1, c2)
            if code.n > 14 or logical_count(code) == 0:
                continue
            tried += 1
            d_x, d_z, _ = css_distance(code)
            assert (d_x, d_z) == brute_force_css_distance(code)

    def test_params_helper(self):
        params = css_params(toric())
        assert params == CSSParams(n=18, k=2, d=3, d_x=3, d_z=3)


class TestDistanceBound:
    def test_rep3_squared(self):
        assert hgp_distance_bound(rep3(), rep3()) == 3

    def test_hamming_squared_excludes_transpose(self):
        ham = ClassicalCode(hamming_7_4_check())
        assert ham.transpose_code().dimension() == 0
        assert hgp_distance_bound(ham, ham) == 3

    def test_no_bound_when_everything_trivial(self):
        c = ClassicalCode(BitMatrix.identity(2))
        assert hgp_distance_bound(c, c) is None

    def test_distance_at_least_bound_on_random_suite(self):
        rng = random.Random(149)
        checked = 0
        while checked < 10:
            m = rng.randint(1, 2)
            n = rng.randint(2, 4)
            c1 = ClassicalCode(BitMatrix.from_dense(
                np.array([[rng.randint(0, 1) for _ in range(n)] for _ in range(m)])
            ))
            c2 = ClassicalCode(BitMatrix.from_dense(
                np.array([[rng.randint(0, 1) for _ in range(3)] for _ in range(rng.randint(1, 2))])
            ))
            code = hgp(c1, c2)
            if logical_count(code) == 0:
                continue
            bound = hgp_distance_bound(c1, c2)
            if bound is None:
                continue
            try:
                _, _, d = css_distance(code, budget=1 << 18)
            except BudgetError:
                continue
            checked += 1
            assert d >= bound

    def test_toric_meets_bound_exactly(self):
        _, _, d = css_distance(toric())
        assert d == hgp_distance_bound(rep3(), rep3())


class TestCanonicalLogicals:
    def test_toric_pairs(self):
        basis = hgp_canonical_logicals(rep3(), rep3())
        assert basis.x_logicals.rows == 2
        assert basis.pairing == BitMatrix.identity(2)
        # each Z logical is the weight-3 repetition word along one line
        assert basis.z_logicals.row_weight(0) == 3
        assert basis.z_logicals.row_weight(1) == 3
        verify_logical_basis(toric(), basis)

    def test_zero_k_refused(self):
        c = ClassicalCode(BitMatrix.identity(2))
        with pytest.raises(PreconditionError):
            hgp_canonical_logicals(c, c)

    def test_hamming_square_left_block_only(self):
        ham = ClassicalCode(hamming_7_4_check())
        basis = hgp_canonical_logicals(ham, ham)
        assert basis.x_logicals.rows == 16
        assert basis.pairing == BitMatrix.identity(16)
        verify_logical_basis(hgp(ham, ham), basis)

    def test_transpose_only_blocks(self):
        # 1 check, 1 bit, zero entry: k = 1 and k^T = 1
        wide = ClassicalCode(BitMatrix.zeros(2, 1))
        tall = ClassicalCode(BitMatrix.from_dense([[1], [1]]))
        # tall: k = 0, k^T = 1; wide: k = 1, k^T = 2 -> only Q2 pairs survive
        assert hgp_k_formula(tall, tall) == 1
        basis = hgp_canonical_logicals(tall, tall)
        assert basis.x_logicals.rows == 1
        verify_logical_basis(hgp(tall, tall), basis)

    def test_random_instances_verify(self):
        rng = random.Random(151)
        built = 0
        while built < 8:
            m = rng.randint(1, 3)
            n = rng.randint(1, 4)
            c1 = ClassicalCode(BitMatrix.from_dense(
                np.array([[rng.randint(0, 1) for _ in range(n)] for _ in range(m)])
            ))
            c2 = ClassicalCode(BitMatrix.from_dense(
                np.array([[rng.randint(0, 1) for _ in range(3)] for _ in range(2)])
            ))
            if hgp_k_formula(c1, c2) == 0:
                continue
            built += 1
            basis = hgp_canonical_logicals(c1, c2)
            verify_logical_basis(hgp(c1, c2), basis)
            assert basis.x_logicals.rows == hgp_k_formula(c1, c2)


class TestLpBpCoincidence:
    def test_z3_fixture(self):
        group = FiniteGroup.cyclic(3)
        same, perm = lp_bp_coincide(ring_1px(group), ring_1px(group))
        assert same
        assert perm == list(range(6))

    def test_trivial_group(self):
        group = FiniteGroup.cyclic(1)
        m = GroupAlgebraMatrix.from_masks(group, [[1, 1]])
        same, perm = lp_bp_coincide(m, m)
        assert same

    def test_z2xz2_random_monomials(self):
        rng = random.Random(157)
        group = FiniteGroup.direct_product(2, 2)
        for _ in range(10):
            def monomials(rows, cols):
                return GroupAlgebraMatrix.from_masks(
                    group,
                    [[1 << rng.randrange(4) for _ in range(cols)] for _ in range(rows)],
                )
            same, _ = lp_bp_coincide(monomials(2, 2), monomials(2, 2))
            assert same

    def test_nonabelian_lift_rejected(self):
        # left multiplication by a non-central element tears the second
        # graph, so the paired regular actions do not exist
        group = s3()
        transposition = GroupAlgebraMatrix.from_masks(group, [[1 << 1]])
        with pytest.raises(PreconditionError, match="lift"):
            lp_bp_coincide(transposition, transposition)


class TestNoncommutingSearch:
    def test_s3_search_finds_instance(self):
        hit = search_noncommuting_lp(s3(), 2, 2, 10_000, seed=2024)
        assert hit is not None
        _, _, draw = hit
        assert draw < 10_000

    def test_abelian_draws_always_commute(self):
        for spec in ("Z2", "Z3", "Z4", "Z2xZ2"):
            group = (
                FiniteGroup.direct_product(2, 2)
                if spec == "Z2xZ2"
                else FiniteGroup.cyclic(int(spec[1:]))
            )
            assert search_noncommuting_lp(group, 2, 2, 60, seed=5) is None

    def test_search_is_deterministic(self):
        a = search_noncommuting_lp(s3(), 2, 2, 200, seed=77)
        b = search_noncommuting_lp(s3(), 2, 2, 200, seed=77)
        if a is None:
            assert b is None
        else:
            assert a[2] == b[2] and a[0] == b[0]
