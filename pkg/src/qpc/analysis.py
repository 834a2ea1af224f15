"""Parameter extraction and verification for constructed CSS codes.

Distances are exact: Z-type distance is the minimum weight over
kernel(H_X) minus the row space of H_Z, found by enumerating the whole
kernel with the stabiliser span and logical completions separated, so
membership in the row space is read off the combination mask instead of
being re-solved per vector.  Enumerations beyond the budget (default
2^24 combinations) are refused, never approximated.

Non-commuting codes (possible for lifted products) get n only; k and d
computations refuse them loudly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .classical import ClassicalCode
from .errors import BudgetError, PreconditionError
from .gf2 import BitMatrix, kernel_basis, matmul, rank, transpose, vstack
from .groups import GroupAlgebraElement, GroupAlgebraMatrix
from .products import CSSCode, balanced_product, lift_with_regular_actions, lifted_product

DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True)
class CSSParams:
    n: int
    k: int
    d: int | None = None
    d_x: int | None = None
    d_z: int | None = None


@dataclass(frozen=True)
class LogicalBasis:
    """Paired logical representatives: pairing[i][j] = <x_i, z_j> = delta_ij."""

    x_logicals: BitMatrix
    z_logicals: BitMatrix
    pairing: BitMatrix


def check_commutation(code: CSSCode) -> tuple[bool, list[tuple[int, int]]]:
    """True iff H_X H_Z^T = 0; otherwise every anticommuting pair is listed."""
    product = matmul(code.h_x, transpose(code.h_z))
    if product.is_zero():
        return True, []
    dense = product.to_dense()
    pairs = [(int(i), int(j)) for i in range(dense.shape[0])
             for j in range(dense.shape[1]) if dense[i, j]]
    return False, pairs


def logical_count(code: CSSCode) -> int:
    """n - rank(H_X) - rank(H_Z); refuses non-commuting inputs."""
    if not code.commuting:
        raise PreconditionError(
            "logical count is undefined for non-commuting checks"
        )
    return code.n - rank(code.h_x) - rank(code.h_z)


def hgp_k_formula(c1: ClassicalCode, c2: ClassicalCode) -> int:
    """k1 k2 + k1^T k2^T from the classical dimensions alone."""
    k1 = c1.dimension()
    k2 = c2.dimension()
    k1t = c1.transpose_code().dimension()
    k2t = c2.transpose_code().dimension()
    return k1 * k2 + k1t * k2t


def _echelon_reduce(pivots: dict[int, int], vec: int) -> int:
    while vec:
        top = vec.bit_length() - 1
        if top not in pivots:
            return vec
        vec ^= pivots[top]
    return 0


def _coset_min_weight(stab_rows: list[int], logical_rows: list[int]) -> int | None:
    """Minimum weight over span(stab + logical) with a non-zero logical part.

    Gray-code enumeration flips one row per step; the set of currently
    included logical rows is tracked as a mask, so spotting non-trivial
    cosets is O(1) per step.
    """
    order = logical_rows + stab_rows
    n_log = len(logical_rows)
    if n_log == 0:
        return None
    best = None
    current = 0
    logical_mask = 0
    for step in range(1, 1 << len(order)):
        bit = (step & -step).bit_length() - 1
        current ^= order[bit]
        if bit < n_log:
            logical_mask ^= 1 << bit
        if logical_mask:
            w = current.bit_count()
            if best is None or w < best:
                best = w
    return best


def _directional_distance(h_kernel_side: BitMatrix, h_stab_side: BitMatrix,
                          budget: int) -> int | None:
    """Min weight over kernel(h_kernel_side) outside rowspace(h_stab_side)."""
    kernel_dim = h_kernel_side.cols - rank(h_kernel_side)
    if (1 << kernel_dim) > budget:
        raise BudgetError("distance enumeration", 1 << kernel_dim, budget)
    pivots: dict[int, int] = {}
    stab_rows = []
    for row in h_stab_side.rows_as_ints():
        residue = _echelon_reduce(pivots, row)
        if residue:
            pivots[residue.bit_length() - 1] = residue
            stab_rows.append(residue)
    logical_rows = []
    for row in kernel_basis(h_kernel_side).rows_as_ints():
        residue = _echelon_reduce(pivots, row)
        if residue:
            pivots[residue.bit_length() - 1] = residue
            logical_rows.append(residue)
    return _coset_min_weight(stab_rows, logical_rows)


def css_distance(code: CSSCode, budget: int = DEFAULT_BUDGET):
    """Exact (d_x, d_z, d) by coset enumeration; refuses beyond `budget`.

    d_z is the lightest Z-type logical (kernel of H_X modulo H_Z rows);
    d_x symmetric.  All three are None when k = 0.
    """
    if not code.commuting:
        raise PreconditionError("distance is undefined for non-commuting checks")
    if logical_count(code) == 0:
        return None, None, None
    d_z = _directional_distance(code.h_x, code.h_z, budget)
    d_x = _directional_distance(code.h_z, code.h_x, budget)
    d = min(x for x in (d_x, d_z) if x is not None)
    return d_x, d_z, d


def css_params(code: CSSCode, budget: int = DEFAULT_BUDGET,
               with_distance: bool = True) -> CSSParams:
    k = logical_count(code)
    if not with_distance or k == 0:
        return CSSParams(n=code.n, k=k)
    d_x, d_z, d = css_distance(code, budget)
    return CSSParams(n=code.n, k=k, d=d, d_x=d_x, d_z=d_z)


def hgp_distance_bound(c1: ClassicalCode, c2: ClassicalCode) -> int | None:
    """min over the defined members of {d1, d2, d1^T, d2^T}.

    Codes with k = 0 contribute nothing; None when all four are empty.
    """
    candidates = []
    for code in (c1, c2, c1.transpose_code(), c2.transpose_code()):
        d = code.min_distance()
        if d is not None:
            candidates.append(d)
    return min(candidates) if candidates else None


def hgp_canonical_logicals(c1: ClassicalCode, c2: ClassicalCode) -> LogicalBasis:
    """Canonical anticommuting pairs from systematic classical bases.

    Z logicals place a codeword of the first code along a Q1 row at one
    of the second code's systematic bits (and the transpose analogue on
    Q2); X logicals are dual.  The pairing matrix comes out exactly the
    identity, which also certifies that no representative sits in the
    opposite stabiliser row space.
    """
    k1, k2 = c1.dimension(), c2.dimension()
    c1t, c2t = c1.transpose_code(), c2.transpose_code()
    k1t, k2t = c1t.dimension(), c2t.dimension()
    total = k1 * k2 + k1t * k2t
    if total == 0:
        raise PreconditionError("code has no logical qubits")
    n1, m1 = c1.n, c1.m
    n2, m2 = c2.n, c2.m
    n = n1 * n2 + m1 * m2

    def pack(rows):
        return BitMatrix.from_row_ints(rows, n)

    z_rows = []
    x_rows = []
    if k1 * k2:
        sys1 = c1.systematic_basis()
        sys2 = c2.systematic_basis()
        gen1 = sys1.generator.rows_as_ints()
        gen2 = sys2.generator.rows_as_ints()
        for a in range(k1):
            for b in range(k2):
                word = gen1[a]
                pos = sys2.column_permutation[b]
                vec = 0
                j1 = 0
                while word:
                    if word & 1:
                        vec |= 1 << (j1 * n2 + pos)
                    word >>= 1
                    j1 += 1
                z_rows.append(vec)
                word2 = gen2[b]
                posa = sys1.column_permutation[a]
                vec2 = 0
                j2 = 0
                while word2:
                    if word2 & 1:
                        vec2 |= 1 << (posa * n2 + j2)
                    word2 >>= 1
                    j2 += 1
                x_rows.append(vec2)
    if k1t * k2t:
        sys1t = c1t.systematic_basis()
        sys2t = c2t.systematic_basis()
        gen1t = sys1t.generator.rows_as_ints()
        gen2t = sys2t.generator.rows_as_ints()
        offset = n1 * n2
        for c in range(k1t):
            for d in range(k2t):
                posc = sys1t.column_permutation[c]
                word = gen2t[d]
                vec = 0
                j2 = 0
                while word:
                    if word & 1:
                        vec |= 1 << (offset + posc * m2 + j2)
                    word >>= 1
                    j2 += 1
                z_rows.append(vec)
                word2 = gen1t[c]
                posd = sys2t.column_permutation[d]
                vec2 = 0
                j1 = 0
                while word2:
                    if word2 & 1:
                        vec2 |= 1 << (offset + j1 * m2 + posd)
                    word2 >>= 1
                    j1 += 1
                x_rows.append(vec2)

    basis = LogicalBasis(
        x_logicals=pack(x_rows),
        z_logicals=pack(z_rows),
        pairing=matmul(pack(x_rows), transpose(pack(z_rows))),
    )
    if basis.pairing != BitMatrix.identity(total):
        raise AssertionError("canonical logical pairing failed to reduce to identity")
    return basis


def verify_logical_basis(code: CSSCode, basis: LogicalBasis) -> None:
    """Kernel membership and stabiliser-independence of every representative."""
    if not matmul(code.h_z, transpose(basis.x_logicals)).is_zero():
        raise AssertionError("an X logical leaves kernel(H_Z)")
    if not matmul(code.h_x, transpose(basis.z_logicals)).is_zero():
        raise AssertionError("a Z logical leaves kernel(H_X)")
    k = basis.x_logicals.rows
    if rank(vstack(code.h_x, basis.x_logicals)) != rank(code.h_x) + k:
        raise AssertionError("an X logical lies in the X stabiliser row space")
    if rank(vstack(code.h_z, basis.z_logicals)) != rank(code.h_z) + k:
        raise AssertionError("a Z logical lies in the Z stabiliser row space")


def lp_bp_coincide(
    m1: GroupAlgebraMatrix, m2: GroupAlgebraMatrix
) -> tuple[bool, list[int] | None]:
    """Compare the lifted product with the balanced product of its lifts.

    Both routes use the canonical vertex ordering; coincidence means the
    parity-check matrices agree under the identity relabelling, which is
    returned as the qubit permutation.  Inputs whose expanded graphs do
    not admit the paired regular actions (left multiplication fails to
    preserve the second graph for non-central entries) are rejected.
    """
    try:
        graph_a, graph_b, act_a, act_b = lift_with_regular_actions(m1, m2)
    except PreconditionError as exc:
        raise PreconditionError(
            f"inputs do not lift as quotient-compatible coverings: {exc}"
        ) from exc
    bp = balanced_product(graph_a, graph_b, act_a, act_b)
    lp = lifted_product(m1, m2)
    if bp.h_x == lp.h_x and bp.h_z == lp.h_z:
        return True, list(range(lp.n))
    return False, None


def search_noncommuting_lp(group, max_rows: int, max_cols: int, draws: int,
                           seed: int):
    """Seeded random hunt for a lifted product with anticommuting checks.

    Returns (m1, m2, draw_index) for the first non-commuting instance,
    or None when every draw commutes.
    """
    rng = random.Random(seed)

    def random_matrix():
        rows = rng.randint(1, max_rows)
        cols = rng.randint(1, max_cols)
        masks = [
            [rng.getrandbits(group.order) for _ in range(cols)]
            for _ in range(rows)
        ]
        return GroupAlgebraMatrix(
            group,
            [
                [GroupAlgebraElement(group, m) for m in row]
                for row in masks
            ],
        )

    for draw in range(draws):
        m1 = random_matrix()
        m2 = random_matrix()
        code = lifted_product(m1, m2)
        if not code.commuting:
            return m1, m2, draw
    return None
