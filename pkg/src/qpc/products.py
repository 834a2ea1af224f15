"""The three product constructions and their coordinate layouts.

Every constructor returns a CSSCode whose column order is Q1 block then
Q2 block; all layouts and golden files depend on that order, so it is
never permuted.  Commutation is computed, never assumed: lifted products
over non-commuting entries legitimately fail it and are returned with
`commuting=False` for downstream code to refuse.

Coordinates follow the closed forms of the 2D (hypergraph) and 3D
(lifted/balanced) arrangements: the x axis runs over first-factor checks
then bits, the y axis over second-factor bits then checks, and the z
axis (3D only) over group-element rows anchored at orbit basepoints.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .classical import ClassicalCode
from .errors import DimensionError, PreconditionError
from .gf2 import BitMatrix, hstack, kron, matmul, transpose
from .groups import (
    GroupAlgebraMatrix,
    binary_map,
    conj_transpose,
    ring_hstack,
    ring_kron_identity,
)
from .tanner import GroupAction, TannerGraph, has_fixed_edge, is_free, part_orbits

QUBIT_ROLES = ("q1", "q2")
CHECK_ROLES = ("x", "z")


@dataclass(frozen=True)
class CoordinateTable:
    """One coordinate per X check, Z check and qubit (Q1/Q2 blocks).

    2D tables hold (x, y) pairs, 3D tables (x, y, z) triples.  The four
    families never collide; that is validated at construction.  `edges`
    optionally lists (check, qubit) incidences with block-local indices.
    """

    kind: str
    x_checks: tuple
    z_checks: tuple
    qubits_q1: tuple
    qubits_q2: tuple
    edges: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in ("2d", "3d"):
            raise PreconditionError(f"unknown layout kind {self.kind!r}")
        width = 2 if self.kind == "2d" else 3
        seen = {}
        for role, coords in self.families().items():
            for idx, coord in enumerate(coords):
                if len(coord) != width:
                    raise PreconditionError(
                        f"{role}[{idx}] has {len(coord)} components, expected {width}"
                    )
                if coord in seen:
                    raise PreconditionError(
                        f"coordinate clash: {role}[{idx}] and {seen[coord]} at {coord}"
                    )
                seen[coord] = f"{role}[{idx}]"

    def families(self) -> dict:
        return {
            "x": self.x_checks,
            "z": self.z_checks,
            "q1": self.qubits_q1,
            "q2": self.qubits_q2,
        }


class CSSCode:
    """CSS code as an (H_X, H_Z) pair with provenance and a layout."""

    def __init__(self, h_x: BitMatrix, h_z: BitMatrix, q1_size: int,
                 layout: CoordinateTable, provenance: dict):
        if h_x.cols != h_z.cols:
            raise DimensionError(
                f"H_X has {h_x.cols} columns but H_Z has {h_z.cols}"
            )
        self.h_x = h_x
        self.h_z = h_z
        self.n = h_x.cols
        self.q1_size = q1_size
        self.q2_size = self.n - q1_size
        if self.q2_size < 0:
            raise DimensionError(f"q1 block {q1_size} exceeds n = {self.n}")
        if (
            len(layout.x_checks) != h_x.rows
            or len(layout.z_checks) != h_z.rows
            or len(layout.qubits_q1) != self.q1_size
            or len(layout.qubits_q2) != self.q2_size
        ):
            raise DimensionError("layout does not cover every vertex exactly once")
        self.layout = layout
        self.provenance = provenance
        self.commuting = matmul(h_x, transpose(h_z)).is_zero()

    @property
    def m_x(self) -> int:
        return self.h_x.rows

    @property
    def m_z(self) -> int:
        return self.h_z.rows

    def total_vertices(self) -> int:
        return self.n + self.m_x + self.m_z

    def qubit_role(self, j: int) -> tuple[str, int]:
        if j < self.q1_size:
            return ("q1", j)
        return ("q2", j - self.q1_size)

    def __repr__(self):
        kind = self.provenance.get("kind", "css")
        return (
            f"CSSCode({kind}, n={self.n}, m_x={self.m_x}, m_z={self.m_z},"
            f" commuting={self.commuting})"
        )


def layout_of(code: CSSCode) -> CoordinateTable:
    return code.layout


def css_from_matrices(h_x: BitMatrix, h_z: BitMatrix, q1_size: int | None = None) -> CSSCode:
    """Wrap raw check matrices, e.g. read back from files.

    Without block provenance the qubits get the 1D line layout (checks
    first, then qubits, by index), mirroring the classical convention.
    """
    if q1_size is None:
        q1_size = h_x.cols
    layout = CoordinateTable(
        kind="2d",
        x_checks=tuple((i, 0) for i in range(h_x.rows)),
        z_checks=tuple((h_x.rows + i, 0) for i in range(h_z.rows)),
        qubits_q1=tuple(
            (h_x.rows + h_z.rows + j, 0) for j in range(q1_size)
        ),
        qubits_q2=tuple(
            (h_x.rows + h_z.rows + j, 0) for j in range(q1_size, h_x.cols)
        ),
        edges=_incidence_edges(h_x, h_z, q1_size),
    )
    return CSSCode(h_x, h_z, q1_size=q1_size, layout=layout,
                   provenance={"kind": "from-matrices"})


def _incidence_edges(h_x: BitMatrix, h_z: BitMatrix, q1_size: int) -> tuple:
    edges = []
    for role, h in (("x", h_x), ("z", h_z)):
        dense = h.to_dense()
        for i, j in zip(*np.nonzero(dense)):
            j = int(j)
            if j < q1_size:
                target = ("q1", j)
            else:
                target = ("q2", j - q1_size)
            edges.append(((role, int(i)), target))
    return tuple(edges)


# -- hypergraph product -------------------------------------------------------


def _hgp_layout(m1, n1, m2, n2, edges=()) -> CoordinateTable:
    return CoordinateTable(
        kind="2d",
        x_checks=tuple((i // n2, i % n2) for i in range(m1 * n2)),
        z_checks=tuple((i // m2 + m1, (i % m2) + n2) for i in range(n1 * m2)),
        qubits_q1=tuple((j // n2 + m1, j % n2) for j in range(n1 * n2)),
        qubits_q2=tuple((j // m2, (j % m2) + n2) for j in range(m1 * m2)),
        edges=edges,
    )


def hgp(c1: ClassicalCode, c2: ClassicalCode) -> CSSCode:
    """Hypergraph product: H_X = (H1 x I | I x H2^T), H_Z = (I x H2 | H1^T x I)."""
    h1, h2 = c1.h, c2.h
    m1, n1 = h1.rows, h1.cols
    m2, n2 = h2.rows, h2.cols
    h_x = hstack(
        kron(h1, BitMatrix.identity(n2)),
        kron(BitMatrix.identity(m1), transpose(h2)),
    )
    h_z = hstack(
        kron(BitMatrix.identity(n1), h2),
        kron(transpose(h1), BitMatrix.identity(m2)),
    )
    q1 = n1 * n2
    layout = _hgp_layout(m1, n1, m2, n2, _incidence_edges(h_x, h_z, q1))
    return CSSCode(
        h_x,
        h_z,
        q1_size=q1,
        layout=layout,
        provenance={
            "kind": "hgp",
            "m1": m1, "n1": n1, "m2": m2, "n2": n2,
        },
    )


# -- lifted product -----------------------------------------------------------


def _lp_layout(m1, n1, m2, n2, l, edges=()) -> CoordinateTable:
    return CoordinateTable(
        kind="3d",
        x_checks=tuple(
            (i // (n2 * l), (i // l) % n2, i % l) for i in range(m1 * n2 * l)
        ),
        z_checks=tuple(
            (i // (m2 * l) + m1, ((i // l) % m2) + n2, i % l)
            for i in range(n1 * m2 * l)
        ),
        qubits_q1=tuple(
            (j // (n2 * l) + m1, (j // l) % n2, j % l) for j in range(n1 * n2 * l)
        ),
        qubits_q2=tuple(
            (j // (m2 * l), ((j // l) % m2) + n2, j % l) for j in range(m1 * m2 * l)
        ),
        edges=edges,
    )


def lifted_product(m1: GroupAlgebraMatrix, m2: GroupAlgebraMatrix) -> CSSCode:
    """Hypergraph product over the group algebra, expanded by the binary map.

    Checks are not guaranteed to commute; inspect the `commuting` flag.
    """
    if not m1.group.same_group(m2.group):
        raise PreconditionError(
            f"lifted product needs one shared group, got {m1.group.spec}"
            f" and {m2.group.spec}"
        )
    l = m1.group.order
    r1, c1 = m1.shape
    r2, c2 = m2.shape
    ring_hx = ring_hstack(
        ring_kron_identity(m1, c2, "right"),
        ring_kron_identity(conj_transpose(m2), r1, "left"),
    )
    ring_hz = ring_hstack(
        ring_kron_identity(m2, c1, "left"),
        ring_kron_identity(conj_transpose(m1), r2, "right"),
    )
    h_x = binary_map(ring_hx)
    h_z = binary_map(ring_hz)
    q1 = c1 * c2 * l
    layout = _lp_layout(r1, c1, r2, c2, l, _incidence_edges(h_x, h_z, q1))
    return CSSCode(
        h_x,
        h_z,
        q1_size=q1,
        layout=layout,
        provenance={
            "kind": "lifted_product",
            "group": m1.group.spec,
            "l": l,
            "m1": r1, "n1": c1, "m2": r2, "n2": c2,
        },
    )


def hgp_of_lifts(m1: GroupAlgebraMatrix, m2: GroupAlgebraMatrix) -> CSSCode:
    """Comparison baseline: expand both inputs first, then take the plain product.

    Total vertex count is l times that of the lifted product of the same
    inputs.
    """
    if not m1.group.same_group(m2.group):
        raise PreconditionError("hgp_of_lifts needs one shared group")
    code = hgp(ClassicalCode(binary_map(m1)), ClassicalCode(binary_map(m2)))
    code.provenance = {
        "kind": "hgp_of_lifts",
        "group": m1.group.spec,
        "l": m1.group.order,
        "base": code.provenance,
    }
    return code


def lift_with_regular_actions(
    m1: GroupAlgebraMatrix, m2: GroupAlgebraMatrix
) -> tuple[TannerGraph, TannerGraph, GroupAction, GroupAction]:
    """Expanded Tanner graphs of both inputs with their deck actions.

    The first factor carries slot right-multiplication (stored as the
    left action s -> s * h^-1), the second slot left-multiplication;
    feeding these to `balanced_product` reproduces the lifted product
    under the identity labelling.  Left multiplication only preserves
    the second graph when the group is abelian, so non-abelian inputs
    are rejected by action validation.
    """
    group = m1.group
    if not group.same_group(m2.group):
        raise PreconditionError("both matrices must share one group")
    l = group.order
    graph_a = TannerGraph.from_bitmatrix(binary_map(m1))
    graph_b = TannerGraph.from_bitmatrix(binary_map(m2))

    def slot_perms(count: int, table_column) -> np.ndarray:
        base = (np.arange(count * l) // l) * l
        slot = np.arange(count * l) % l
        return base + table_column[slot]

    act_a_perms = {
        "check": np.stack(
            [
                slot_perms(m1.rows, group.mul[:, group.inverse(h)])
                for h in range(l)
            ]
        ),
        "bit": np.stack(
            [
                slot_perms(m1.cols, group.mul[:, group.inverse(h)])
                for h in range(l)
            ]
        ),
    }
    act_b_perms = {
        "check": np.stack([slot_perms(m2.rows, group.mul[h, :]) for h in range(l)]),
        "bit": np.stack([slot_perms(m2.cols, group.mul[h, :]) for h in range(l)]),
    }
    act_a = GroupAction(group, graph_a, act_a_perms)
    act_b = GroupAction(group, graph_b, act_b_perms)
    return graph_a, graph_b, act_a, act_b


# -- balanced product ---------------------------------------------------------


def _product_orbits(act_a: GroupAction, part_a: str, act_b: GroupAction, part_b: str):
    """Orbits of (u, v) pairs under h . (u, v) = (u . h, h^-1 . v).

    With stored left actions both coordinates receive the inverse
    element's permutation.  Scanning pairs lexicographically makes each
    orbit's first-seen member its basepoint; freeness on the first
    factor guarantees that member carries the A-class basepoint.
    """
    group = act_a.group
    order = group.order
    pa = act_a.perms[part_a]
    pb = act_b.perms[part_b]
    size_b = pb.shape[1]
    inv = [group.inverse(h) for h in range(order)]
    seen = np.zeros(pa.shape[1] * size_b, dtype=bool)
    orbits = []
    index = {}
    for u in range(pa.shape[1]):
        for v in range(size_b):
            key = u * size_b + v
            if seen[key]:
                continue
            members = []
            for h in range(order):
                w = (int(pa[inv[h], u]), int(pb[inv[h], v]))
                wkey = w[0] * size_b + w[1]
                if not seen[wkey]:
                    seen[wkey] = True
                    members.append(w)
            class_id = len(orbits)
            for w in members:
                index[w] = class_id
            orbits.append(((u, v), members))
    return orbits, index


def balanced_product(
    a: TannerGraph,
    b: TannerGraph,
    act_a: GroupAction,
    act_b: GroupAction,
) -> CSSCode:
    """Quotient of the Cartesian Tanner complex by the shared group action.

    Qubits are classes of bit x bit and check x check pairs, X checks of
    check x bit pairs, Z checks of bit x check pairs.  The action on the
    first factor must be free and pin no edge; the second action only
    has to be valid.  Parallel quotient edges are reduced mod 2 in the
    parity-check matrices, with the reduction count recorded in
    provenance.
    """
    group = act_a.group
    if not group.same_group(act_b.group):
        raise PreconditionError("balanced product needs one shared group")
    if act_a.graph is not a or act_b.graph is not b:
        if act_a.graph != a or act_b.graph != b:
            raise PreconditionError("actions were built for different graphs")
    free, witness = is_free(act_a)
    if not free:
        raise PreconditionError("action on the first factor is not free", witness)
    pinned, witness = has_fixed_edge(act_a)
    if pinned:
        raise PreconditionError(
            "first factor has an edge pinned by a non-identity element", witness
        )

    orbits = {}
    index = {}
    for name, (part_a, part_b) in {
        "q1": ("bit", "bit"),
        "q2": ("check", "check"),
        "x": ("check", "bit"),
        "z": ("bit", "check"),
    }.items():
        orbits[name], index[name] = _product_orbits(act_a, part_a, act_b, part_b)

    a_orbit_check = part_orbits(act_a, "check")
    a_orbit_bit = part_orbits(act_a, "bit")
    b_orbit_check = part_orbits(act_b, "check")
    b_orbit_bit = part_orbits(act_b, "bit")
    m1, n1 = len(a_orbit_check), len(a_orbit_bit)
    m2, n2 = len(b_orbit_check), len(b_orbit_bit)

    def class_maps(orbit_list):
        cls = {}
        row = {}
        for ci, (base, members, rows) in enumerate(orbit_list):
            for w in members:
                cls[w] = ci
                row[w] = rows[w]
        return cls, row

    a_check_cls, _ = class_maps(a_orbit_check)
    a_bit_cls, _ = class_maps(a_orbit_bit)
    b_check_cls, b_check_row = class_maps(b_orbit_check)
    b_bit_cls, b_bit_row = class_maps(b_orbit_bit)

    n_q1 = len(orbits["q1"])
    n_q2 = len(orbits["q2"])
    reduced = 0

    def fill(check_name):
        nonlocal reduced
        rows = len(orbits[check_name])
        counts_q1 = np.zeros((rows, n_q1), dtype=np.int64)
        counts_q2 = np.zeros((rows, n_q2), dtype=np.int64)
        for row_idx, (rep, _members) in enumerate(orbits[check_name]):
            u, v = rep
            if check_name == "x":
                # A-edges (check u, bit a') keep the B part: land in Q1
                for (c, a2), mult in a.edges.items():
                    if c == u:
                        counts_q1[row_idx, index["q1"][(a2, v)]] += mult
                # B-edges (check g, bit v) keep the A part: land in Q2
                for (g, b2), mult in b.edges.items():
                    if b2 == v:
                        counts_q2[row_idx, index["q2"][(u, g)]] += mult
            else:
                # Z check: rep is (bit u, check v)
                for (g, b2), mult in b.edges.items():
                    if g == v:
                        counts_q1[row_idx, index["q1"][(u, b2)]] += mult
                for (c, a2), mult in a.edges.items():
                    if a2 == u:
                        counts_q2[row_idx, index["q2"][(c, v)]] += mult
        reduced += int((counts_q1 > 1).sum() + (counts_q2 > 1).sum())
        return np.concatenate([counts_q1 % 2, counts_q2 % 2], axis=1).astype(np.uint8)

    h_x = BitMatrix.from_dense(fill("x"))
    h_z = BitMatrix.from_dense(fill("z"))

    def coords(name, a_cls, a_offset, b_cls, b_row, b_offset):
        out = []
        for rep, _members in orbits[name]:
            u, v = rep
            out.append((a_cls[u] + a_offset, b_cls[v] + b_offset, b_row[v]))
        return tuple(out)

    layout = CoordinateTable(
        kind="3d",
        x_checks=coords("x", a_check_cls, 0, b_bit_cls, b_bit_row, 0),
        z_checks=coords("z", a_bit_cls, m1, b_check_cls, b_check_row, n2),
        qubits_q1=coords("q1", a_bit_cls, m1, b_bit_cls, b_bit_row, 0),
        qubits_q2=coords("q2", a_check_cls, 0, b_check_cls, b_check_row, n2),
        edges=_incidence_edges(h_x, h_z, n_q1),
    )
    total = sum(len(o) for o in orbits.values())
    product_size = (a.check_count + a.bit_count) * (b.check_count + b.bit_count)
    return CSSCode(
        h_x,
        h_z,
        q1_size=n_q1,
        layout=layout,
        provenance={
            "kind": "balanced_product",
            "group": group.spec,
            "order": group.order,
            "m1": m1, "n1": n1, "m2": m2, "n2": n2,
            "total_vertex_classes": total,
            "product_vertices": product_size,
            "mod2_reduced_entries": reduced,
            "b_action_free": is_free(act_b)[0],
        },
    )
