"""Finite groups and matrices over the group algebra F2[G].

A group is an explicit multiplication table with the identity fixed at
index 0; element ordering is frozen at construction so that the binary
expansion of any algebra element is bit-for-bit reproducible.

`binary_map` sends a group element to its left regular representation
(B(g)[p, q] = 1 iff g * q = p) and extends linearly, which makes it a
ring homomorphism into binary matrices.  The conjugate transpose
transposes the grid and inverts every group element, so that
B(conj_transpose(M)) equals B(M) transposed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionError, FormatError, PreconditionError
from .gf2 import BitMatrix

_FULL_ASSOC_LIMIT = 64
_ASSOC_SAMPLES = 20000


class FiniteGroup:
    """Finite group as an explicit l x l multiplication table, identity 0."""

    __slots__ = ("order", "mul", "inv", "spec", "_gen_names", "_cyclic_shape")

    def __init__(self, mul_table, spec: str | None = None,
                 gen_names: dict[str, int] | None = None,
                 cyclic_shape: tuple[int, ...] | None = None):
        mul = np.asarray(mul_table, dtype=np.int64)
        order = mul.shape[0]
        if mul.shape != (order, order):
            raise PreconditionError(f"multiplication table must be square, got {mul.shape}")
        if mul.min(initial=0) < 0 or mul.max(initial=0) >= order:
            raise PreconditionError("table entries out of range")
        _validate_group_table(mul)
        self.order = order
        self.mul = mul
        inv = np.empty(order, dtype=np.int64)
        for g in range(order):
            hits = np.nonzero(mul[g] == 0)[0]
            inv[g] = hits[0]
            if mul[inv[g], g] != 0:
                raise PreconditionError(f"element {g} has no two-sided inverse")
        self.inv = inv
        self.spec = spec or f"table:{order}"
        self._gen_names = dict(gen_names or {})
        self._cyclic_shape = cyclic_shape

    # -- constructors --------------------------------------------------

    @classmethod
    def cyclic(cls, l: int) -> "FiniteGroup":
        if l < 1:
            raise PreconditionError(f"cyclic group order must be >= 1, got {l}")
        idx = np.arange(l)
        mul = (idx[:, None] + idx[None, :]) % l
        gens = {"x": 1} if l > 1 else {}
        return cls(mul, spec=f"Z{l}", gen_names=gens, cyclic_shape=(l,))

    @classmethod
    def direct_product(cls, a: int, b: int) -> "FiniteGroup":
        """Z_a x Z_b with elements ordered (i, j) -> i*b + j."""
        if a < 1 or b < 1:
            raise PreconditionError("cyclic factors must be >= 1")
        ia = np.arange(a * b) // b
        ib = np.arange(a * b) % b
        mul = ((ia[:, None] + ia[None, :]) % a) * b + (ib[:, None] + ib[None, :]) % b
        gens: dict[str, int] = {}
        if a > 1:
            gens["x"] = b  # (1, 0)
        if b > 1:
            gens["y"] = 1  # (0, 1)
        return cls(mul, spec=f"Z{a}xZ{b}", gen_names=gens, cyclic_shape=(a, b))

    @classmethod
    def from_table_text(cls, text: str, spec: str | None = None) -> "FiniteGroup":
        """Table file: first line the order l, then l rows of l indices."""
        rows = []
        order = None
        for ln_no, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.split("#", 1)[0].strip()
            if not stripped:
                continue
            fields = stripped.split()
            try:
                values = [int(f) for f in fields]
            except ValueError:
                raise FormatError("table entries must be integers", ln_no) from None
            if order is None:
                if len(values) != 1:
                    raise FormatError("expected the group order alone", ln_no)
                order = values[0]
                continue
            if len(values) != order:
                raise FormatError(f"expected {order} entries", ln_no)
            rows.append(values)
        if order is None or len(rows) != order:
            raise FormatError(f"expected {order or '?'} table rows, got {len(rows)}")
        gens = {f"g{i}": i for i in range(1, order)}
        return cls(np.array(rows), spec=spec, gen_names=gens)

    # -- structure -----------------------------------------------------

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def multiply(self, g: int, h: int) -> int:
        return int(self.mul[g, h])

    def inverse(self, g: int) -> int:
        return int(self.inv[g])

    def generator_names(self) -> dict[str, int]:
        return dict(self._gen_names)

    def element_name(self, i: int) -> str:
        if i == 0:
            return "1"
        if self._cyclic_shape is not None:
            if len(self._cyclic_shape) == 1:
                return "x" if i == 1 else f"x^{i}"
            a, b = divmod(i, self._cyclic_shape[1])
            parts = []
            if a:
                parts.append("x" if a == 1 else f"x^{a}")
            if b:
                parts.append("y" if b == 1 else f"y^{b}")
            return "*".join(parts)
        return f"g{i}"

    def same_group(self, other: "FiniteGroup") -> bool:
        return self is other or (
            self.order == other.order and np.array_equal(self.mul, other.mul)
        )

    def __repr__(self) -> str:
        return f"FiniteGroup({self.spec}, order={self.order})"


def _validate_group_table(mul: np.ndarray) -> None:
    order = mul.shape[0]
    if order == 0:
        raise PreconditionError("empty group table")
    idx = np.arange(order)
    if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
        raise PreconditionError("element 0 is not a two-sided identity")
    if not (np.array_equal(np.sort(mul, axis=1), np.tile(idx, (order, 1)))
            and np.array_equal(np.sort(mul, axis=0), np.tile(idx[:, None], (1, order)))):
        raise PreconditionError("table is not a Latin square")
    if order <= _FULL_ASSOC_LIMIT:
        left = mul[mul[:, :, None], idx[None, None, :]]
        right = mul[idx[:, None, None], mul[None, :, :]]
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise PreconditionError(f"associativity fails at triple {tuple(bad)}")
    else:
        rng = np.random.default_rng(0)
        a = rng.integers(0, order, _ASSOC_SAMPLES)
        b = rng.integers(0, order, _ASSOC_SAMPLES)
        c = rng.integers(0, order, _ASSOC_SAMPLES)
        if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
            raise PreconditionError("associativity fails on sampled triples")


def parse_group_spec(spec: str) -> FiniteGroup:
    """Accepted specs: "Z<l>", "Z<a>xZ<b>", "table:<path>"."""
    spec = spec.strip()
    if spec.startswith("table:"):
        path = Path(spec[len("table:"):])
        return FiniteGroup.from_table_text(path.read_text(), spec=spec)
    m = re.fullmatch(r"Z(\d+)xZ(\d+)", spec)
    if m:
        return FiniteGroup.direct_product(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"Z(\d+)", spec)
    if m:
        return FiniteGroup.cyclic(int(m.group(1)))
    raise FormatError(f"unrecognised group spec {spec!r}")


@dataclass(frozen=True)
class GroupAlgebraElement:
    """Element of F2[G], stored as a bit mask over the group's elements."""

    group: FiniteGroup
    mask: int

    @classmethod
    def zero(cls, group: FiniteGroup) -> "GroupAlgebraElement":
        return cls(group, 0)

    @classmethod
    def one(cls, group: FiniteGroup) -> "GroupAlgebraElement":
        return cls(group, 1)

    @classmethod
    def monomial(cls, group: FiniteGroup, g: int) -> "GroupAlgebraElement":
        if not 0 <= g < group.order:
            raise PreconditionError(f"element {g} out of range")
        return cls(group, 1 << g)

    @classmethod
    def from_indices(cls, group: FiniteGroup, indices) -> "GroupAlgebraElement":
        mask = 0
        for g in indices:
            mask ^= 1 << g
        return cls(group, mask)

    def support(self) -> tuple[int, ...]:
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return tuple(out)

    def is_zero(self) -> bool:
        return self.mask == 0

    def is_monomial(self) -> bool:
        """At most one non-zero coefficient."""
        return self.mask.bit_count() <= 1

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check_group(other)
        return GroupAlgebraElement(self.group, self.mask ^ other.mask)

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check_group(other)
        mul = self.group.mul
        mask = 0
        for g in self.support():
            for h in other.support():
                mask ^= 1 << int(mul[g, h])
        return GroupAlgebraElement(self.group, mask)

    def conj(self) -> "GroupAlgebraElement":
        """Replace each group element by its inverse."""
        inv = self.group.inv
        mask = 0
        for g in self.support():
            mask |= 1 << int(inv[g])
        return GroupAlgebraElement(self.group, mask)

    def _check_group(self, other: "GroupAlgebraElement") -> None:
        if not self.group.same_group(other.group):
            raise PreconditionError(
                f"elements live in different groups ({self.group.spec} vs {other.group.spec})"
            )

    def name(self) -> str:
        if self.mask == 0:
            return "0"
        return "+".join(self.group.element_name(g) for g in self.support())


class GroupAlgebraMatrix:
    """Matrix with entries in F2[G], all sharing one group."""

    __slots__ = ("group", "rows", "cols", "entries")

    def __init__(self, group: FiniteGroup, entries, cols: int | None = None):
        # `cols` disambiguates the width of matrices with zero rows
        self.group = group
        ent = tuple(tuple(row) for row in entries)
        self.rows = len(ent)
        self.cols = len(ent[0]) if ent else (cols or 0)
        if ent and cols is not None and cols != self.cols:
            raise DimensionError(f"declared {cols} columns, rows have {self.cols}")
        for row in ent:
            if len(row) != self.cols:
                raise DimensionError("ragged entry grid")
            for e in row:
                if not isinstance(e, GroupAlgebraElement) or not e.group.same_group(group):
                    raise PreconditionError("entries must share the matrix group")
        self.entries = ent

    @classmethod
    def from_masks(cls, group: FiniteGroup, masks) -> "GroupAlgebraMatrix":
        return cls(
            group,
            [[GroupAlgebraElement(group, int(m)) for m in row] for row in masks],
        )

    @classmethod
    def identity(cls, n: int, group: FiniteGroup) -> "GroupAlgebraMatrix":
        one = GroupAlgebraElement.one(group)
        zero = GroupAlgebraElement.zero(group)
        return cls(group, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> GroupAlgebraElement:
        return self.entries[i][j]

    def is_monomial(self) -> bool:
        return all(e.is_monomial() for row in self.entries for e in row)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.group.same_group(other.group)
            and all(
                a.mask == b.mask
                for ra, rb in zip(self.entries, other.entries)
                for a, b in zip(ra, rb)
            )
        )

    def __repr__(self) -> str:
        return f"GroupAlgebraMatrix({self.rows}x{self.cols} over {self.group.spec})"


def binary_map(m: GroupAlgebraMatrix) -> BitMatrix:
    """Expand every entry by the left regular representation.

    B(g)[p, q] = 1 iff g * q = p; sums of group elements expand to sums
    of permutation matrices mod 2.  The output is ml x nl.
    """
    l = m.group.order
    mul = m.group.mul
    cols_idx = np.arange(l)
    dense = np.zeros((m.rows * l, m.cols * l), dtype=np.uint8)
    for i in range(m.rows):
        for j in range(m.cols):
            for g in m.entries[i][j].support():
                dense[i * l + mul[g], j * l + cols_idx] ^= 1
    return BitMatrix.from_dense(dense)


def conj_transpose(m: GroupAlgebraMatrix) -> GroupAlgebraMatrix:
    """Transpose the grid and invert every group element in each entry."""
    return GroupAlgebraMatrix(
        m.group,
        [[m.entries[i][j].conj() for i in range(m.rows)] for j in range(m.cols)],
        cols=m.rows,
    )


def ring_kron_identity(m: GroupAlgebraMatrix, r: int, side: str) -> GroupAlgebraMatrix:
    """Kronecker with an r x r identity over the ring.

    side="right" builds m (x) I_r (each entry smeared over an r-block
    diagonal); side="left" builds I_r (x) m (r diagonal copies of m).
    """
    zero = GroupAlgebraElement.zero(m.group)
    if side == "right":
        ent = [
            [
                m.entries[i // r][j // r] if i % r == j % r else zero
                for j in range(m.cols * r)
            ]
            for i in range(m.rows * r)
        ]
    elif side == "left":
        ent = [
            [
                m.entries[i % m.rows][j % m.cols]
                if i // m.rows == j // m.cols
                else zero
                for j in range(m.cols * r)
            ]
            for i in range(m.rows * r)
        ]
    else:
        raise PreconditionError(f"side must be 'left' or 'right', got {side!r}")
    return GroupAlgebraMatrix(m.group, ent, cols=m.cols * r)


def ring_matmul(a: GroupAlgebraMatrix, b: GroupAlgebraMatrix) -> GroupAlgebraMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"ring matmul: inner shapes differ, {a.shape} x {b.shape}")
    if not a.group.same_group(b.group):
        raise PreconditionError("ring matmul: group mismatch")
    zero = GroupAlgebraElement.zero(a.group)
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = zero
            for k in range(a.cols):
                acc = acc + a.entries[i][k] * b.entries[k][j]
            row.append(acc)
        out.append(row)
    return GroupAlgebraMatrix(a.group, out, cols=b.cols)


def ring_hstack(a: GroupAlgebraMatrix, b: GroupAlgebraMatrix) -> GroupAlgebraMatrix:
    if a.rows != b.rows:
        raise DimensionError(f"ring hstack: row counts differ, {a.shape} vs {b.shape}")
    if not a.group.same_group(b.group):
        raise PreconditionError("ring hstack: group mismatch")
    return GroupAlgebraMatrix(
        a.group,
        [ra + rb for ra, rb in zip(a.entries, b.entries)],
        cols=a.cols + b.cols,
    )


# -- text format ------------------------------------------------------------

_TERM_RE = re.compile(r"(g\d+|[xy])(?:\^(\d+))?$")


def _parse_term(term: str, group: FiniteGroup, ln: int) -> int:
    """One product of generator powers; returns the group element index."""
    if term == "1":
        return 0
    gens = group.generator_names()
    acc = 0
    for factor in term.split("*"):
        match = _TERM_RE.match(factor.strip())
        if not match:
            raise FormatError(f"cannot parse term {term!r}", ln)
        base_name, power = match.group(1), int(match.group(2) or 1)
        if base_name in gens:
            base = gens[base_name]
        elif base_name.startswith("g") and base_name[1:].isdigit():
            base = int(base_name[1:])
            if base >= group.order:
                raise FormatError(f"element {base_name} out of range", ln)
        else:
            raise FormatError(f"unknown generator {base_name!r}", ln)
        for _ in range(power):
            acc = group.multiply(acc, base)
    # term written with the identity on the left, so acc already is g^k...
    return acc


def parse_element(text: str, group: FiniteGroup, ln: int = 0) -> GroupAlgebraElement:
    text = text.strip()
    if text == "0":
        return GroupAlgebraElement.zero(group)
    mask = 0
    for term in text.split("+"):
        mask ^= 1 << _parse_term(term.strip(), group, ln)
    return GroupAlgebraElement(group, mask)


def parse_ring_matrix(text: str) -> GroupAlgebraMatrix:
    """Header "m n group=<spec>", then m comma-separated polynomial rows."""
    lines = text.splitlines()
    header_idx = None
    for idx, raw in enumerate(lines):
        if raw.split("#", 1)[0].strip():
            header_idx = idx
            break
    if header_idx is None:
        raise FormatError("empty ring-matrix file")
    header = lines[header_idx].split("#", 1)[0].split()
    if len(header) != 3 or not header[2].startswith("group="):
        raise FormatError("expected header 'm n group=<spec>'", header_idx + 1)
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError:
        raise FormatError("expected integer dimensions", header_idx + 1) from None
    group = parse_group_spec(header[2][len("group="):])
    rows = []
    pos = header_idx
    for _ in range(m):
        pos += 1
        while pos < len(lines) and not lines[pos].split("#", 1)[0].strip():
            pos += 1
        if pos >= len(lines):
            raise FormatError(f"expected {m} rows of entries", len(lines))
        fields = lines[pos].split("#", 1)[0].split(",")
        if len(fields) != n:
            raise FormatError(f"expected {n} comma-separated entries", pos + 1)
        rows.append([parse_element(f, group, pos + 1) for f in fields])
    return GroupAlgebraMatrix(group, rows, cols=n)


def emit_ring_matrix(m: GroupAlgebraMatrix) -> str:
    lines = [f"{m.rows} {m.cols} group={m.group.spec}"]
    for row in m.entries:
        lines.append(",".join(e.name() for e in row))
    return "\n".join(lines) + "\n"
