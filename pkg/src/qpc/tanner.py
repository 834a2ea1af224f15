"""Tanner multigraphs, group actions, quotients and covering maps.

Graphs here are multisets of edges: quotients of free actions create
parallel edges (the 6-cycle mod Z3 collapses to a double edge), and
collapsing them silently would falsify every size claim downstream, so
multiplicity is first class.  The GF(2) biadjacency reduces multiplicity
mod 2 and reports when that reduction changed anything.

Actions are stored one permutation per group element per vertex part,
composing as a left action (perm(gh) = perm(g) after perm(h)).  Orbit
basepoints are always the lowest vertex index so that layouts, quotient
labellings and golden files are reproducible.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, FormatError, PreconditionError
from .gf2 import BitMatrix
from .groups import FiniteGroup, GroupAlgebraMatrix, binary_map, parse_group_spec


class TannerGraph:
    """Bipartite multigraph with check and bit parts."""

    __slots__ = ("check_count", "bit_count", "edges")

    def __init__(self, check_count: int, bit_count: int, edges):
        self.check_count = check_count
        self.bit_count = bit_count
        counter: Counter = Counter()
        items = edges.items() if isinstance(edges, Counter) else ((e, 1) for e in edges)
        for (c, b), mult in items:
            if not (0 <= c < check_count and 0 <= b < bit_count):
                raise PreconditionError(
                    f"edge ({c}, {b}) out of range for {check_count} checks, {bit_count} bits"
                )
            if mult < 1:
                raise PreconditionError(f"edge ({c}, {b}) has multiplicity {mult}")
            counter[(c, b)] += mult
        self.edges = counter

    @classmethod
    def from_bitmatrix(cls, h: BitMatrix) -> "TannerGraph":
        dense = h.to_dense()
        return cls(
            h.rows, h.cols, [(int(i), int(j)) for i, j in zip(*np.nonzero(dense))]
        )

    def biadjacency(self) -> tuple[BitMatrix, int]:
        """Mod-2 check/bit adjacency plus the number of entries changed by reduction."""
        dense = np.zeros((self.check_count, self.bit_count), dtype=np.uint8)
        changed = 0
        for (c, b), mult in self.edges.items():
            dense[c, b] = mult % 2
            if mult > 1:
                changed += 1
        return BitMatrix.from_dense(dense), changed

    def edge_count(self) -> int:
        return sum(self.edges.values())

    def check_neighbourhood(self, c: int) -> Counter:
        return Counter({b: m for (cc, b), m in self.edges.items() if cc == c})

    def bit_neighbourhood(self, b: int) -> Counter:
        return Counter({c: m for (c, bb), m in self.edges.items() if bb == b})

    def __eq__(self, other):
        if not isinstance(other, TannerGraph):
            return NotImplemented
        return (
            self.check_count == other.check_count
            and self.bit_count == other.bit_count
            and self.edges == other.edges
        )

    def __repr__(self):
        return (
            f"TannerGraph(checks={self.check_count}, bits={self.bit_count},"
            f" edges={self.edge_count()})"
        )


class PlainGraph:
    """Undirected multigraph; loops allowed, edges stored as sorted pairs."""

    __slots__ = ("vertex_count", "edges")

    def __init__(self, vertex_count: int, edges):
        self.vertex_count = vertex_count
        counter: Counter = Counter()
        items = edges.items() if isinstance(edges, Counter) else ((e, 1) for e in edges)
        for (u, v), mult in items:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise PreconditionError(f"edge ({u}, {v}) out of range")
            if mult < 1:
                raise PreconditionError(f"edge ({u}, {v}) has multiplicity {mult}")
            counter[(min(u, v), max(u, v))] += mult
        self.edges = counter

    @classmethod
    def cycle(cls, n: int) -> "PlainGraph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "PlainGraph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    def edge_count(self) -> int:
        return sum(self.edges.values())

    def neighbourhood(self, v: int) -> Counter:
        out: Counter = Counter()
        for (u, w), m in self.edges.items():
            if u == v:
                out[w] += m
            elif w == v:
                out[u] += m
        return out

    def __eq__(self, other):
        if not isinstance(other, PlainGraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __repr__(self):
        return f"PlainGraph(vertices={self.vertex_count}, edges={self.edge_count()})"


# -- group actions -----------------------------------------------------------


class GroupAction:
    """Type-preserving action of a finite group on a graph.

    `perms[part][g]` is the permutation applied by element g; the table
    composes as a left action and is validated for the homomorphism
    property and edge-multiset invariance at construction.
    """

    def __init__(self, group: FiniteGroup, graph, perms: dict):
        self.group = group
        self.graph = graph
        self.perms = {part: np.asarray(p, dtype=np.int64) for part, p in perms.items()}
        self._validate()

    # part layout: TannerGraph -> ("check", "bit"); PlainGraph -> ("vertex",)

    @classmethod
    def on_tanner(cls, group, graph: TannerGraph, check_perms, bit_perms) -> "GroupAction":
        return cls(group, graph, {"check": check_perms, "bit": bit_perms})

    @classmethod
    def on_plain(cls, group, graph: PlainGraph, vertex_perms) -> "GroupAction":
        return cls(group, graph, {"vertex": vertex_perms})

    @classmethod
    def from_generators(cls, group, graph, gen_perms: list[dict]) -> "GroupAction":
        """Extend per-generator permutations to the whole group by composition."""
        gens = generator_indices(group)
        if len(gen_perms) != len(gens):
            raise PreconditionError(
                f"group {group.spec} needs {len(gens)} generator permutations,"
                f" got {len(gen_perms)}"
            )
        parts = _expected_parts(graph)
        sizes = _part_sizes(graph)
        full = {
            part: np.full((group.order, sizes[part]), -1, dtype=np.int64)
            for part in parts
        }
        for part in parts:
            full[part][0] = np.arange(sizes[part])
        known = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for g in frontier:
                for s_idx, s in enumerate(gens):
                    h = group.multiply(s, g)
                    if h in known:
                        continue
                    for part in parts:
                        gen_arr = np.asarray(gen_perms[s_idx][_perm_key(part)], dtype=np.int64)
                        full[part][h] = gen_arr[full[part][g]]
                    known.add(h)
                    nxt.append(h)
            frontier = nxt
        if len(known) != group.order:
            raise PreconditionError(
                f"generators reach only {len(known)} of {group.order} elements"
            )
        return cls(group, graph, full)

    def parts(self) -> tuple[str, ...]:
        return _expected_parts(self.graph)

    def apply(self, g: int, part: str, v: int) -> int:
        return int(self.perms[part][g, v])

    def _validate(self) -> None:
        graph = self.graph
        parts = _expected_parts(graph)
        sizes = _part_sizes(graph)
        if set(self.perms) != set(parts):
            raise PreconditionError(
                f"action parts {sorted(self.perms)} do not match graph parts {sorted(parts)}"
            )
        order = self.group.order
        for part in parts:
            arr = self.perms[part]
            if arr.shape != (order, sizes[part]):
                raise DimensionError(
                    f"{part} permutation table has shape {arr.shape},"
                    f" expected {(order, sizes[part])}"
                )
            idx = np.arange(sizes[part])
            if not np.array_equal(arr[0], idx):
                raise PreconditionError(f"identity element must act trivially on {part}s")
            for g in range(order):
                if not np.array_equal(np.sort(arr[g]), idx):
                    raise PreconditionError(f"element {g} is not a permutation of {part}s")
            for g in range(order):
                for h in range(order):
                    gh = self.group.multiply(g, h)
                    if not np.array_equal(arr[gh], arr[g][arr[h]]):
                        raise PreconditionError(
                            f"homomorphism fails on {part}s at ({g}, {h})"
                        )
        for g in range(1, order):
            if _mapped_edges(graph, self, g) != graph.edges:
                raise PreconditionError(
                    f"element {g} does not preserve the edge multiset"
                )


def _perm_key(part: str) -> str:
    return f"{part}_perm"


def _expected_parts(graph) -> tuple[str, ...]:
    if isinstance(graph, TannerGraph):
        return ("check", "bit")
    if isinstance(graph, PlainGraph):
        return ("vertex",)
    raise PreconditionError(f"unsupported graph type {type(graph).__name__}")


def _part_sizes(graph) -> dict[str, int]:
    if isinstance(graph, TannerGraph):
        return {"check": graph.check_count, "bit": graph.bit_count}
    return {"vertex": graph.vertex_count}


def _mapped_edges(graph, action: GroupAction, g: int) -> Counter:
    out: Counter = Counter()
    if isinstance(graph, TannerGraph):
        cp = action.perms["check"][g]
        bp = action.perms["bit"][g]
        for (c, b), m in graph.edges.items():
            out[(int(cp[c]), int(bp[b]))] += m
    else:
        vp = action.perms["vertex"][g]
        for (u, v), m in graph.edges.items():
            a, b = int(vp[u]), int(vp[v])
            out[(min(a, b), max(a, b))] += m
    return out


def generator_indices(group: FiniteGroup) -> list[int]:
    """Canonical generator list: x (and y) for cyclic products, every
    non-identity element for table-supplied groups."""
    names = group.generator_names()
    if not names:
        return []
    if set(names) <= {"x", "y"}:
        return [names[k] for k in ("x", "y") if k in names]
    return [names[f"g{i}"] for i in range(1, group.order)]


def is_free(action: GroupAction) -> tuple[bool, tuple | None]:
    """True iff no non-identity element fixes any vertex; witness otherwise."""
    for g in range(1, action.group.order):
        for part in action.parts():
            arr = action.perms[part][g]
            fixed = np.nonzero(arr == np.arange(arr.size))[0]
            if fixed.size:
                return False, (g, (part, int(fixed[0])))
    return True, None


def has_fixed_edge(action: GroupAction) -> tuple[bool, tuple | None]:
    """Forbidden-edge test for quotient inputs.

    Plain graphs use the literal condition: some edge joins v and g.v for
    a non-identity g.  On bipartite Tanner graphs that condition is
    vacuous across parts, so the check is instead for an edge fixed
    setwise by a non-identity element.
    """
    graph = action.graph
    for g in range(1, action.group.order):
        if isinstance(graph, TannerGraph):
            cp = action.perms["check"][g]
            bp = action.perms["bit"][g]
            for (c, b) in graph.edges:
                if cp[c] == c and bp[b] == b:
                    return True, (g, (c, b))
        else:
            vp = action.perms["vertex"][g]
            for (u, v) in graph.edges:
                if vp[u] == v or vp[v] == u:
                    return True, (g, (u, v))
    return False, None


@dataclass(frozen=True)
class QuotientLayout:
    """Orbit bookkeeping for a quotient graph.

    Vertices are addressed as (part, index).  `row_of` maps each vertex
    to the index of the (lowest) group element carrying its class
    basepoint onto it, so basepoints sit in row 0 and free classes fill
    all rows.
    """

    classes: tuple[tuple[tuple[str, int], ...], ...]
    basepoints: tuple[tuple[str, int], ...]
    row_of: dict

    def class_of(self, part: str, v: int) -> int:
        return self._index[(part, v)]

    def __post_init__(self):
        lookup = {}
        for ci, members in enumerate(self.classes):
            for vertex in members:
                lookup[vertex] = ci
        object.__setattr__(self, "_index", lookup)


def part_orbits(action: GroupAction, part: str):
    """Orbits of one part in basepoint-ascending order, plus row labels."""
    arr = action.perms[part]
    size = arr.shape[1]
    order = action.group.order
    seen = np.zeros(size, dtype=bool)
    orbits = []
    for v in range(size):
        if seen[v]:
            continue
        members = []
        row = {}
        for g in range(order):
            w = int(arr[g, v])
            if not seen[w]:
                seen[w] = True
                members.append(w)
            if w not in row:
                # lowest group element carrying the basepoint v onto w
                row[w] = g
        orbits.append((v, sorted(members), row))
    return orbits


def quotient(graph, action: GroupAction):
    """Quotient graph: one vertex per vertex orbit, one edge per edge orbit.

    Edge multiplicity carries over from the input (all members of an
    orbit share it); several edge orbits between the same vertex classes
    stack up as parallel edges.
    """
    if action.graph is not graph and not _same_graph(action.graph, graph):
        raise PreconditionError("action was built for a different graph")
    parts = _expected_parts(graph)
    class_lists = []
    basepoints = []
    row_of = {}
    class_index = {}
    per_part_count = {}
    for part in parts:
        orbits = part_orbits(action, part)
        per_part_count[part] = len(orbits)
        for local_ci, (base, members, row) in enumerate(orbits):
            class_lists.append(tuple((part, w) for w in members))
            basepoints.append((part, base))
            for w in members:
                row_of[(part, w)] = row[w]
                class_index[(part, w)] = local_ci
    layout = QuotientLayout(tuple(class_lists), tuple(basepoints), row_of)

    order = action.group.order
    seen_edges = set()
    quotient_edges: Counter = Counter()
    if isinstance(graph, TannerGraph):
        cp = action.perms["check"]
        bp = action.perms["bit"]
        for (c, b), mult in sorted(graph.edges.items()):
            if (c, b) in seen_edges:
                continue
            orbit = {(int(cp[g, c]), int(bp[g, b])) for g in range(order)}
            seen_edges |= orbit
            quotient_edges[
                (class_index[("check", c)], class_index[("bit", b)])
            ] += mult
        result = TannerGraph(
            per_part_count["check"], per_part_count["bit"], quotient_edges
        )
    else:
        vp = action.perms["vertex"]
        for (u, v), mult in sorted(graph.edges.items()):
            if (u, v) in seen_edges:
                continue
            orbit = set()
            for g in range(order):
                a, b = int(vp[g, u]), int(vp[g, v])
                orbit.add((min(a, b), max(a, b)))
            seen_edges |= orbit
            cu = class_index[("vertex", u)]
            cv = class_index[("vertex", v)]
            quotient_edges[(min(cu, cv), max(cu, cv))] += mult
        result = PlainGraph(per_part_count["vertex"], quotient_edges)
    return result, layout


def _same_graph(a, b) -> bool:
    return type(a) is type(b) and a == b


# -- covering maps ------------------------------------------------------------


@dataclass(frozen=True)
class CoveringMap:
    """Vertex map from a cover onto a base graph, type preserving."""

    cover: object
    base: object
    maps: dict


@dataclass
class CoveringReport:
    valid: bool
    violations: list = field(default_factory=list)
    lift_size: int | None = None
    fibre_sizes: dict = field(default_factory=dict)


def verify_covering(cm: CoveringMap) -> CoveringReport:
    """Check the local-bijection property at every cover vertex.

    Valid iff every vertex's incident edges map one-to-one onto the
    incident edges of its image.  Also reports whether the map is an
    l-lift (all fibres the same size l).
    """
    report = CoveringReport(valid=True)
    cover, base = cm.cover, cm.base
    if type(cover) is not type(base):
        raise PreconditionError("cover and base must be the same kind of graph")
    parts = _expected_parts(cover)
    if set(cm.maps) != set(parts):
        raise PreconditionError(
            f"vertex map parts {sorted(cm.maps)} do not match graph parts {sorted(parts)}"
        )
    cover_sizes = _part_sizes(cover)
    base_sizes = _part_sizes(base)
    for part in parts:
        arr = np.asarray(cm.maps[part], dtype=np.int64)
        if arr.shape != (cover_sizes[part],):
            raise PreconditionError(f"{part} map must list every cover vertex")
        if arr.size and (arr.min() < 0 or arr.max() >= base_sizes[part]):
            raise PreconditionError(f"{part} map has out-of-range images")

    def check_vertex(part, v, cover_nbhd, base_nbhd, other_part):
        mapped = Counter()
        other = np.asarray(cm.maps[other_part], dtype=np.int64)
        for u, mult in cover_nbhd.items():
            mapped[int(other[u])] += mult
        if mapped != base_nbhd:
            report.valid = False
            report.violations.append(
                f"{part} {v}: incident edges map to {dict(mapped)},"
                f" base vertex {int(np.asarray(cm.maps[part])[v])} has {dict(base_nbhd)}"
            )

    if isinstance(cover, TannerGraph):
        for c in range(cover.check_count):
            base_c = int(np.asarray(cm.maps["check"])[c])
            check_vertex("check", c, cover.check_neighbourhood(c),
                         base.check_neighbourhood(base_c), "bit")
        for b in range(cover.bit_count):
            base_b = int(np.asarray(cm.maps["bit"])[b])
            check_vertex("bit", b, cover.bit_neighbourhood(b),
                         base.bit_neighbourhood(base_b), "check")
    else:
        arr = np.asarray(cm.maps["vertex"], dtype=np.int64)
        for v in range(cover.vertex_count):
            mapped = Counter()
            for u, mult in cover.neighbourhood(v).items():
                mapped[int(arr[u])] += mult
            base_nbhd = base.neighbourhood(int(arr[v]))
            if mapped != base_nbhd:
                report.valid = False
                report.violations.append(
                    f"vertex {v}: incident edges map to {dict(mapped)},"
                    f" base vertex {int(arr[v])} has {dict(base_nbhd)}"
                )

    sizes = set()
    for part in parts:
        arr = np.asarray(cm.maps[part], dtype=np.int64)
        counts = np.bincount(arr, minlength=base_sizes[part]) if arr.size else np.array([])
        report.fibre_sizes[part] = counts.tolist()
        sizes.update(int(c) for c in counts)
    if len(sizes) == 1:
        report.lift_size = sizes.pop()
    return report


@dataclass(frozen=True)
class LiftResult:
    """Tanner graph of B(m) with its projection onto the base matrix graph.

    The base carries one edge per non-zero coefficient, so the projection
    is always a genuine covering; `covers_simple_base` records whether the
    base is also the plain Tanner graph of a binary matrix (every entry a
    monomial).  When it is not, `notes` says which entries would need
    parallel base edges.
    """

    graph: TannerGraph
    base: TannerGraph
    covering: CoveringMap
    covers_simple_base: bool
    notes: tuple[str, ...]


def lift_from_ring_matrix(m: GroupAlgebraMatrix) -> LiftResult:
    l = m.group.order
    graph = TannerGraph.from_bitmatrix(binary_map(m))
    base_edges: Counter = Counter()
    notes = []
    for i in range(m.rows):
        for j in range(m.cols):
            weight = len(m.entry(i, j).support())
            if weight:
                base_edges[(i, j)] = weight
            if weight > 1:
                notes.append(
                    f"entry ({i}, {j}) has {weight} terms: base needs"
                    f" {weight} parallel edges"
                )
    base = TannerGraph(m.rows, m.cols, base_edges)
    covering = CoveringMap(
        cover=graph,
        base=base,
        maps={
            "check": [i // l for i in range(m.rows * l)],
            "bit": [j // l for j in range(m.cols * l)],
        },
    )
    return LiftResult(
        graph=graph,
        base=base,
        covering=covering,
        covers_simple_base=m.is_monomial(),
        notes=tuple(notes),
    )


# -- cartesian products and the shared-group action ----------------------------


def cartesian_product_plain(a: PlainGraph, b: PlainGraph) -> PlainGraph:
    """Vertices are pairs (u, v) indexed u * |B| + v; edges vary one side."""
    nb = b.vertex_count
    edges: Counter = Counter()
    for (u, w), mult in a.edges.items():
        for v in range(nb):
            x, y = u * nb + v, w * nb + v
            edges[(min(x, y), max(x, y))] += mult
    for (v, w), mult in b.edges.items():
        for u in range(a.vertex_count):
            x, y = u * nb + v, u * nb + w
            edges[(min(x, y), max(x, y))] += mult
    return PlainGraph(a.vertex_count * nb, edges)


def product_action_plain(
    product: PlainGraph, act_a: GroupAction, act_b: GroupAction
) -> GroupAction:
    """Action h . (u, v) = (u . h, h^-1 . v) on the Cartesian product.

    With stored left actions the right action on the first factor is
    pi_A(h^-1), so element h applies pi_A(h^-1) and pi_B(h^-1) to the two
    coordinates; this composes as a genuine left action for any group.
    """
    group = act_a.group
    if not group.same_group(act_b.group):
        raise PreconditionError("factors carry actions of different groups")
    na = act_a.graph.vertex_count
    nb = act_b.graph.vertex_count
    if product.vertex_count != na * nb:
        raise DimensionError(
            f"product has {product.vertex_count} vertices, factors give {na * nb}"
        )
    perms = np.empty((group.order, na * nb), dtype=np.int64)
    for h in range(group.order):
        hinv = group.inverse(h)
        pa = act_a.perms["vertex"][hinv]
        pb = act_b.perms["vertex"][hinv]
        perms[h] = (pa[np.arange(na * nb) // nb] * nb) + pb[np.arange(na * nb) % nb]
    return GroupAction.on_plain(group, product, perms)


# -- file formats --------------------------------------------------------------


def parse_graph(text: str):
    """Header "checks <m> bits <n>" or "vertices <v>", then one edge per line."""
    lines = text.splitlines()
    header = None
    pos = 0
    for idx, raw in enumerate(lines):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            header = stripped.split()
            pos = idx
            break
    if header is None:
        raise FormatError("empty graph file")

    def as_int(token: str, ln: int) -> int:
        try:
            return int(token)
        except ValueError:
            raise FormatError(f"expected an integer, got {token!r}", ln) from None

    edges = []
    if header[:1] == ["checks"]:
        if len(header) != 4 or header[2] != "bits":
            raise FormatError("expected 'checks <m> bits <n>'", pos + 1)
        m, n = as_int(header[1], pos + 1), as_int(header[3], pos + 1)
        for ln in range(pos + 1, len(lines)):
            stripped = lines[ln].split("#", 1)[0].strip()
            if not stripped:
                continue
            fields = stripped.split()
            if (
                len(fields) != 2
                or not fields[0].startswith("c")
                or not fields[1].startswith("b")
            ):
                raise FormatError("expected edge 'c<i> b<j>'", ln + 1)
            edges.append((as_int(fields[0][1:], ln + 1), as_int(fields[1][1:], ln + 1)))
        try:
            return TannerGraph(m, n, edges)
        except PreconditionError as exc:
            raise FormatError(str(exc)) from exc
    if header[:1] == ["vertices"]:
        if len(header) != 2:
            raise FormatError("expected 'vertices <v>'", pos + 1)
        v = as_int(header[1], pos + 1)
        for ln in range(pos + 1, len(lines)):
            stripped = lines[ln].split("#", 1)[0].strip()
            if not stripped:
                continue
            fields = stripped.split()
            if len(fields) != 2 or not all(f.startswith("v") for f in fields):
                raise FormatError("expected edge 'v<i> v<j>'", ln + 1)
            edges.append((as_int(fields[0][1:], ln + 1), as_int(fields[1][1:], ln + 1)))
        try:
            return PlainGraph(v, edges)
        except PreconditionError as exc:
            raise FormatError(str(exc)) from exc
    raise FormatError(f"unknown graph header {' '.join(header)!r}", pos + 1)


def emit_graph(graph) -> str:
    lines = []
    if isinstance(graph, TannerGraph):
        lines.append(f"checks {graph.check_count} bits {graph.bit_count}")
        for (c, b), mult in sorted(graph.edges.items()):
            lines.extend([f"c{c} b{b}"] * mult)
    else:
        lines.append(f"vertices {graph.vertex_count}")
        for (u, v), mult in sorted(graph.edges.items()):
            lines.extend([f"v{u} v{v}"] * mult)
    return "\n".join(lines) + "\n"


def parse_action(text: str, graph) -> GroupAction:
    """JSON action file: group spec plus per-generator permutation arrays."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if "group" not in data:
        raise FormatError("action file needs a 'group' spec")
    group = parse_group_spec(data["group"])
    parts = _expected_parts(graph)
    keys = [_perm_key(p) for p in parts]
    try:
        if "elements" in data:
            element_perms = data["elements"]
            if len(element_perms) != group.order:
                raise FormatError(
                    f"'elements' must list all {group.order} permutations"
                )
            perms = {}
            for part, key in zip(parts, keys):
                perms[part] = [entry[key] for entry in element_perms]
            return GroupAction(group, graph, perms)
        if "generators" in data:
            return GroupAction.from_generators(group, graph, data["generators"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed action file: missing {exc}") from exc
    raise FormatError("action file needs 'generators' or 'elements'")


def emit_action(action: GroupAction) -> str:
    gens = generator_indices(action.group)
    payload = {
        "group": action.group.spec,
        "generators": [
            {
                _perm_key(part): action.perms[part][g].tolist()
                for part in action.parts()
            }
            for g in gens
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_covering(text: str, cover, base) -> CoveringMap:
    """JSON covering file: one map array per vertex part."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    parts = _expected_parts(cover)
    maps = {}
    for part in parts:
        key = f"{part}_map"
        if key not in data:
            raise FormatError(f"covering file needs {key!r}")
        maps[part] = data[key]
    return CoveringMap(cover=cover, base=base, maps=maps)
