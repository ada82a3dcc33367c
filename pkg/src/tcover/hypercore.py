"""Hypergraph data model, structural predicates, canonical JSON and
brute-force oracles.

Vertices are tuples of label components (``str`` or ``int``), e.g.
``("grid", 1, 2)``.  Their textual form joins the components with ``/``
(``"grid/1/2"``).  Components that spell a canonical integer are read back
as ``int``, so labels round-trip through JSON unchanged.

Every object here is immutable once built and every function is pure.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence, Union

Vertex = tuple
Edge = tuple

_INT_RE = re.compile(r"0|-?[1-9][0-9]*")


class VacuousHypergraphError(ValueError):
    """Raised when a predicate is asked about a hypergraph with no edges."""


class OracleLimitError(ValueError):
    """Raised when a brute-force oracle is handed an instance above its limit."""


class DocumentError(ValueError):
    """Malformed hypergraph JSON document."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


# -- vertex labels ---------------------------------------------------------

def vertex_key(v: Vertex) -> tuple:
    """Sort key giving a total order on labels (ints before strings)."""
    return tuple((0, c, "") if isinstance(c, int) else (1, 0, c) for c in v)


def label(v: Vertex) -> str:
    return "/".join(str(c) for c in v)


def parse_label(text: str) -> Vertex:
    if not isinstance(text, str) or not text:
        raise ValueError(f"bad vertex label {text!r}")
    parts = text.split("/")
    if any(p == "" for p in parts):
        raise ValueError(f"empty component in vertex label {text!r}")
    return tuple(int(p) if _INT_RE.fullmatch(p) else p for p in parts)


def namespaced(prefix: Sequence, v: Vertex) -> Vertex:
    return tuple(prefix) + tuple(v)


def _check_vertex(v: Any) -> Vertex:
    if not isinstance(v, tuple) or not v:
        raise TypeError(f"vertex must be a nonempty tuple, got {v!r}")
    for c in v:
        if isinstance(c, bool) or not isinstance(c, (int, str)):
            raise TypeError(f"bad label component {c!r} in {v!r}")
        if isinstance(c, str) and (not c or "/" in c or _INT_RE.fullmatch(c)):
            raise ValueError(f"string component {c!r} would not round-trip")
    return v


# -- core types -------------------------------------------------------------

@dataclass(frozen=True)
class Hypergraph:
    """A finite vertex universe together with a list of edges.

    The constructor canonicalizes: vertices are sorted by label, each edge
    becomes a sorted tuple and the edge list is sorted.  Duplicate edges are
    kept (see :attr:`duplicate_edges`).
    """

    edges: tuple = ()
    vertices: tuple = None

    def __post_init__(self):
        edges = []
        for e in self.edges:
            e = tuple(e)
            if not e:
                raise ValueError("edges must be nonempty")
            if len(set(e)) != len(e):
                raise ValueError(f"repeated vertex inside edge {e!r}")
            edges.append(e)
        if self.vertices is None:
            verts = {v for e in edges for v in e}
        else:
            verts = set(self.vertices)
            if len(verts) != len(tuple(self.vertices)):
                raise ValueError("repeated vertex in vertex list")
            for e in edges:
                missing = [v for v in e if v not in verts]
                if missing:
                    raise ValueError(f"edge {e!r} uses unknown vertex {missing[0]!r}")
        for v in verts:
            _check_vertex(v)
        ordered = tuple(sorted(verts, key=vertex_key))
        pos = {v: i for i, v in enumerate(ordered)}
        canon = sorted(
            (tuple(sorted(e, key=pos.__getitem__)) for e in edges),
            key=lambda e: [pos[v] for v in e],
        )
        object.__setattr__(self, "vertices", ordered)
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "_pos", pos)

    def __repr__(self) -> str:
        return f"Hypergraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    @property
    def index(self) -> dict:
        """Vertex -> position in :attr:`vertices`."""
        return self._pos

    @cached_property
    def edge_masks(self) -> tuple:
        """Each edge as an ``int`` bitmask over vertex positions."""
        pos = self._pos
        out = []
        for e in self.edges:
            m = 0
            for v in e:
                m |= 1 << pos[v]
            out.append(m)
        return tuple(out)

    @cached_property
    def incidence(self) -> tuple:
        """For each vertex position, the bitmask of edges containing it."""
        inc = [0] * len(self.vertices)
        for j, e in enumerate(self.edges):
            bit = 1 << j
            for v in e:
                inc[self._pos[v]] |= bit
        return tuple(inc)

    @property
    def uniformity(self) -> int | None:
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    @cached_property
    def duplicate_edges(self) -> tuple:
        """Edges occurring more than once (edges are sorted, so duplicates
        are adjacent)."""
        return tuple(
            e for e, nxt in zip(self.edges, self.edges[1:]) if e == nxt
        )

    def mask_of(self, vertices: Iterable[Vertex]) -> int:
        m = 0
        for v in vertices:
            try:
                m |= 1 << self._pos[v]
            except KeyError:
                raise ValueError(f"vertex {v!r} is not in the hypergraph") from None
        return m

    def vertices_of(self, mask: int) -> tuple:
        return tuple(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def relabel(self, prefix: Sequence) -> "Hypergraph":
        """Disjoint copy: every vertex gets ``prefix`` prepended."""
        prefix = tuple(prefix)
        return Hypergraph(
            edges=[tuple(prefix + v for v in e) for e in self.edges],
            vertices=[prefix + v for v in self.vertices],
        )


@dataclass(frozen=True)
class PartitionedHypergraph:
    """A hypergraph with ordered sides ``V_1..V_p`` and a profile vector.

    Invariants are *not* enforced on construction; use
    :func:`check_partition`.
    """

    base: Hypergraph
    sides: tuple
    profile: tuple

    def __post_init__(self):
        pos = self.base.index
        key = lambda v: pos[v] if v in pos else -1  # noqa: E731
        object.__setattr__(
            self, "sides", tuple(tuple(sorted(s, key=key)) for s in self.sides)
        )
        object.__setattr__(self, "profile", tuple(int(a) for a in self.profile))

    def __repr__(self) -> str:
        return (
            f"PartitionedHypergraph(|V|={len(self.base.vertices)}, "
            f"|E|={len(self.base.edges)}, profile={self.profile})"
        )

    @property
    def edges(self) -> tuple:
        return self.base.edges

    @property
    def vertices(self) -> tuple:
        return self.base.vertices


@dataclass(frozen=True)
class CrossFamily:
    """Members ``H_1..H_m`` (``m >= 2``) of ``a``-graphs on one universe.

    If ``universe`` is omitted it is the union of the member vertex sets.
    Every member is rebuilt on the full universe.
    """

    members: tuple
    uniformity: int
    universe: tuple = None
    name: str = ""
    params: tuple = field(default=())

    def __post_init__(self):
        members = tuple(self.members)
        if len(members) < 2:
            raise ValueError("a cross family needs at least two members")
        if self.universe is None:
            universe = {v for h in members for v in h.vertices}
        else:
            universe = set(self.universe)
            for i, h in enumerate(members):
                stray = [v for v in h.vertices if v not in universe]
                if stray:
                    raise ValueError(
                        f"member {i} uses vertex {stray[0]!r} outside the universe"
                    )
        for i, h in enumerate(members):
            bad = [e for e in h.edges if len(e) != self.uniformity]
            if bad:
                raise ValueError(
                    f"member {i} has an edge of size {len(bad[0])}, "
                    f"expected {self.uniformity}"
                )
        members = tuple(Hypergraph(edges=h.edges, vertices=universe) for h in members)
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "universe", members[0].vertices)
        object.__setattr__(self, "params", tuple(self.params))

    def __len__(self) -> int:
        return len(self.members)

    def union(self) -> Hypergraph:
        return Hypergraph(
            edges=[e for h in self.members for e in h.edges], vertices=self.universe
        )


# -- predicates -------------------------------------------------------------

def is_intersecting(h: Hypergraph) -> bool:
    """True iff every two edges (duplicates included) share a vertex.

    Raises :class:`VacuousHypergraphError` for an edge-free hypergraph.
    """
    if isinstance(h, PartitionedHypergraph):
        h = h.base
    if not h.edges:
        raise VacuousHypergraphError("intersecting is vacuous for an empty edge list")
    inc = h.incidence
    everything = (1 << len(h.edges)) - 1
    seen = set()
    for e in h.edges:
        if e in seen:
            continue
        seen.add(e)
        met = 0
        for v in e:
            met |= inc[h.index[v]]
        if met != everything:
            return False
    return True


def is_cross_intersecting(family: CrossFamily) -> bool:
    """True iff edges taken from distinct members always meet."""
    union = family.union()
    inc = union.incidence
    pos = union.index
    # union.edges is re-sorted, so locate member edges by multiset count
    owner: dict = {}
    for i, h in enumerate(family.members):
        for e in h.edges:
            owner.setdefault(e, set()).add(i)
    member_mask = [0] * len(family.members)
    for j, e in enumerate(union.edges):
        for i in owner[e]:
            member_mask[i] |= 1 << j
    everything = (1 << len(union.edges)) - 1
    for i, h in enumerate(family.members):
        others = everything & ~member_mask[i]
        for e in set(h.edges):
            met = 0
            for v in e:
                met |= inc[pos[v]]
            if others & ~met:
                return False
    return True


@dataclass(frozen=True)
class PartitionCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_partition(p: PartitionedHypergraph) -> PartitionCheck:
    """Check every :class:`PartitionedHypergraph` invariant.

    The result is falsy on failure and its ``reason`` names the first
    violated side or edge.
    """
    if len(p.sides) != len(p.profile):
        return PartitionCheck(False, f"{len(p.sides)} sides but profile {p.profile}")
    if any(a <= 0 for a in p.profile):
        return PartitionCheck(False, f"profile {p.profile} has a non-positive entry")
    side_of: dict = {}
    universe = set(p.base.vertices)
    for i, side in enumerate(p.sides):
        for v in side:
            if v not in universe:
                return PartitionCheck(False, f"side {i} has unknown vertex {label(v)}")
            if v in side_of:
                return PartitionCheck(
                    False, f"vertex {label(v)} lies in sides {side_of[v]} and {i}"
                )
            side_of[v] = i
    uncovered = [v for v in p.base.vertices if v not in side_of]
    if uncovered:
        return PartitionCheck(False, f"vertex {label(uncovered[0])} is in no side")
    for j, e in enumerate(p.base.edges):
        counts = [0] * len(p.sides)
        for v in e:
            counts[side_of[v]] += 1
        for i, (c, a) in enumerate(zip(counts, p.profile)):
            if c != a:
                return PartitionCheck(
                    False,
                    f"edge {j} {[label(v) for v in e]} meets side {i} in {c} "
                    f"vertices, profile wants {a}",
                )
    return PartitionCheck(True)


# -- brute-force oracles ----------------------------------------------------

def brute_force_tau(h: Hypergraph, limit: int = 16) -> int:
    """Minimum cover size by enumerating vertex subsets in increasing size."""
    if isinstance(h, PartitionedHypergraph):
        h = h.base
    n = len(h.vertices)
    if n > limit:
        raise OracleLimitError(f"{n} vertices exceeds oracle limit {limit}")
    masks = set(h.edge_masks)
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            c = 0
            for i in combo:
                c |= 1 << i
            if all(m & c for m in masks):
                return k
    raise AssertionError("unreachable: the full vertex set is a cover")


def brute_force_nu(h: Hypergraph, limit: int = 20) -> int:
    """Maximum matching size by enumerating every set of disjoint edges."""
    if isinstance(h, PartitionedHypergraph):
        h = h.base
    masks = h.edge_masks
    if len(masks) > limit:
        raise OracleLimitError(f"{len(masks)} edges exceeds oracle limit {limit}")

    def grow(start: int, used: int) -> int:
        best = 0
        for j in range(start, len(masks)):
            if not masks[j] & used:
                best = max(best, 1 + grow(j + 1, used | masks[j]))
        return best

    return grow(0, 0)


# -- canonical JSON ---------------------------------------------------------

Document = dict
_KEYS = ("vertices", "edges", "sides", "profile")


def to_document(obj: Union[Hypergraph, PartitionedHypergraph]) -> Document:
    if isinstance(obj, PartitionedHypergraph):
        doc = to_document(obj.base)
        doc["sides"] = [[label(v) for v in s] for s in obj.sides]
        doc["profile"] = list(obj.profile)
        return doc
    return {
        "vertices": [label(v) for v in obj.vertices],
        "edges": [[label(v) for v in e] for e in obj.edges],
    }


def from_document(doc: Document) -> Union[Hypergraph, PartitionedHypergraph]:
    if not isinstance(doc, dict):
        raise DocumentError("$", "document must be a JSON object")
    unknown = sorted(set(doc) - set(_KEYS))
    if unknown:
        raise DocumentError("$", f"unknown key {unknown[0]!r}")
    for k in ("vertices", "edges"):
        if k not in doc:
            raise DocumentError("$", f"missing key {k!r}")
    if ("sides" in doc) != ("profile" in doc):
        raise DocumentError("$", "'sides' and 'profile' must appear together")

    def vertex_list(value, where):
        if not isinstance(value, list):
            raise DocumentError(where, "expected an array of labels")
        out = []
        for i, text in enumerate(value):
            try:
                out.append(parse_label(text))
            except ValueError as exc:
                raise DocumentError(f"{where}[{i}]", str(exc)) from None
        return out

    vertices = vertex_list(doc["vertices"], "vertices")
    known = set(vertices)
    if len(known) != len(vertices):
        raise DocumentError("vertices", "repeated vertex label")
    if not isinstance(doc["edges"], list):
        raise DocumentError("edges", "expected an array of edges")
    edges = []
    for j, raw in enumerate(doc["edges"]):
        e = vertex_list(raw, f"edges[{j}]")
        if not e:
            raise DocumentError(f"edges[{j}]", "empty edge")
        for i, v in enumerate(e):
            if v not in known:
                raise DocumentError(f"edges[{j}][{i}]", f"unknown vertex {label(v)!r}")
        if len(set(e)) != len(e):
            raise DocumentError(f"edges[{j}]", "repeated vertex inside edge")
        edges.append(tuple(e))
    try:
        h = Hypergraph(edges=edges, vertices=vertices)
    except (TypeError, ValueError) as exc:
        raise DocumentError("$", str(exc)) from None
    if "sides" not in doc:
        return h

    if not isinstance(doc["sides"], list):
        raise DocumentError("sides", "expected an array of sides")
    sides = []
    placed: dict = {}
    for i, raw in enumerate(doc["sides"]):
        side = vertex_list(raw, f"sides[{i}]")
        for k, v in enumerate(side):
            if v not in known:
                raise DocumentError(f"sides[{i}][{k}]", f"unknown vertex {label(v)!r}")
            if v in placed:
                raise DocumentError(
                    f"sides[{i}][{k}]",
                    f"vertex {label(v)!r} already in side {placed[v]} (sides must be disjoint)",
                )
            placed[v] = i
        sides.append(side)
    profile = doc["profile"]
    if not isinstance(profile, list) or not all(
        isinstance(a, int) and not isinstance(a, bool) for a in profile
    ):
        raise DocumentError("profile", "expected an array of integers")
    return PartitionedHypergraph(base=h, sides=sides, profile=profile)


def dumps(obj) -> str:
    """Canonical text: fixed key order, one edge per line, trailing newline."""
    if isinstance(obj, CrossFamily):
        doc = family_to_document(obj)
    else:
        doc = obj if isinstance(obj, dict) else to_document(obj)
    return dumps_json(doc)


def dumps_json(value: Any) -> str:
    """Stable JSON used for every artifact the package writes.

    Short arrays of scalars stay on one line so edge lists diff cleanly.
    """
    return _emit(value, 0) + "\n"


def _emit(value: Any, depth: int) -> str:
    pad = "  " * (depth + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        if all(not isinstance(x, (dict, list, tuple)) for x in value):
            flat = "[" + ", ".join(json.dumps(x) for x in value) + "]"
            if depth > 0 or len(flat) <= 100:
                return flat
        items = [pad + _emit(x, depth + 1) for x in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(value)


def family_to_document(family: CrossFamily) -> Document:
    return {
        "uniformity": family.uniformity,
        "vertices": [label(v) for v in family.universe],
        "members": [[[label(v) for v in e] for e in h.edges] for h in family.members],
    }


def family_from_document(doc: Document) -> CrossFamily:
    if not isinstance(doc, dict):
        raise DocumentError("$", "document must be a JSON object")
    unknown = sorted(set(doc) - {"uniformity", "vertices", "members"})
    if unknown:
        raise DocumentError("$", f"unknown key {unknown[0]!r}")
    missing = [k for k in ("uniformity", "vertices", "members") if k not in doc]
    if missing:
        raise DocumentError("$", f"missing key {missing[0]!r}")
    if not isinstance(doc["members"], list):
        raise DocumentError("members", "expected an array of edge lists")
    members = []
    for i, edges in enumerate(doc["members"]):
        try:
            h = from_document({"vertices": doc["vertices"], "edges": edges})
        except DocumentError as exc:
            loc = exc.location.replace("edges", f"members[{i}]", 1)
            raise DocumentError(loc, str(exc).split(": ", 1)[1]) from None
        members.append(h)
    a = doc["uniformity"]
    if not isinstance(a, int) or isinstance(a, bool) or a < 1:
        raise DocumentError("uniformity", "expected a positive integer")
    try:
        return CrossFamily(members=members, uniformity=a, universe=members[0].vertices
                           if members else None)
    except ValueError as exc:
        raise DocumentError("members", str(exc)) from None


def load_any(text: str):
    """Parse a hypergraph, partitioned hypergraph or cross-family document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if isinstance(doc, dict) and "members" in doc:
        return family_from_document(doc)
    return from_document(doc)


def loads(text: str) -> Union[Hypergraph, PartitionedHypergraph]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return from_document(doc)
