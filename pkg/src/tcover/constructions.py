"""Constructions of intersecting (a, b)-partitioned hypergraphs with large
cover number, and the recursive driver that assembles them.

Vertex namespaces used here: ``("grid", i, j)``, ``("base", k)``,
``("u", i)`` / ``("w", i)`` for the pentagons, ``("pt", x, y, z)`` for plane
points, ``("g", "pt", x, y, z, k)`` for gadget vertices and ``("F", i, ...)``
for the i-th disjoint copy inside a composition.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

from tcover.geometry import affine_family, prime_power, truncated_plane
from tcover.hypercore import (
    CrossFamily,
    Hypergraph,
    PartitionedHypergraph,
    check_partition,
    is_intersecting,
)
from tcover.solver import (
    DEFAULT_BUDGET,
    CoverCertificate,
    SolveBudget,
    Unresolved,
    check_evasive,
    tau_exact,
)

DEFAULT_EDGE_CAP = 100_000

# largest families whose evasiveness is re-proved by exhaustive search;
# beyond these the classical theorems are taken as given
GRID_VERIFY_MAX = 5
AFFINE_VERIFY_MAX = 4


class PreconditionError(ValueError):
    """A construction was asked for with inputs its guarantee does not cover."""


class TrivialPartitionWarning(UserWarning):
    pass


# -- evasive families and the intersecting base -----------------------------

def grid_family(a: int) -> CrossFamily:
    """Rows, columns and permutation transversals of an a x a grid."""
    if a < 2:
        raise PreconditionError(f"grid family needs a >= 2, got {a}")
    cell = lambda i, j: ("grid", i, j)  # noqa: E731
    rng = range(1, a + 1)
    rows = Hypergraph(edges=[[cell(i, j) for j in rng] for i in rng])
    cols = Hypergraph(edges=[[cell(i, j) for i in rng] for j in rng])
    perms = Hypergraph(
        edges=[[cell(i, s) for i, s in zip(rng, sigma)] for sigma in itertools.permutations(rng)]
    )
    return CrossFamily(
        members=(rows, cols, perms),
        uniformity=a,
        universe=[cell(i, j) for i in rng for j in rng],
        name="grid",
        params=(a,),
    )


def base_intersecting(b: int) -> Hypergraph:
    """All b-subsets of a (2b-1)-set."""
    if b < 1:
        raise PreconditionError(f"base family needs b >= 1, got {b}")
    pts = [("base", k) for k in range(1, 2 * b)]
    return Hypergraph(edges=itertools.combinations(pts, b), vertices=pts)


def grid_edge_count(a: int) -> int:
    return math.factorial(a) + 2 * a


def affine_edge_count(q: int) -> int:
    return q * (q + 1)


def base_edge_count(b: int) -> int:
    return math.comb(2 * b - 1, b)


# -- precondition bookkeeping -----------------------------------------------

@dataclass(frozen=True)
class Check:
    """One precondition behind a construction step.

    ``status`` is ``verified`` (checked here by computation), ``cited``
    (a classical theorem is relied on), ``inherited`` (taken from a
    sub-construction's report) or ``unresolved`` (the solver ran out of
    budget).
    """

    what: str
    status: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"what": self.what, "status": self.status, "detail": self.detail}


_EVASIVE_CACHE: dict = {}


def evasiveness_check(family: CrossFamily, budget: SolveBudget = DEFAULT_BUDGET) -> Check:
    """Establish that ``family`` is evasive, solving when small enough.

    Results of exhaustive checks are cached by family name and parameters.
    Raises :class:`PreconditionError` if the family is shown not evasive.
    """
    key = (family.name, family.params) if family.name else None
    if key is not None and key in _EVASIVE_CACHE:
        report = _EVASIVE_CACHE[key]
    else:
        if family.name == "grid" and family.params[0] > GRID_VERIFY_MAX:
            return Check("evasive", "cited", f"grid family a={family.params[0]}: "
                         "every cover of rows, columns and transversals has >= 2a-1 cells")
        if family.name == "affine" and family.params[0] > AFFINE_VERIFY_MAX:
            return Check("evasive", "cited", f"affine plane q={family.params[0]}: "
                         "Jamison / Brouwer-Schrijver, blocking sets of AG(2,q) have >= 2q-1 points")
        try:
            report = check_evasive(family, budget)
        except Unresolved as exc:
            return Check("evasive", "unresolved", str(exc))
        if key is not None:
            _EVASIVE_CACHE[key] = report
    if not report.is_evasive:
        raise PreconditionError(f"family is not evasive: {report.to_dict()}")
    return Check(
        "evasive",
        "verified",
        f"member tau {list(report.per_member_tau)}, union tau {report.union_tau}",
    )


_TAU_CACHE: dict = {}


def _tau_check(f: Hypergraph, b: int, key, budget: SolveBudget) -> Check:
    if key is not None and key in _TAU_CACHE:
        cert = _TAU_CACHE[key]
    else:
        cert = tau_exact(f, budget)
        if key is not None and cert.optimal:
            _TAU_CACHE[key] = cert
    if not cert.optimal:
        return Check("tau(F)=b", "unresolved", f"{cert.lower_bound} <= tau <= {cert.value}")
    if cert.value != b:
        raise PreconditionError(f"tau(F) = {cert.value}, composition needs {b}")
    return Check("tau(F)=b", "verified", f"tau = {b}")


# -- composition and side merging -------------------------------------------

def compose_checked(
    family: CrossFamily,
    f: Union[Hypergraph, PartitionedHypergraph],
    *,
    budget: SolveBudget = DEFAULT_BUDGET,
    f_tau: Optional[Check] = None,
    f_key=None,
) -> tuple:
    """Like :func:`compose` but also return the list of :class:`Check`.

    ``f_tau`` accepts an already established check for ``tau(F) = b``;
    ``f_key`` names ``F`` for the tau cache.
    """
    a, m = family.uniformity, len(family)
    base = f.base if isinstance(f, PartitionedHypergraph) else f
    b = base.uniformity
    if b is None:
        raise PreconditionError("F must be uniform")
    if not (a <= b * (m - 1) and b < a):
        raise PreconditionError(
            f"need a/(m-1) <= b < a, got a={a}, b={b}, m={m}"
        )
    checks = [Check("a/(m-1) <= b < a", "verified", f"a={a}, b={b}, m={m}")]
    if not is_intersecting(base):
        raise PreconditionError("F is not intersecting")
    checks.append(Check("F intersecting", "verified"))
    checks.append(f_tau if f_tau is not None else _tau_check(base, b, f_key, budget))
    checks.append(evasiveness_check(family, budget))

    copies = [base.relabel(("F", i)) for i in range(1, m + 1)]
    edges = [
        h + e
        for member, copy in zip(family.members, copies)
        for h in member.edges
        for e in copy.edges
    ]
    vertices = list(family.universe) + [v for c in copies for v in c.vertices]
    if isinstance(f, PartitionedHypergraph):
        f_sides = [
            [("F", i) + v for i in range(1, m + 1) for v in side] for side in f.sides
        ]
        profile = (a,) + f.profile
    else:
        f_sides = [[v for c in copies for v in c.vertices]]
        profile = (a, b)
    result = PartitionedHypergraph(
        base=Hypergraph(edges=edges, vertices=vertices),
        sides=[list(family.universe)] + f_sides,
        profile=profile,
    )
    return result, checks


def compose(
    family: CrossFamily,
    f: Union[Hypergraph, PartitionedHypergraph],
    *,
    budget: SolveBudget = DEFAULT_BUDGET,
) -> PartitionedHypergraph:
    """Join every edge of member ``H_i`` with every edge of the i-th disjoint
    copy of ``F``.

    Refuses unless ``a/(m-1) <= b < a``, ``F`` is intersecting with cover
    number ``b`` and the family is evasive; then the output is intersecting,
    (a, b)-partitioned and has cover number ``a + b``.
    """
    return compose_checked(family, f, budget=budget)[0]


def merge_sides(p: PartitionedHypergraph, indices) -> PartitionedHypergraph:
    """Replace the listed sides by their union, placed at the first listed
    position; profile entries are summed and edges are untouched."""
    idx = sorted(set(indices))
    for i in idx:
        if not 0 <= i < len(p.sides):
            raise IndexError(f"side index {i} out of range for {len(p.sides)} sides")
    if len(idx) <= 1:
        return p
    first = idx[0]
    sides, profile = [], []
    for i, (side, a) in enumerate(zip(p.sides, p.profile)):
        if i == first:
            sides.append([v for k in idx for v in p.sides[k]])
            profile.append(sum(p.profile[k] for k in idx))
        elif i not in idx:
            sides.append(list(side))
            profile.append(a)
    if len(sides) == 1:
        warnings.warn("all sides merged: trivial partition", TrivialPartitionWarning, stacklevel=2)
    return PartitionedHypergraph(base=p.base, sides=sides, profile=profile)


# -- the two explicit examples --------------------------------------------

def pentagon_example() -> PartitionedHypergraph:
    """Ten 4-edges on two pentagons U, W (indices mod 5).

    ``e_i = {u_i, u_{i+1}, w_{i-1}, w_{i+2}}`` pairs a U-side with the
    parallel W-diagonal; ``f_i = {u_{i-1}, u_{i+1}, w_i, w_{i+1}}`` pairs a
    W-side with the shifted parallel U-diagonal.
    """
    u = lambda i: ("u", i % 5)  # noqa: E731
    w = lambda i: ("w", i % 5)  # noqa: E731
    es = [[u(i), u(i + 1), w(i - 1), w(i + 2)] for i in range(5)]
    fs = [[u(i - 1), u(i + 1), w(i), w(i + 1)] for i in range(5)]
    base = Hypergraph(edges=es + fs, vertices=[u(i) for i in range(5)] + [w(i) for i in range(5)])
    return PartitionedHypergraph(
        base=base, sides=[[u(i) for i in range(5)], [w(i) for i in range(5)]], profile=(2, 2)
    )


# perfect matchings of K4 on {0,1,2,3}; pair 0 is the one containing 0
K4_MATCHINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def beta_strings() -> tuple:
    """The 8 bit strings (b1, b2, b3, b4) with b1 = b3 xor b4, sorted."""
    return tuple(
        (b3 ^ b4, b2, b3, b4) for b2, b3, b4 in itertools.product((0, 1), repeat=3)
    )


def gadget_vertex(v: tuple, k: int) -> tuple:
    return ("g",) + v + (k,)


def gadget_assignment(t: PartitionedHypergraph) -> dict:
    """Map ``(edge, vertex)`` of the truncated plane to a K4 matching index.

    At each vertex the incident edges, in canonical edge order, receive
    matchings 0, 1, 2, so the three are distinct.
    """
    out = {}
    for v in t.base.vertices:
        incident = [e for e in t.base.edges if v in e]
        if len(incident) > len(K4_MATCHINGS):
            raise PreconditionError(f"vertex {v} has degree {len(incident)} > 3")
        for k, e in enumerate(incident):
            out[(e, v)] = k
    return out


def four_square_example() -> PartitionedHypergraph:
    """The (2,2,2,2)-partitioned 8-graph with 72 edges built from the
    truncated plane of order 3 and one K4 gadget per point."""
    t = truncated_plane(3)
    assign = gadget_assignment(t)
    side_of = {v: i for i, side in enumerate(t.sides) for v in side}
    edges = []
    for f in t.base.edges:
        by_side = sorted(f, key=side_of.__getitem__)  # (f_1, .., f_4)
        for beta in beta_strings():
            h = []
            for v, bit in zip(by_side, beta):
                pair = K4_MATCHINGS[assign[(f, v)]][bit]
                h.extend(gadget_vertex(v, k) for k in pair)
            edges.append(h)
    sides = [[gadget_vertex(v, k) for v in side for k in range(4)] for side in t.sides]
    base = Hypergraph(edges=edges, vertices=[v for s in sides for v in s])
    return PartitionedHypergraph(base=base, sides=sides, profile=(2, 2, 2, 2))


# -- witness recursion ------------------------------------------------------

@dataclass
class Node:
    """One step of a witness construction tree."""

    kind: str
    params: dict
    children: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    edges: int = 0
    target: Optional[tuple] = None

    def to_dict(self) -> dict:
        out = {"node": self.kind, "params": dict(self.params), "edges": self.edges}
        if self.target is not None:
            out["target"] = list(self.target)
        if self.checks:
            out["checks"] = [c.to_dict() for c in self.checks]
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out


@dataclass
class WitnessReport:
    target: tuple
    swapped: bool
    tree: Node
    result: Optional[PartitionedHypergraph]
    status: str  # verified | unresolved | failed | not-materialized | structural
    certificate: Optional[CoverCertificate] = None
    structure: dict = field(default_factory=dict)
    refusal: str = ""

    @property
    def claimed_tau(self) -> int:
        return sum(self.target)

    def to_dict(self) -> dict:
        out = {
            "target": list(self.target),
            "claimed_tau": self.claimed_tau,
            "status": self.status,
            "swapped": self.swapped,
            "structure": dict(self.structure),
            "tree": self.tree.to_dict(),
        }
        if self.result is not None:
            out["vertices"] = len(self.result.vertices)
            out["edges"] = len(self.result.edges)
            out["profile"] = list(self.result.profile)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        if self.refusal:
            out["refusal"] = self.refusal
        return out


def _candidate_pairs(a: int, b: int) -> list:
    n = a + b
    return [((n + 4) // 2, (n - 3) // 2), ((n + 2) // 2, (n - 1) // 2)]


def split_pair(a: int, b: int) -> Optional[tuple]:
    """First candidate (u, v), in listing order, with
    ``u/2 <= v < u < a``, ``u + v = a + b`` and ``v != 2b``."""
    for u, v in _candidate_pairs(a, b):
        if u <= 2 * v and v < u < a and u + v == a + b and v != 2 * b:
            return u, v
    return None


def _family_node(u: int, f_edges: int, cap: int) -> Node:
    """Grid family when it is admissible and fits the edge cap, otherwise the
    affine family when u is a prime power."""
    grid_total = grid_edge_count(u) * f_edges
    if grid_total <= cap or prime_power(u) is None:
        return Node("grid", {"a": u}, edges=grid_edge_count(u))
    return Node("affine", {"q": u}, edges=affine_edge_count(u))


def plan_witness(a: int, b: int, cap: int = DEFAULT_EDGE_CAP) -> Node:
    """Construction tree for an (a, b) witness with ``b < a`` (or the two
    equal cases), before anything is materialized."""
    if a == b == 2:
        return Node("pentagon", {}, edges=10, target=(2, 2))
    if a == b == 4:
        four = Node("four_square", {}, edges=72)
        return Node("merge", {"sides": [0, 1, 2, 3], "groups": [[0, 1], [2, 3]]},
                    children=[four], edges=72, target=(4, 4))
    if a == b:
        raise PreconditionError(
            f"t({a},{b}) is not covered: the first value left open is t(3,3); "
            "only (2,2) and (4,4) have equal-side witnesses"
        )
    if b > a:
        raise PreconditionError("plan_witness expects b < a; swap first")
    if b < 1:
        raise PreconditionError("sides must be positive")

    if a <= 2 * b or prime_power(a) is not None:
        base = Node("base", {"b": b}, edges=base_edge_count(b))
        if a <= 2 * b:
            fam = _family_node(a, base.edges, cap)
        else:
            fam = Node("affine", {"q": a}, edges=affine_edge_count(a))
        case = "i" if fam.kind == "grid" else "ii"
        params = {"case": case, "a": a, "b": b}
        if a <= 2 * b and fam.kind == "affine":
            params["note"] = f"grid composition exceeds the {cap}-edge cap"
        comp = Node("compose", params, children=[fam, base], edges=fam.edges * base.edges)
        comp.target = (a, b)
        return comp

    if (a, b) == (6, 2):
        u, v, case = 5, 3, "iii"
    else:
        pair = split_pair(a, b)
        if pair is None:
            raise PreconditionError(f"no admissible split for ({a}, {b})")
        (u, v), case = pair, "iv"
    inner = plan_witness(*sorted((v - b, b), reverse=True), cap=cap)
    fam = _family_node(u, inner.edges, cap)
    comp = Node("compose", {"case": case, "a": u, "b": v, "inner": [v - b, b]},
                children=[fam, inner], edges=fam.edges * inner.edges)
    merged = Node("merge", {"sides": "outer+inner(%d)" % (v - b)}, children=[comp],
                  edges=comp.edges, target=(a, b))
    return merged


def _oversized(node: Node, cap: int) -> Optional[Node]:
    if node.edges > cap:
        return node
    for c in node.children:
        hit = _oversized(c, cap)
        if hit is not None:
            return hit
    return None


def _describe(node: Node) -> str:
    params = ", ".join(f"{k}={v}" for k, v in node.params.items())
    return f"{node.kind}({params})"


class _Builder:
    def __init__(self, budget: SolveBudget, verify: bool):
        self.budget = budget
        self.verify = verify
        self.certificates: dict = {}

    def family(self, node: Node) -> CrossFamily:
        if node.kind == "grid":
            return grid_family(node.params["a"])
        return affine_family(node.params["q"])

    def build(self, node: Node) -> tuple:
        """Materialize ``node``; returns (hypergraph, check of its cover
        number), the check being None below witness roots."""
        h = self._make(node)
        if node.target is None:
            return h, None
        return h, self._solve(node, h)

    def _make(self, node: Node):
        if node.kind == "pentagon":
            return pentagon_example()
        if node.kind == "four_square":
            return four_square_example()
        if node.kind == "base":
            return base_intersecting(node.params["b"])
        if node.kind == "merge":
            child = node.children[0]
            h, _ = self.build(child)
            if child.kind == "four_square":
                out = merge_sides(merge_sides(h, [2, 3]), [0, 1])
            else:
                inner_size = child.params["inner"][0]
                idx = 1 + list(h.profile[1:]).index(inner_size)
                out = merge_sides(h, [0, idx])
                node.params["sides"] = [0, idx]
            node.checks.append(Check("edges unchanged", "verified",
                                     f"{len(out.edges)} edges, profile {list(out.profile)}"))
            return out
        if node.kind == "compose":
            fam_node, f_node = node.children
            family = self.family(fam_node)
            f, f_tau = self.build(f_node)
            key = ("base", f_node.params["b"]) if f_node.kind == "base" else None
            result, checks = compose_checked(
                family, f, budget=self.budget, f_tau=f_tau, f_key=key
            )
            node.checks.extend(checks)
            return result
        raise ValueError(f"cannot build node kind {node.kind!r}")

    def _solve(self, node: Node, h: PartitionedHypergraph) -> Check:
        """Solve tau at a witness root; the outcome doubles as the tau(F)
        check of an enclosing composition."""
        target = sum(node.target)
        if not self.verify:
            return Check("tau(F)=b", "inherited", f"claimed {target}, not solved")
        cert = tau_exact(h, self.budget)
        self.certificates[id(node)] = cert
        node.params["tau"] = cert.value if cert.optimal else None
        if not cert.optimal:
            return Check("tau(F)=b", "unresolved",
                         f"sub-witness: {cert.lower_bound} <= tau <= {cert.value}")
        if cert.value != target:
            raise PreconditionError(f"sub-witness for {node.target} has tau {cert.value}")
        return Check("tau(F)=b", "inherited", f"sub-witness solved, tau = {target}")


def witness(
    a: int,
    b: int,
    *,
    budget: SolveBudget = DEFAULT_BUDGET,
    cap: int = DEFAULT_EDGE_CAP,
    verify: bool = True,
) -> WitnessReport:
    """Build an intersecting (a, b)-partitioned hypergraph with cover number
    ``a + b`` and check it.

    With ``verify`` the cover number of the result (and of every
    sub-witness) is solved exactly within ``budget``; structural checks
    (partition profile, intersecting) are always run.  A tree whose
    materialization would exceed ``cap`` edges is returned unbuilt.
    """
    if a < 1 or b < 1:
        raise PreconditionError("sides must be positive")
    swapped = b > a
    hi, lo = (b, a) if swapped else (a, b)
    tree = plan_witness(hi, lo, cap)
    big = _oversized(tree, cap)
    if big is not None:
        return WitnessReport(
            target=(a, b), swapped=swapped, tree=tree, result=None,
            status="not-materialized",
            refusal=f"{_describe(big)} needs {big.edges} edges, cap is {cap}",
        )
    builder = _Builder(budget, verify)
    h, _ = builder.build(tree)
    if swapped:
        h = PartitionedHypergraph(base=h.base, sides=h.sides[::-1], profile=h.profile[::-1])

    structure = {
        "partition": bool(check_partition(h)),
        "intersecting": is_intersecting(h),
        "profile_matches": list(h.profile) == [a, b],
    }
    report = WitnessReport(
        target=(a, b), swapped=swapped, tree=tree, result=h,
        status="structural", structure=structure,
    )
    if not all(structure.values()):
        report.status = "failed"
        return report
    if verify:
        cert = builder.certificates[id(tree)]
        report.certificate = cert
        if not cert.optimal:
            report.status = "unresolved"
        else:
            report.status = "verified" if cert.value == a + b else "failed"
    return report
