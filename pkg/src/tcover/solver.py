"""Exact minimum cover (tau) and maximum matching (nu) with certificates.

Both solvers are depth-first branch and bound over ``int`` bitsets.  A
certificate with ``optimal=True`` means the search finished; when the
:class:`SolveBudget` runs out the certificate carries the best solution
found and the proven bound, with ``optimal=False``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

from tcover.hypercore import (
    CrossFamily,
    Hypergraph,
    PartitionedHypergraph,
    is_cross_intersecting,
    label,
)

_CLOCK_EVERY = 1024


@dataclass(frozen=True)
class SolveBudget:
    max_nodes: int = 50_000_000
    max_seconds: float = 300.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = SolveBudget()


class _OutOfBudget(Exception):
    pass


class Unresolved(RuntimeError):
    """A solve needed to answer a question ran out of budget."""

    def __init__(self, what: str, certificate):
        super().__init__(f"{what}: solver budget exhausted")
        self.certificate = certificate


class _Meter:
    def __init__(self, budget: SolveBudget):
        self.budget = budget
        self.nodes = 0
        self.start = time.perf_counter()

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget
        if self.nodes % _CLOCK_EVERY == 0 and self.elapsed() > self.budget.max_seconds:
            raise _OutOfBudget

    def elapsed(self) -> float:
        return time.perf_counter() - self.start


@dataclass(frozen=True)
class CoverCertificate:
    """``cover`` meets every edge.  ``value == len(cover)``; when ``optimal``
    is false, ``lower_bound <= tau <= value``."""

    cover: tuple
    value: int
    optimal: bool
    lower_bound: int
    nodes: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def status(self) -> str:
        return "optimal" if self.optimal else "unresolved"

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "kind": "cover",
            "status": self.status,
            "value": self.value,
            "lower_bound": self.lower_bound,
            "cover": [label(v) for v in self.cover],
            "nodes": self.nodes,
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass(frozen=True)
class MatchingCertificate:
    """``matching`` is a list of pairwise disjoint edges of the source; when
    ``optimal`` is false, ``value <= nu <= upper_bound``."""

    matching: tuple
    value: int
    optimal: bool
    upper_bound: int
    nodes: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def status(self) -> str:
        return "optimal" if self.optimal else "unresolved"

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "kind": "matching",
            "status": self.status,
            "value": self.value,
            "upper_bound": self.upper_bound,
            "matching": [[label(v) for v in e] for e in self.matching],
            "nodes": self.nodes,
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


def _base(h) -> Hypergraph:
    return h.base if isinstance(h, PartitionedHypergraph) else h


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def verify_cover(h, cover: Iterable) -> bool:
    """True iff ``cover`` meets every edge of ``h``.

    Raises ``ValueError`` for a vertex outside the universe.
    """
    h = _base(h)
    c = h.mask_of(cover)
    return all(m & c for m in h.edge_masks)


# -- tau --------------------------------------------------------------------

def _minimal_masks(masks: Iterable[int]) -> list:
    """Distinct masks with proper supersets dropped (they are covered
    whenever their subset is)."""
    distinct = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    if len({m.bit_count() for m in distinct}) <= 1:
        return sorted(distinct)
    kept: list = []
    for m in distinct:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return sorted(kept)


def _greedy_cover(masks: list, n: int) -> int:
    """Repeatedly take the vertex hitting most uncovered edges (lowest
    position on ties)."""
    inc = [0] * n
    for j, m in enumerate(masks):
        for v in _bits(m):
            inc[v] |= 1 << j
    uncovered = (1 << len(masks)) - 1
    cover = 0
    while uncovered:
        best_v, best_d = -1, 0
        for v in range(n):
            d = (inc[v] & uncovered).bit_count()
            if d > best_d:
                best_v, best_d = v, d
        cover |= 1 << best_v
        uncovered &= ~inc[best_v]
    return cover


class _CoverSearch:
    def __init__(self, masks: list, n: int, meter: _Meter):
        self.masks = masks
        self.n = n
        self.meter = meter
        inc = [0] * n
        for j, m in enumerate(masks):
            for v in _bits(m):
                inc[v] |= 1 << j
        self.inc = inc
        greedy = _greedy_cover(masks, n)
        self.best = greedy.bit_count()
        self.best_cover = greedy

    def lower_bound(self, uncovered: int, allowed: int, need_below: int) -> int:
        """A lower bound on the number of allowed vertices still needed.

        Two bounds: a greedy packing of uncovered edges that stay disjoint
        once restricted to allowed vertices, and the number of highest
        degree vertices whose degrees sum to the uncovered edge count.
        """
        masks = self.masks
        used = 0
        packing = 0
        for j in _bits(uncovered):
            m = masks[j] & allowed
            if not m & used:
                used |= m
                packing += 1
                if packing >= need_below:
                    return packing
        total = uncovered.bit_count()
        inc = self.inc
        degrees = sorted(
            ((inc[v] & uncovered).bit_count() for v in _bits(allowed)), reverse=True
        )
        acc = 0
        for t, d in enumerate(degrees, 1):
            acc += d
            if acc >= total:
                return max(packing, t)
        return max(packing, len(degrees) + 1)

    def run(self, uncovered: int, allowed: int, chosen: int, depth: int):
        self.meter.tick()
        if not uncovered:
            if depth < self.best:
                self.best = depth
                self.best_cover = chosen
            return
        room = self.best - depth - 1  # vertices we may still add and improve
        if room <= 0:
            return
        if self.lower_bound(uncovered, allowed, room + 1) > room:
            return
        masks = self.masks
        pick, pick_size = -1, self.n + 1
        for j in _bits(uncovered):
            s = (masks[j] & allowed).bit_count()
            if s < pick_size:
                pick, pick_size = j, s
                if s <= 1:
                    break
        if pick_size == 0:
            return
        inc = self.inc
        for v in _bits(masks[pick] & allowed):
            bit = 1 << v
            allowed &= ~bit
            self.run(uncovered & ~inc[v], allowed, chosen | bit, depth + 1)
            if self.best - depth - 1 <= 0:
                return


def tau_exact(h, budget: SolveBudget = DEFAULT_BUDGET) -> CoverCertificate:
    """Minimum cover with a certificate.

    Branches on the vertices of the uncovered edge with the fewest vertices
    still allowed; the i-th branch takes the i-th vertex and forbids the
    earlier ones, so every cover is reached exactly once.
    """
    h = _base(h)
    meter = _Meter(budget)
    n = len(h.vertices)
    masks = _minimal_masks(h.edge_masks)
    if not masks:
        return CoverCertificate((), 0, True, 0, 0, meter.elapsed())
    search = _CoverSearch(masks, n, meter)
    everything = (1 << len(masks)) - 1
    root_lb = search.lower_bound(everything, (1 << n) - 1, n + 1)
    optimal = True
    try:
        if root_lb < search.best:
            search.run(everything, (1 << n) - 1, 0, 0)
    except _OutOfBudget:
        optimal = False
    value = search.best
    lower = value if optimal else min(root_lb, value)
    return CoverCertificate(
        cover=h.vertices_of(search.best_cover),
        value=value,
        optimal=optimal,
        lower_bound=lower,
        nodes=meter.nodes,
        elapsed=meter.elapsed(),
    )


# -- nu ---------------------------------------------------------------------

def nu_exact(h, budget: SolveBudget = DEFAULT_BUDGET) -> MatchingCertificate:
    """Maximum matching with a certificate.

    Edges are decided include-first in sorted order; a branch is cut when
    the edges still compatible with it cannot beat the incumbent, counting
    both how many remain and how many fit in their vertices.
    """
    h = _base(h)
    meter = _Meter(budget)
    masks = h.edge_masks
    if not masks:
        return MatchingCertificate((), 0, True, 0, 0, meter.elapsed())
    rmin = min(m.bit_count() for m in masks)

    def room_for(cands) -> int:
        free = 0
        for j in cands:
            free |= masks[j]
        return min(len(cands), free.bit_count() // rmin)

    greedy, used = [], 0
    for j, m in enumerate(masks):
        if not m & used:
            greedy.append(j)
            used |= m
    best = list(greedy)
    root_ub = room_for(range(len(masks)))

    def grow(cands: list, picked: list):
        nonlocal best
        meter.tick()
        if len(picked) > len(best):
            best = list(picked)
        if len(picked) + room_for(cands) <= len(best):
            return
        for i, j in enumerate(cands):
            if len(picked) + len(cands) - i <= len(best):
                return
            mj = masks[j]
            rest = [k for k in cands[i + 1:] if not masks[k] & mj]
            picked.append(j)
            grow(rest, picked)
            picked.pop()

    optimal = True
    try:
        if len(best) < root_ub:
            grow(list(range(len(masks))), [])
    except _OutOfBudget:
        optimal = False
    value = len(best)
    return MatchingCertificate(
        matching=tuple(h.edges[j] for j in best),
        value=value,
        optimal=optimal,
        upper_bound=value if optimal else max(root_ub, value),
        nodes=meter.nodes,
        elapsed=meter.elapsed(),
    )


# -- evasiveness ------------------------------------------------------------

@dataclass(frozen=True)
class EvasivenessReport:
    uniformity: int
    per_member_tau: tuple
    union_tau: int
    is_cross_intersecting: bool
    is_evasive: bool
    nodes: int = 0

    def to_dict(self) -> dict:
        return {
            "uniformity": self.uniformity,
            "per_member_tau": list(self.per_member_tau),
            "union_tau": self.union_tau,
            "is_cross_intersecting": self.is_cross_intersecting,
            "is_evasive": self.is_evasive,
            "nodes": self.nodes,
        }


def check_evasive(
    family: CrossFamily, budget: SolveBudget = DEFAULT_BUDGET
) -> EvasivenessReport:
    """Solve every member and the union exactly and decide evasiveness.

    Raises :class:`Unresolved` if any of those solves exhausts the budget.
    """
    a = family.uniformity
    taus, nodes = [], 0
    for i, member in enumerate(family.members):
        cert = tau_exact(member, budget)
        if not cert.optimal:
            raise Unresolved(f"tau of member {i}", cert)
        taus.append(cert.value)
        nodes += cert.nodes
    cert = tau_exact(family.union(), budget)
    if not cert.optimal:
        raise Unresolved("tau of the union", cert)
    nodes += cert.nodes
    crossing = is_cross_intersecting(family)
    evasive = crossing and all(t == a for t in taus) and cert.value == 2 * a - 1
    return EvasivenessReport(
        uniformity=a,
        per_member_tau=tuple(taus),
        union_tau=cert.value,
        is_cross_intersecting=crossing,
        is_evasive=evasive,
        nodes=nodes,
    )
