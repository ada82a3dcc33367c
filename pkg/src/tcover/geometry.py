"""Finite fields GF(p^s) and the Desarguesian planes built over them.

Field elements are the integers ``0..q-1``; the integer ``sum c_i p^i``
stands for the polynomial ``sum c_i x^i`` reduced modulo the field's
defining polynomial.  Arithmetic goes through precomputed tables, which is
plenty for the orders used here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from tcover.hypercore import CrossFamily, Hypergraph, PartitionedHypergraph

POINT = "pt"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple | None:
    """``(p, s)`` with ``q == p**s``, or None when q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    s = 0
    while q % p == 0:
        q //= p
        s += 1
    return (p, s) if q == 1 else None


# -- polynomials over GF(p), coefficient lists low degree first -------------

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list, m: list, p: int) -> list:
    a = _trim(list(a))
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        k = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - k * c) % p
        _trim(a)
    return a


def _decode(x: int, p: int, s: int) -> list:
    return [(x // p**i) % p for i in range(s)]


def _encode(c: list, p: int) -> int:
    return sum(ci * p**i for i, ci in enumerate(c))


def is_irreducible(poly: list, p: int) -> bool:
    """No monic factor of degree 1..deg/2 (exhaustive)."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            factor = _decode(low, p, d) + [1]
            if not _poly_mod(poly, factor, p):
                return False
    return True


def smallest_irreducible(p: int, s: int) -> tuple:
    """Smallest monic irreducible of degree s, comparing the lower
    coefficients as the base-p number ``sum c_i p^i``."""
    for low in range(p**s):
        poly = _decode(low, p, s) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible of degree {s} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    s: int
    modulus: tuple
    add_table: tuple
    mul_table: tuple

    @property
    def q(self) -> int:
        return self.p**self.s

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.add_table[a].index(0)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.mul_table[a].index(1)


@lru_cache(maxsize=None)
def field_make(p: int, s: int = 1) -> FieldSpec:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if s < 1:
        raise ValueError("degree must be at least 1")
    modulus = smallest_irreducible(p, s)
    q = p**s
    polys = [_decode(x, p, s) for x in range(q)]
    add = tuple(
        tuple(_encode([(ca + cb) % p for ca, cb in zip(a, b)], p) for b in polys)
        for a in polys
    )
    mul = []
    for a in polys:
        row = []
        for b in polys:
            prod = [0] * (2 * s - 1)
            for i, ca in enumerate(a):
                for j, cb in enumerate(b):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
            row.append(_encode(_poly_mod(prod, list(modulus), p), p))
        mul.append(tuple(row))
    return FieldSpec(p=p, s=s, modulus=modulus, add_table=add, mul_table=tuple(mul))


def field_of_order(q: int) -> FieldSpec:
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"{q} is not a prime power")
    return field_make(*pp)


def field_axiom_violations(f: FieldSpec) -> list:
    """Exhaustive check of the field axioms; returns the failures found."""
    bad = []
    els = list(f.elements)
    add, mul = f.add, f.mul
    for a, b in itertools.product(els, repeat=2):
        if add(a, b) != add(b, a) or mul(a, b) != mul(b, a):
            bad.append(("commutativity", a, b))
    for a, b, c in itertools.product(els, repeat=3):
        if add(add(a, b), c) != add(a, add(b, c)):
            bad.append(("additive associativity", a, b, c))
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            bad.append(("multiplicative associativity", a, b, c))
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            bad.append(("distributivity", a, b, c))
    for a in els:
        if add(a, 0) != a or mul(a, 1) != a:
            bad.append(("identity", a))
        if sum(1 for b in els if add(a, b) == 0) != 1:
            bad.append(("additive inverse", a))
        if a and sum(1 for b in els if mul(a, b) == 1) != 1:
            bad.append(("multiplicative inverse", a))
    return bad


# -- projective planes ------------------------------------------------------

def point_vertex(pt: tuple) -> tuple:
    return (POINT,) + tuple(pt)


@dataclass(frozen=True)
class ProjectivePlane:
    """PG(2, q): points are normalized coordinate triples, lines are sorted
    tuples of points.  Both lists are in lexicographic order."""

    order: int
    points: tuple
    lines: tuple

    def lines_through(self, pt: tuple) -> tuple:
        return tuple(line for line in self.lines if pt in line)

    def to_hypergraph(self) -> Hypergraph:
        return Hypergraph(
            edges=[[point_vertex(x) for x in line] for line in self.lines],
            vertices=[point_vertex(x) for x in self.points],
        )


def _normalized(f: FieldSpec) -> list:
    """Triples whose first nonzero coordinate is 1, in lexicographic order."""
    out = []
    for t in itertools.product(f.elements, repeat=3):
        lead = next((c for c in t if c), None)
        if lead == 1:
            out.append(t)
    return out


@lru_cache(maxsize=None)
def projective_plane(q: int) -> ProjectivePlane:
    f = field_of_order(q)
    points = _normalized(f)
    lines = []
    for a in points:  # the line a.x = 0
        line = tuple(
            x for x in points
            if f.add(f.add(f.mul(a[0], x[0]), f.mul(a[1], x[1])), f.mul(a[2], x[2])) == 0
        )
        lines.append(line)
    return ProjectivePlane(order=q, points=tuple(points), lines=tuple(sorted(lines)))


def plane_axiom_violations(plane: ProjectivePlane) -> list:
    """Exhaustive check of the projective plane axioms for order q."""
    q = plane.order
    n = q * q + q + 1
    bad = []
    if len(plane.points) != n or len(plane.lines) != n:
        bad.append(("counts", len(plane.points), len(plane.lines)))
    sets = [set(line) for line in plane.lines]
    for i, s in enumerate(sets):
        if len(s) != q + 1:
            bad.append(("line size", i, len(s)))
    for pt in plane.points:
        deg = sum(1 for s in sets if pt in s)
        if deg != q + 1:
            bad.append(("point degree", pt, deg))
    for i, j in itertools.combinations(range(len(sets)), 2):
        if len(sets[i] & sets[j]) != 1:
            bad.append(("line pair", i, j))
    for x, y in itertools.combinations(plane.points, 2):
        joins = sum(1 for s in sets if x in s and y in s)
        if joins != 1:
            bad.append(("point pair", x, y))
    return bad


def affine_family(q: int) -> CrossFamily:
    """The q+1 parallel classes of AG(2, q).

    The first line ``L = v_1..v_{q+1}`` is removed; class ``i`` consists of
    the other lines through ``v_i``, with ``v_i`` deleted.
    """
    plane = projective_plane(q)
    at_infinity = plane.lines[0]
    members = []
    for v in at_infinity:
        members.append(
            Hypergraph(
                edges=[
                    [point_vertex(x) for x in line if x != v]
                    for line in plane.lines_through(v)
                    if line != at_infinity
                ]
            )
        )
    universe = [point_vertex(x) for x in plane.points if x not in at_infinity]
    return CrossFamily(
        members=members, uniformity=q, universe=universe, name="affine", params=(q,)
    )


def truncated_plane(q: int = 3) -> PartitionedHypergraph:
    """PG(2, q) minus its first point x.

    Sides are the q+1 lines through x (without x); edges are the q^2 lines
    that avoid x, so each edge meets each side exactly once.
    """
    plane = projective_plane(q)
    x = plane.points[0]
    sides = [[point_vertex(y) for y in line if y != x] for line in plane.lines_through(x)]
    edges = [[point_vertex(y) for y in line] for line in plane.lines if x not in line]
    base = Hypergraph(edges=edges, vertices=[v for s in sides for v in s])
    return PartitionedHypergraph(base=base, sides=sides, profile=[1] * (q + 1))
