import itertools

import pytest

from tcover.geometry import (
    affine_family,
    field_axiom_violations,
    field_make,
    field_of_order,
    is_irreducible,
    plane_axiom_violations,
    prime_power,
    projective_plane,
    truncated_plane,
)
from tcover.hypercore import check_partition, is_cross_intersecting


def test_gf2():
    f = field_make(2, 1)
    assert f.q == 2
    assert f.add(1, 1) == 0


def test_gf3():
    f = field_make(3, 1)
    assert f.mul(2, 2) == 1


def test_gf4_multiplicative_group_cyclic_of_order_3():
    f = field_make(2, 2)
    nonzero = [x for x in f.elements if x]
    assert len(nonzero) == 3

    def order(x):
        y, k = x, 1
        while y != 1:
            y, k = f.mul(y, x), k + 1
        return k

    assert any(order(x) == 3 for x in nonzero)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms(q):
    assert field_axiom_violations(field_of_order(q)) == []


@pytest.mark.parametrize(
    "p, s, modulus",
    [(2, 2, (1, 1, 1)), (2, 3, (1, 1, 0, 1)), (3, 2, (1, 0, 1)), (5, 1, (0, 1))],
)
def test_smallest_modulus(p, s, modulus):
    f = field_make(p, s)
    assert f.modulus == modulus
    assert is_irreducible(list(f.modulus), p)


def test_not_prime():
    with pytest.raises(ValueError):
        field_make(6, 1)


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(6) is None
    assert prime_power(1) is None


def test_inverse():
    f = field_make(3, 2)
    for x in f.elements:
        if x:
            assert f.mul(x, f.inv(x)) == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_plane_axioms(q):
    plane = projective_plane(q)
    assert len(plane.points) == len(plane.lines) == q * q + q + 1
    assert plane_axiom_violations(plane) == []


def test_fano_and_order_three():
    assert len(projective_plane(2).points) == 7
    plane = projective_plane(3)
    assert len(plane.lines) == 13
    assert {len(line) for line in plane.lines} == {4}


def test_order_four_lines_meet_once():
    plane = projective_plane(4)
    assert len(plane.points) == 21
    for l1, l2 in itertools.combinations(plane.lines, 2):
        assert len(set(l1) & set(l2)) == 1


def test_plane_not_prime_power():
    with pytest.raises(ValueError):
        projective_plane(6)


def test_points_normalized():
    for pt in projective_plane(4).points:
        assert next(c for c in pt if c) == 1


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_affine_members_are_parallel_classes(q):
    fam = affine_family(q)
    assert len(fam) == q + 1
    assert len(fam.universe) == q * q
    for member in fam.members:
        assert len(member.edges) == q
        assert {len(e) for e in member.edges} == {q}
        covered = [v for e in member.edges for v in e]
        assert sorted(covered) == sorted(fam.universe)
    assert is_cross_intersecting(fam)


def test_affine_two_perfect_matchings():
    fam = affine_family(2)
    assert len(fam) == 3
    for member in fam.members:
        assert len(member.edges) == 2 and all(len(e) == 2 for e in member.edges)


def test_truncated_three():
    t = truncated_plane(3)
    assert len(t.edges) == 9 and len(t.vertices) == 12
    assert [len(s) for s in t.sides] == [3, 3, 3, 3]
    for v in t.vertices:
        assert sum(v in e for e in t.edges) == 3
    for e, f in itertools.combinations(t.edges, 2):
        assert len(set(e) & set(f)) == 1
    assert check_partition(t)


def test_truncated_two():
    t = truncated_plane(2)
    assert len(t.edges) == 4 and len(t.vertices) == 6
    assert [len(s) for s in t.sides] == [2, 2, 2]
    assert check_partition(t)


@pytest.mark.parametrize("q", [4, 5])
def test_truncated_is_one_partitioned(q):
    t = truncated_plane(q)
    assert t.profile == (1,) * (q + 1)
    assert check_partition(t)
