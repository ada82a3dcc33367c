import itertools
import math

import pytest

from tcover.constructions import (
    K4_MATCHINGS,
    PreconditionError,
    TrivialPartitionWarning,
    base_intersecting,
    beta_strings,
    compose,
    compose_checked,
    gadget_assignment,
    grid_family,
    merge_sides,
    plan_witness,
    split_pair,
    witness,
)
from tcover.geometry import affine_family, truncated_plane
from tcover.hypercore import (
    Hypergraph,
    PartitionedHypergraph,
    brute_force_tau,
    check_partition,
    is_intersecting,
)
from tcover.solver import SolveBudget, tau_exact


# -- grid and base ---------------------------------------------------------------

def test_grid_two_union_is_all_pairs():
    union = grid_family(2).union()
    assert len(union.vertices) == 4
    assert sorted(map(frozenset, union.edges), key=sorted) == sorted(
        map(frozenset, itertools.combinations(union.vertices, 2)), key=sorted
    )
    assert brute_force_tau(union) == 3


@pytest.mark.parametrize("a", [2, 3, 4, 5])
def test_grid_member_sizes(a):
    fam = grid_family(a)
    assert [len(m.edges) for m in fam.members] == [a, a, math.factorial(a)]


def test_grid_four_member_covers():
    fam = grid_family(4)
    for i, member in enumerate(fam.members):
        assert tau_exact(member).value == 4
        # an edge from another member covers this one
        other = fam.members[(i + 1) % 3].edges[0]
        assert all(set(other) & set(e) for e in member.edges)


def test_grid_one_refused():
    with pytest.raises(PreconditionError):
        grid_family(1)


@pytest.mark.parametrize("b, edges, tau", [(1, 1, 1), (2, 3, 2), (3, 10, 3)])
def test_base_intersecting(b, edges, tau):
    h = base_intersecting(b)
    assert len(h.edges) == edges
    assert len(h.vertices) == 2 * b - 1
    assert is_intersecting(h)
    assert brute_force_tau(h) == tau


# -- compose --------------------------------------------------------------------

def test_compose_grid_two_base_one():
    p = compose(grid_family(2), base_intersecting(1))
    assert len(p.edges) == 6 and len(p.vertices) == 7
    assert p.profile == (2, 1) and check_partition(p)
    assert is_intersecting(p)
    assert brute_force_tau(p) == 3
    assert tau_exact(p).value == 3


def test_compose_grid_three_base_two():
    p = compose(grid_family(3), base_intersecting(2))
    assert len(p.edges) == 36 and len(p.vertices) == 18
    assert p.profile == (3, 2) and check_partition(p)
    assert brute_force_tau(p, limit=18) == 5
    assert tau_exact(p).value == 5


def test_compose_affine_four_base_two():
    p = compose(affine_family(4), base_intersecting(2))
    assert p.profile == (4, 2) and check_partition(p)
    assert is_intersecting(p)
    assert tau_exact(p).value == 6


@pytest.mark.parametrize("fam_fn, b", [(lambda: grid_family(4), 2), (lambda: affine_family(3), 1)])
def test_compose_counts(fam_fn, b):
    fam, f = fam_fn(), base_intersecting(b)
    p = compose(fam, f)
    assert len(p.edges) == sum(len(m.edges) for m in fam.members) * len(f.edges)
    assert len(p.vertices) == len(fam.universe) + len(fam) * len(f.vertices)


def test_compose_inequality_refused():
    with pytest.raises(PreconditionError, match="a/\\(m-1\\) <= b < a"):
        compose(grid_family(5), base_intersecting(2))
    with pytest.raises(PreconditionError):
        compose(grid_family(3), base_intersecting(3))


def test_compose_needs_cover_number_b():
    # intersecting 2-graph with tau 1: a star
    star = Hypergraph(edges=[[("s", 0), ("s", i)] for i in (1, 2, 3)])
    with pytest.raises(PreconditionError, match="tau"):
        compose(grid_family(3), star)


def test_compose_needs_intersecting():
    loose = Hypergraph(edges=[[("s", 0), ("s", 1)], [("s", 2), ("s", 3)]])
    with pytest.raises(PreconditionError, match="intersecting"):
        compose(grid_family(3), loose)


def test_compose_records_checks():
    _, checks = compose_checked(grid_family(3), base_intersecting(2))
    assert [c.what for c in checks] == ["a/(m-1) <= b < a", "F intersecting", "tau(F)=b", "evasive"]
    assert all(c.status == "verified" for c in checks)


def test_large_family_evasiveness_is_cited():
    _, checks = compose_checked(affine_family(7), base_intersecting(1))
    assert checks[-1].status == "cited"


def test_compose_carries_inner_partition():
    inner = compose(grid_family(2), base_intersecting(1))
    outer = compose(grid_family(5), inner)
    assert outer.profile == (5, 2, 1)
    assert check_partition(outer)


# -- merge --------------------------------------------------------------------------

def test_merge_five_two_one_into_six_two():
    inner = compose(grid_family(2), base_intersecting(1))
    p = compose(grid_family(5), inner)
    merged = merge_sides(p, [0, 2])
    assert merged.profile == (6, 2)
    assert merged.edges == p.edges
    assert check_partition(merged)


def test_merge_four_square_pairwise(four_square):
    merged = merge_sides(merge_sides(four_square, [2, 3]), [0, 1])
    assert merged.profile == (4, 4)
    assert check_partition(merged)
    assert merged.edges == four_square.edges


def test_merge_nothing_is_identity(pentagon):
    assert merge_sides(pentagon, []) is pentagon
    assert merge_sides(pentagon, [1]) is pentagon


def test_merge_everything_warns(pentagon):
    with pytest.warns(TrivialPartitionWarning):
        merged = merge_sides(pentagon, [0, 1])
    assert merged.profile == (4,)


def test_merge_bad_index(pentagon):
    with pytest.raises(IndexError):
        merge_sides(pentagon, [0, 5])


# -- pentagon -------------------------------------------------------------------------

def test_pentagon_shape(pentagon):
    assert len(pentagon.edges) == 10 and len(pentagon.vertices) == 10
    assert tau_exact(pentagon).value == 4


def test_pentagon_index_formulas(pentagon):
    e = lambda i: {("u", i % 5), ("u", (i + 1) % 5), ("w", (i - 1) % 5), ("w", (i + 2) % 5)}  # noqa: E731
    f = lambda i: {("u", (i - 1) % 5), ("u", (i + 1) % 5), ("w", i % 5), ("w", (i + 1) % 5)}  # noqa: E731
    assert e(1) & e(3) == {("w", 0)}
    expected = sorted(sorted(e(i)) for i in range(5)) + sorted(sorted(f(i)) for i in range(5))
    assert sorted(map(sorted, pentagon.edges)) == sorted(expected)


# -- four square -----------------------------------------------------------------------

def test_beta_strings():
    betas = beta_strings()
    assert len(betas) == len(set(betas)) == 8
    for b1, _, b3, b4 in betas:
        assert b1 == (0 if b3 == b4 else 1)
    for b, c in itertools.product(betas, repeat=2):
        if b[2] != c[2] and b[3] != c[3]:
            assert b[0] == c[0]


def test_gadget_matchings_distinct_per_vertex():
    t = truncated_plane(3)
    assign = gadget_assignment(t)
    for v in t.vertices:
        ks = [assign[(e, v)] for e in t.edges if v in e]
        assert sorted(ks) == [0, 1, 2]


def test_k4_matchings_are_perfect():
    for pair0, pair1 in K4_MATCHINGS:
        assert sorted(pair0 + pair1) == [0, 1, 2, 3]
        assert 0 in pair0


def test_four_square_shape(four_square):
    assert len(four_square.vertices) == 48
    assert len(four_square.edges) == 72 == 8 * 9
    assert not four_square.base.duplicate_edges
    assert [len(s) for s in four_square.sides] == [12] * 4
    assert four_square.profile == (2, 2, 2, 2)
    assert check_partition(four_square)
    assert is_intersecting(four_square)


def test_four_square_tau(four_square):
    cert = tau_exact(four_square)
    assert cert.value == 8 and cert.optimal


# -- witness ----------------------------------------------------------------------------

def test_split_pair():
    assert split_pair(6, 1) == (4, 3)
    assert split_pair(10, 2) == (7, 5)
    assert split_pair(10, 1) == (7, 4)
    for a in range(9, 30):
        for b in range(1, a):
            if 2 * b < a:
                u, v = split_pair(a, b)
                assert u <= 2 * v and v < u < a and u + v == a + b and v != 2 * b


def test_witness_three_two():
    rep = witness(3, 2)
    assert rep.status == "verified"
    assert rep.tree.kind == "compose" and rep.tree.params["case"] == "i"
    assert rep.certificate.value == 5
    assert len(rep.result.edges) == 36


def test_witness_six_two_special_path():
    rep = witness(6, 2)
    assert rep.status == "verified" and rep.certificate.value == 8
    assert rep.tree.kind == "merge"
    comp = rep.tree.children[0]
    assert comp.params["case"] == "iii"
    assert [c.kind for c in comp.children] == ["grid", "compose"]
    assert comp.children[0].params == {"a": 5}
    assert comp.children[1].target == (2, 1)
    assert rep.result.profile == (6, 2)


def test_witness_two_two_is_pentagon():
    rep = witness(2, 2)
    assert rep.tree.kind == "pentagon"
    assert rep.status == "verified" and rep.certificate.value == 4


def test_witness_four_four():
    rep = witness(4, 4)
    assert rep.status == "verified"
    assert rep.result.profile == (4, 4)


def test_witness_swap():
    rep = witness(1, 2)
    assert rep.swapped
    assert rep.result.profile == (1, 2)
    assert rep.status == "verified"


def test_witness_refuses_open_diagonal():
    with pytest.raises(PreconditionError, match="t\\(3,3\\)"):
        witness(3, 3)


def test_witness_cap():
    rep = witness(6, 4, cap=1000, verify=False)
    assert rep.result is None
    assert rep.status == "not-materialized"
    assert "1000" in rep.refusal and "compose" in rep.refusal


def test_witness_falls_back_to_affine_over_cap():
    tree = plan_witness(7, 5)
    assert tree.children[0].kind == "affine"
    assert "cap" in tree.params["note"]


def test_witness_unresolved_under_tiny_budget():
    rep = witness(5, 3, budget=SolveBudget(max_nodes=3))
    assert rep.status == "unresolved"
    assert not rep.certificate.optimal


@pytest.mark.parametrize("a, b", [(6, 1), (10, 2), (9, 2), (7, 4)])
def test_witness_structure_beyond_desk_scale(a, b):
    rep = witness(a, b, verify=False)
    assert rep.status == "structural"
    assert rep.structure == {"partition": True, "intersecting": True, "profile_matches": True}


def test_witness_report_serializes():
    d = witness(6, 2).to_dict()
    assert d["claimed_tau"] == 8 and d["status"] == "verified"
    kinds = set()

    def walk(node):
        kinds.add(node["node"])
        for c in node.get("children", []):
            walk(c)

    walk(d["tree"])
    assert kinds <= {"grid", "affine", "base", "compose", "merge", "pentagon", "four_square"}
    assert {"merge", "compose", "grid", "base"} <= kinds


def test_partitioned_inner_witness_is_intersecting():
    p = witness(2, 1).result
    assert isinstance(p, PartitionedHypergraph)
    assert is_intersecting(p)
