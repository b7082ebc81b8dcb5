import pytest

from lattower.errors import LatTowerError, NotTowerGroup, TooLarge
from lattower.group_spec import ChainPosition as CP
from lattower.group_spec import parse_spec
from lattower.perm_oracle import (
    ConcreteGroup,
    ConcreteSubgroup,
    Perm,
    all_normal_subgroups,
    block_intersection,
    block_projection,
    concrete_group,
    differential_validate,
    extract_profile,
    is_normal,
    lemma_lattices,
    normal_closure,
    normal_subgroup_poset,
    subgroup_join,
)


def test_perm_basics():
    t = Perm((1, 0, 2))
    c = Perm((1, 2, 0))
    assert (t * c).images == tuple(t.images[c.images[x]] for x in range(3))
    assert t.inverse() == t
    assert (c * c.inverse()).images == (0, 1, 2)
    assert t.sign == -1
    assert c.sign == 1
    with pytest.raises(LatTowerError):
        Perm((0, 0, 1))


def test_group_layout():
    g = ConcreteGroup((3, 3))
    assert g.order == 36
    assert g.identity == 0
    assert g.components[0] == (0, 0)
    # ids are mixed radix, most significant factor first
    assert g.from_components((1, 0)) == 6
    assert g.from_components((0, 1)) == 1


def test_group_product_matches_perm_product(rng):
    g = ConcreteGroup((3, 4))
    for _ in range(80):
        a, b = rng.randrange(g.order), rng.randrange(g.order)
        ab = g.product(a, b)
        for pa, pb, pab in zip(g.element_perms(a), g.element_perms(b), g.element_perms(ab)):
            assert pa * pb == pab
        assert g.product(a, g.inverse(a)) == g.identity


def test_group_order_bound():
    with pytest.raises(TooLarge):
        ConcreteGroup((5, 5), max_order=5000)


def test_sign_bits():
    g = ConcreteGroup((3, 3))
    t = g.tables[0].index[(1, 0, 2)]
    odd_left = g.embed(0, t)
    odd_both = g.product(odd_left, g.embed(1, t))
    assert g.sign_bits(g.identity) == 0
    assert g.sign_bits(odd_left) == 0b01
    assert g.sign_bits(odd_both) == 0b11


def test_normal_closures_in_s3():
    g = ConcreteGroup((3,))
    transposition = g.tables[0].index[(1, 0, 2)]
    three_cycle = g.tables[0].index[(1, 2, 0)]
    assert len(normal_closure(g, transposition)) == 6
    assert len(normal_closure(g, three_cycle)) == 3


def test_normal_closure_of_double_transposition_is_v():
    g = ConcreteGroup((4,))
    double = g.tables[0].index[(1, 0, 3, 2)]
    v = normal_closure(g, double)
    assert len(v) == 4
    assert v.id_set() == g.tables[0].position_ids(CP.V)


def test_is_normal():
    g = ConcreteGroup((3,))
    alt = ConcreteSubgroup.from_ids(g.tables[0].position_ids(CP.ALT))
    assert is_normal(g, alt)
    transposition = g.tables[0].index[(1, 0, 2)]
    two = ConcreteSubgroup.from_ids({g.identity, transposition})
    assert not is_normal(g, two)


def test_subgroup_join():
    g = ConcreteGroup((3,))
    alt = ConcreteSubgroup.from_ids(g.tables[0].position_ids(CP.ALT))
    transposition = g.tables[0].index[(1, 0, 2)]
    whole = subgroup_join(g, alt, normal_closure(g, transposition))
    assert len(whole) == 6


# normal subgroup counts recomputed from scratch on every run
NORMAL_COUNTS = {
    (3,): 3,
    (4,): 4,
    (5,): 3,
    (6,): 3,
    (2,): 2,
    (2, 2): 5,
    (2, 3): 7,
    (2, 4): 9,
    (2, 5): 7,
    (3, 3): 10,
    (3, 4): 13,
}


@pytest.mark.parametrize("degrees, count", sorted(NORMAL_COUNTS.items()))
def test_normal_subgroup_counts(degrees, count):
    normals = all_normal_subgroups(ConcreteGroup(degrees))
    assert len(normals) == count
    assert len(normals[0]) == 1
    assert len(normals[-1]) == ConcreteGroup(degrees).order
    assert all(is_normal(ConcreteGroup(degrees), n) for n in normals)


def test_poset_of_s4_is_a_chain():
    poset = normal_subgroup_poset(ConcreteGroup((4,)))
    assert poset.n == 4
    assert len(poset.covers) == 3
    assert poset.heights == (0, 1, 2, 3)


def test_poset_of_c2_squared_is_a_diamond():
    poset = normal_subgroup_poset(ConcreteGroup((2, 2)))
    assert poset.n == 5
    assert len(poset.covers) == 6
    assert sorted(poset.heights) == [0, 1, 1, 1, 2]


def test_goursat_invariants_on_s3_x_s4():
    # for N normal in G1 x G2: |N| = |proj_1 N| * |N meet G2| = |proj_2 N| * |N meet G1|
    g = ConcreteGroup((3, 4))
    for n in all_normal_subgroups(g):
        a = block_projection(g, n, (0,))
        b = block_intersection(g, n, (0,))
        c = block_projection(g, n, (1,))
        d = block_intersection(g, n, (1,))
        assert len(b) <= len(a) and len(d) <= len(c)
        assert len(n) == len(a) * len(d) == len(c) * len(b)


def test_extract_profile_top_and_bottom():
    spec = parse_spec("S3^2")
    g = concrete_group(spec)
    whole = ConcreteSubgroup.from_ids(range(g.order))
    top = extract_profile(g, whole)
    assert top.eff == (CP.FULL, CP.FULL)
    assert top.signs.size == 4
    bottom = extract_profile(g, ConcreteSubgroup.from_ids({g.identity}))
    assert bottom.eff == (CP.TRIV, CP.TRIV)
    assert bottom.signs.dim == 0


def test_extract_profile_rejects_non_tower_groups():
    g = ConcreteGroup((2, 3))
    with pytest.raises(NotTowerGroup):
        extract_profile(g, ConcreteSubgroup.from_ids({g.identity}))
    g = ConcreteGroup((4, 3))
    with pytest.raises(NotTowerGroup):
        extract_profile(g, ConcreteSubgroup.from_ids({g.identity}))


def test_lemma_lattice_sizes():
    sizes = {name: poset.n for name, poset in lemma_lattices().items()}
    assert sizes == {"C2": 2, "C2^2": 5, "C2xS3": 7, "C2xS4": 9, "C2xS5": 7}


def test_differential_validate_smoke(lattices):
    report = differential_validate(parse_spec("S3^2"), lattice=lattices.get("S3^2"))
    assert report.ok
    assert report.oracle_count == report.enumerated_count == 10
    assert report.pairs_checked == 55
    assert report.to_json_dict()["spec"] == "S3^2"
