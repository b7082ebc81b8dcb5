from itertools import permutations

import pytest

from lattower.autgroup import (
    LatticeAutomorphism,
    SlotPermutation,
    brute_force_automorphisms,
    complemented_elements,
    composition_table,
    factor_atoms,
    induced_permutation,
    tau_on_lattice,
    tau_sigma,
    verify_product_formula,
)
from lattower.errors import ClassViolation, TooLarge
from lattower.group_spec import ChainPosition as CP
from lattower.group_spec import parse_spec
from lattower.lattice_core import (
    AbstractLattice,
    leq,
    sign_parity_element,
    sub_product_element,
)


def _chain(n):
    return AbstractLattice(tuple((1 << (i + 1)) - 1 for i in range(n)))


def _diamond(k):
    # bottom, k incomparable atoms, top
    n = k + 2
    masks = [1] + [1 | (1 << i) for i in range(1, k + 1)] + [(1 << n) - 1]
    return AbstractLattice(masks)


PENTAGON = AbstractLattice(
    # 0 < 1 < 2 < 4 and 0 < 3 < 4, with 1, 2 incomparable to 3
    (0b00001, 0b00011, 0b00111, 0b01001, 0b11111)
)


def test_brute_force_on_chains():
    for n in (1, 2, 5):
        autos = brute_force_automorphisms(_chain(n))
        assert len(autos) == 1 and autos[0].is_identity


def test_brute_force_on_diamonds():
    # poset automorphisms permute the k atoms freely
    assert len(brute_force_automorphisms(_diamond(2))) == 2
    assert len(brute_force_automorphisms(_diamond(3))) == 6
    assert len(brute_force_automorphisms(_diamond(4))) == 24


def test_brute_force_on_pentagon():
    autos = brute_force_automorphisms(PENTAGON)
    assert len(autos) == 1


def test_brute_force_output_is_sorted_with_identity_first():
    autos = brute_force_automorphisms(_diamond(3))
    assert autos[0].is_identity
    assert [a.mapping for a in autos] == sorted(a.mapping for a in autos)


def test_brute_force_respects_size_bound(lattices):
    with pytest.raises(TooLarge):
        brute_force_automorphisms(lattices.get("S3^3"), max_size=10)


def test_brute_force_finds_only_order_maps(lattices):
    lat = lattices.get("S3^2")
    a = lat.to_abstract()
    for phi in brute_force_automorphisms(lat):
        for i in range(a.n):
            for j in range(a.n):
                assert a.leq(i, j) == a.leq(phi(i), phi(j))


def test_composition_table_is_a_group():
    autos = brute_force_automorphisms(_diamond(3))
    table = composition_table(autos)
    n = len(autos)
    # identity at index 0, every row and column a permutation
    assert table[0] == list(range(n))
    assert [row[0] for row in table] == list(range(n))
    for row in table:
        assert sorted(row) == list(range(n))
    for j in range(n):
        assert sorted(table[i][j] for i in range(n)) == list(range(n))


def test_slot_permutation_algebra():
    s = SlotPermutation((1, 0, 2))
    t = SlotPermutation((0, 2, 1))
    assert s.compose(t).mapping == tuple(s(t(i)) for i in range(3))
    assert s.compose(s.inverse()) == SlotPermutation.identity(3)
    assert s.cycle_notation() == "(0 1)"
    assert SlotPermutation.identity(3).cycle_notation() == "()"
    labels = ("3.1", "3.2", "3.3")
    assert t.cycle_notation(labels) == "(3.2 3.3)"


def test_complemented_elements_are_the_full_sub_products(lattices):
    lat = lattices.get("S3^2")
    comp = complemented_elements(lat)
    expected = set()
    for bits in range(4):
        positions = {s: (CP.FULL if (bits >> s) & 1 else CP.TRIV) for s in range(2)}
        expected.add(lat.index_of(sub_product_element(lat.spec, positions)))
    assert comp == expected


def test_factor_atoms_in_slot_order(lattices):
    lat = lattices.get("S3*S4")
    atoms = factor_atoms(lat)
    assert len(atoms) == 2
    for s, i in enumerate(atoms):
        t = lat.elements[i].triple
        assert not t.coupled
        assert dict(t.positions)[s] is CP.FULL
    # the interval below an atom is the factor chain: 3 long at class B, 4 at class A
    down = lat.down_masks
    assert bin(down[atoms[0]]).count("1") == 3
    assert bin(down[atoms[1]]).count("1") == 4


def test_tau_sigma_rejects_class_mixing():
    spec = parse_spec("S3*S4")
    top = sub_product_element(spec, {0: CP.FULL, 1: CP.FULL})
    with pytest.raises(ClassViolation):
        tau_sigma(SlotPermutation((1, 0)), top)


def test_tau_sigma_moves_labels():
    spec = parse_spec("S3^3")
    sigma = SlotPermutation((1, 2, 0))
    e = sign_parity_element(spec, (0, 1))
    assert tau_sigma(sigma, e) == sign_parity_element(spec, (1, 2))
    s = sub_product_element(spec, {0: CP.ALT, 1: CP.TRIV, 2: CP.FULL})
    assert tau_sigma(sigma, s) == sub_product_element(spec, {1: CP.ALT, 2: CP.TRIV, 0: CP.FULL})


def test_tau_sigma_is_functorial(rng, lattices):
    lat = lattices.get("S3^3")
    elements = rng.sample(list(lat.elements), 12)
    perms = [SlotPermutation(p) for p in permutations(range(3))]
    for sigma in perms:
        for rho in perms:
            for e in elements:
                assert tau_sigma(sigma.compose(rho), e) == tau_sigma(sigma, tau_sigma(rho, e))
    ident = SlotPermutation.identity(3)
    for e in elements:
        assert tau_sigma(ident, e) == e


def test_tau_on_lattice_preserves_order(lattices):
    lat = lattices.get("S3^3")
    phi = tau_on_lattice(SlotPermutation((2, 0, 1)), lat)
    for i, ei in enumerate(lat.elements):
        for j, ej in enumerate(lat.elements):
            assert leq(ei, ej) == leq(lat.elements[phi(i)], lat.elements[phi(j)])


def test_induced_permutation_round_trip(lattices):
    lat = lattices.get("S3^2")
    for mapping in permutations(range(2)):
        sigma = SlotPermutation(mapping)
        assert induced_permutation(tau_on_lattice(sigma, lat), lat) == sigma


def test_lattice_automorphism_algebra():
    phi = LatticeAutomorphism((1, 0, 2))
    assert phi.compose(phi).is_identity
    assert phi.inverse() == phi


@pytest.mark.parametrize(
    "text, count",
    [("S3^2", 2), ("S3*S4", 1), ("S4^2", 2)],
)
def test_product_formula_small(text, count, lattices):
    report = verify_product_formula(parse_spec(text), lattice=lattices.get(text))
    assert report.match
    assert report.predicted_order == count
    assert report.brute_force_order == count
    assert report.constructive_order == count


def test_product_formula_generators(lattices):
    report = verify_product_formula(parse_spec("S3^2"), lattice=lattices.get("S3^2"))
    assert report.generators == ("(3.1 3.2)",)
    report = verify_product_formula(parse_spec("S3*S4"), lattice=lattices.get("S3*S4"))
    assert report.generators == ()


def test_product_formula_json(lattices):
    report = verify_product_formula(parse_spec("S3^2"), lattice=lattices.get("S3^2"))
    d = report.to_json_dict()
    assert d["spec"] == "S3^2"
    assert d["match"] is True
    assert d["predicted_order"] == 2
