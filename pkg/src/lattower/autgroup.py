"""Lattice automorphisms of N(G): constructive ones and a brute-force search.

A permutation of the factor slots that keeps degree-4 slots among degree-4
slots induces a lattice automorphism tau by relabelling triples; the induced
maps realise all of LatAut(G), which is the product of the symmetric groups
on the class-A and class-B slots.  The brute-force search below knows none
of that: it works on the bare order relation and finds every automorphism by
backtracking, so agreement between the two routes is genuine evidence.

The bridge between abstract automorphisms and slot permutations is the set
of complemented elements.  These are exactly the sub-products that are full
or trivial in every slot; the minimal nontrivial ones ("factor atoms") are
the individual factors, and any automorphism permutes them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import factorial

from .errors import ClassViolation, LatTowerError, TooLarge
from .gf2 import Subspace, _reduce
from .group_spec import ChainPosition, TowerGroupSpec, chain_iso, format_spec
from .lattice_core import (
    AbstractLattice,
    AdmissibleTriple,
    Lattice,
    LatticeElement,
    element_from_triple,
    enumerate_lattice,
)

__all__ = [
    "DEFAULT_MAX_LATTICE",
    "SlotPermutation",
    "LatticeAutomorphism",
    "complemented_elements",
    "factor_atoms",
    "tau_sigma",
    "tau_on_lattice",
    "brute_force_automorphisms",
    "induced_permutation",
    "composition_table",
    "ProductFormulaReport",
    "verify_product_formula",
]

DEFAULT_MAX_LATTICE = 2000


@dataclass(frozen=True)
class SlotPermutation:
    """A permutation of slot indices; mapping[s] is the image of slot s."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise LatTowerError(f"not a permutation: {self.mapping}")

    @classmethod
    def identity(cls, n: int) -> "SlotPermutation":
        return cls(tuple(range(n)))

    def __call__(self, s: int) -> int:
        return self.mapping[s]

    def compose(self, other: "SlotPermutation") -> "SlotPermutation":
        """self after other: (self.compose(other))(s) = self(other(s))."""
        return SlotPermutation(tuple(self.mapping[other.mapping[s]] for s in range(len(self.mapping))))

    def inverse(self) -> "SlotPermutation":
        inv = [0] * len(self.mapping)
        for s, t in enumerate(self.mapping):
            inv[t] = s
        return SlotPermutation(tuple(inv))

    def cycle_notation(self, labels: tuple[str, ...] | None = None) -> str:
        name = (lambda s: labels[s]) if labels else str
        seen = set()
        cycles = []
        for s in range(len(self.mapping)):
            if s in seen or self.mapping[s] == s:
                seen.add(s)
                continue
            cyc = [s]
            seen.add(s)
            t = self.mapping[s]
            while t != s:
                cyc.append(t)
                seen.add(t)
                t = self.mapping[t]
            cycles.append("(" + " ".join(name(x) for x in cyc) + ")")
        return "".join(cycles) if cycles else "()"


@dataclass(frozen=True)
class LatticeAutomorphism:
    """A permutation of element indices preserving order both ways."""

    mapping: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def compose(self, other: "LatticeAutomorphism") -> "LatticeAutomorphism":
        return LatticeAutomorphism(
            tuple(self.mapping[other.mapping[i]] for i in range(len(self.mapping)))
        )

    def inverse(self) -> "LatticeAutomorphism":
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return LatticeAutomorphism(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))


def composition_table(autos: list[LatticeAutomorphism]) -> list[list[int]]:
    """table[i][j] = index of autos[i] composed after autos[j]."""
    index = {a.mapping: i for i, a in enumerate(autos)}
    return [[index[a.compose(b).mapping] for b in autos] for a in autos]


def complemented_elements(lat: Lattice) -> set[int]:
    """Indices of all N with a complement: meet at bottom, join at top."""
    bottom_mask = 1 << lat.bottom_index
    top_mask = 1 << lat.top_index
    down, up = lat.down_masks, lat.up_masks
    out = set()
    for i in range(len(lat)):
        for c in range(len(lat)):
            if down[i] & down[c] == bottom_mask and up[i] & up[c] == top_mask:
                out.add(i)
                break
    return out


def factor_atoms(lat: Lattice) -> list[int]:
    """Minimal nontrivial complemented elements, one per slot, in slot order.

    Each is the sub-product that is FULL in a single slot, so the list index
    doubles as the slot index.
    """
    comp = complemented_elements(lat)
    bottom = lat.bottom_index
    down = lat.down_masks
    atoms = []
    for i in comp:
        if i == bottom:
            continue
        strictly_between = any(
            c != i and c != bottom and (down[i] >> c) & 1 for c in comp
        )
        if not strictly_between:
            atoms.append(i)
    by_slot: dict[int, int] = {}
    for i in atoms:
        t = lat.elements[i].triple
        full_slots = [s for s, p in t.positions if p is ChainPosition.FULL]
        if t.coupled or len(full_slots) != 1:
            raise LatTowerError(f"factor atom {i} is not a single-slot sub-product")
        by_slot[full_slots[0]] = i
    if sorted(by_slot) != list(range(lat.spec.num_slots)):
        raise LatTowerError("factor atoms do not cover the slots")
    return [by_slot[s] for s in range(lat.spec.num_slots)]


def _check_class_preserving(spec: TowerGroupSpec, sigma: SlotPermutation) -> None:
    if len(sigma.mapping) != spec.num_slots:
        raise LatTowerError(
            f"permutation of {len(sigma.mapping)} slots on a {spec.num_slots}-slot group"
        )
    for s in range(spec.num_slots):
        if spec.slots[s].slot_class != spec.slots[sigma(s)].slot_class:
            raise ClassViolation(
                f"slot {s} (degree {spec.slots[s].degree}) maps to slot {sigma(s)} "
                f"(degree {spec.slots[sigma(s)].degree})"
            )


def tau_sigma(sigma: SlotPermutation, e: LatticeElement) -> LatticeElement:
    """Relabel a normal subgroup along a class-preserving slot permutation.

    Coupled slots move to their images, uncoupled chain positions transport
    along the unique chain isomorphism (which fixes every position name),
    and the sign subgroup is rewritten in the coordinate order of the image.
    """
    t = e.triple
    spec = t.spec
    _check_class_preserving(spec, sigma)
    coupled = tuple(sorted(sigma(s) for s in t.coupled))
    new_index = {s: j for j, s in enumerate(coupled)}
    vectors = []
    for row in t.signs.basis:
        w = 0
        for j, s in enumerate(t.coupled):
            if (row >> j) & 1:
                w |= 1 << new_index[sigma(s)]
        vectors.append(w)
    signs = Subspace(t.signs.width, _reduce(vectors))
    positions = []
    for s, p in t.positions:
        iso = chain_iso(spec.slots[s].degree, spec.slots[sigma(s)].degree)
        positions.append((sigma(s), iso[p]))
    return element_from_triple(
        AdmissibleTriple(spec, coupled, tuple(sorted(positions)), signs)
    )


def tau_on_lattice(sigma: SlotPermutation, lat: Lattice) -> LatticeAutomorphism:
    """The induced permutation of element indices."""
    mapping = tuple(
        lat.index_of_triple(tau_sigma(sigma, e).triple) for e in lat.elements
    )
    return LatticeAutomorphism(mapping)


def _refined_classes(a: AbstractLattice) -> list[int]:
    """Order-invariant colouring, iterated to a fixed point.

    Starts from height, depth and degree data, then folds in the colour
    multisets of covers above and below.  Automorphic elements always share
    a colour, so colours partition the search space soundly.
    """
    sig: list = [
        (
            a.heights[i],
            a.depths[i],
            bin(a.down[i]).count("1"),
            bin(a.up[i]).count("1"),
            len(a.down_covers[i]),
            len(a.up_covers[i]),
        )
        for i in range(a.n)
    ]
    ids = _canonical_ids(sig)
    while True:
        refined = [
            (
                ids[i],
                tuple(sorted(ids[j] for j in a.down_covers[i])),
                tuple(sorted(ids[j] for j in a.up_covers[i])),
            )
            for i in range(a.n)
        ]
        new_ids = _canonical_ids(refined)
        if len(set(new_ids)) == len(set(ids)):
            return new_ids
        ids = new_ids


def _canonical_ids(keys: list) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def brute_force_automorphisms(
    lattice: "Lattice | AbstractLattice", max_size: int = DEFAULT_MAX_LATTICE
) -> list[LatticeAutomorphism]:
    """Every order automorphism, found by backtracking over the bare poset.

    The search never looks at triples, profiles or subgroup sets; candidates
    are restricted by the invariant colouring and partial maps are checked
    against all previously assigned pairs in both directions.  Output is
    sorted by mapping, so the identity comes first.
    """
    a = lattice.to_abstract() if isinstance(lattice, Lattice) else lattice
    n = a.n
    if n > max_size:
        raise TooLarge(f"{n} elements exceeds the search bound {max_size}")
    if n == 0:
        return [LatticeAutomorphism(())]
    colours = _refined_classes(a)
    buckets: dict[int, list[int]] = {}
    for i, c in enumerate(colours):
        buckets.setdefault(c, []).append(i)
    candidates = [buckets[colours[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: (len(candidates[i]), colours[i], i))
    down = a.down

    mapping = [-1] * n
    used = [False] * n
    next_choice = [0] * (n + 1)
    found: list[tuple[int, ...]] = []
    t = 0
    while t >= 0:
        if t == n:
            found.append(tuple(mapping))
            t -= 1
            x = order[t]
            used[mapping[x]] = False
            mapping[x] = -1
            continue
        x = order[t]
        cand = candidates[x]
        advanced = False
        while next_choice[t] < len(cand):
            y = cand[next_choice[t]]
            next_choice[t] += 1
            if used[y]:
                continue
            ok = True
            for x2 in order[:t]:
                y2 = mapping[x2]
                if ((down[x2] >> x) & 1) != ((down[y2] >> y) & 1) or (
                    (down[x] >> x2) & 1
                ) != ((down[y] >> y2) & 1):
                    ok = False
                    break
            if ok:
                mapping[x] = y
                used[y] = True
                t += 1
                next_choice[t] = 0
                advanced = True
                break
        if not advanced:
            t -= 1
            if t < 0:
                break
            x = order[t]
            used[mapping[x]] = False
            mapping[x] = -1
    return [LatticeAutomorphism(m) for m in sorted(found)]


def induced_permutation(phi: LatticeAutomorphism, lat: Lattice) -> SlotPermutation:
    """Read the slot permutation off an automorphism via the factor atoms."""
    atoms = factor_atoms(lat)
    slot_of_atom = {atom: s for s, atom in enumerate(atoms)}
    mapping = [0] * lat.spec.num_slots
    for s, atom in enumerate(atoms):
        image = phi(atom)
        if image not in slot_of_atom:
            raise ClassViolation(f"automorphism sends factor atom {atom} to non-atom {image}")
        mapping[s] = slot_of_atom[image]
    sigma = SlotPermutation(tuple(mapping))
    _check_class_preserving(lat.spec, sigma)
    return sigma


@dataclass(frozen=True)
class ProductFormulaReport:
    """Outcome of checking LatAut(G) against the slot-permutation model."""

    spec: str
    a4: int
    b: int
    predicted_order: int
    brute_force_order: int
    constructive_order: int
    match: bool
    generators: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec,
            "a4": self.a4,
            "b": self.b,
            "predicted_order": self.predicted_order,
            "brute_force_order": self.brute_force_order,
            "constructive_order": self.constructive_order,
            "match": self.match,
            "generators": list(self.generators),
        }


def _class_permutations(spec: TowerGroupSpec):
    a_slots = spec.a_slots()
    b_slots = spec.b_slots()
    n = spec.num_slots
    for pa in permutations(a_slots):
        for pb in permutations(b_slots):
            mapping = [0] * n
            for src, dst in zip(a_slots, pa):
                mapping[src] = dst
            for src, dst in zip(b_slots, pb):
                mapping[src] = dst
            yield SlotPermutation(tuple(mapping))


def _adjacent_transpositions(spec: TowerGroupSpec) -> list[SlotPermutation]:
    gens = []
    for slots in (spec.a_slots(), spec.b_slots()):
        for s, t in zip(slots, slots[1:]):
            mapping = list(range(spec.num_slots))
            mapping[s], mapping[t] = t, s
            gens.append(SlotPermutation(tuple(mapping)))
    return gens


def verify_product_formula(
    spec: TowerGroupSpec,
    max_slots: int = 8,
    max_size: int = DEFAULT_MAX_LATTICE,
    lattice: Lattice | None = None,
) -> ProductFormulaReport:
    """Check that LatAut(N(G)) is exactly the class-preserving slot group.

    Three independent counts must agree: a4! * b!, the brute-force search,
    and the distinct relabelling maps tau.  Additionally every tau must land
    in the brute-force set and induce its own slot permutation back.
    """
    lat = lattice if lattice is not None else enumerate_lattice(spec, max_slots)
    autos = brute_force_automorphisms(lat, max_size)
    brute_set = {a.mapping for a in autos}
    predicted = factorial(spec.a4) * factorial(spec.b)

    taus: dict[tuple[int, ...], SlotPermutation] = {}
    round_trip_ok = True
    for sigma in _class_permutations(spec):
        phi = tau_on_lattice(sigma, lat)
        taus[phi.mapping] = sigma
        if induced_permutation(phi, lat).mapping != sigma.mapping:
            round_trip_ok = False
    constructive = len(taus)

    match = (
        len(autos) == predicted
        and constructive == predicted
        and set(taus) == brute_set
        and round_trip_ok
    )
    labels = tuple(s.label for s in spec.slots)
    generators = tuple(g.cycle_notation(labels) for g in _adjacent_transpositions(spec))
    return ProductFormulaReport(
        spec=format_spec(spec),
        a4=spec.a4,
        b=spec.b,
        predicted_order=predicted,
        brute_force_order=len(autos),
        constructive_order=constructive,
        match=match,
        generators=generators,
    )
