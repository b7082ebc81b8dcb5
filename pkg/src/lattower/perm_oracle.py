"""Independent oracle: normal subgroups recomputed from raw permutations.

Everything here works with explicit group elements and set operations, never
with triples or profiles, so it can referee the enumeration.  A ConcreteGroup
is a product of symmetric factors (degree 2 is allowed here, unlike in tower
specs, so the small groups C2, C2^2 and C2 x Sm are covered too); elements
are ranked mixed-radix into global ids and multiplied through per-factor
lookup tables.  Normal subgroups come out of normal closures of conjugacy
classes closed under pairwise joins, which reaches every normal subgroup
because each one is the join of the closures of its elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as iter_permutations
from math import factorial
from typing import Iterable, Sequence

from .errors import LatTowerError, NotTowerGroup, OracleMismatch, TooLarge
from .gf2 import span
from .group_spec import ChainPosition, TowerGroupSpec, format_spec, make_spec
from .lattice_core import (
    AbstractLattice,
    Lattice,
    Profile,
    enumerate_lattice,
)

__all__ = [
    "DEFAULT_MAX_ORDER",
    "Perm",
    "ConcreteGroup",
    "ConcreteSubgroup",
    "concrete_group",
    "normal_closure",
    "subgroup_join",
    "is_normal",
    "all_normal_subgroups",
    "normal_subgroup_poset",
    "block_projection",
    "block_intersection",
    "extract_profile",
    "OracleReport",
    "differential_validate",
    "lemma_lattices",
    "LEMMA_GROUP_DEGREES",
]

DEFAULT_MAX_ORDER = 5000


@dataclass(frozen=True)
class Perm:
    """A permutation of {0..d-1} given by its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise LatTowerError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        """self after other."""
        return Perm(tuple(self.images[other.images[x]] for x in range(len(self.images))))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm(tuple(inv))

    @property
    def sign(self) -> int:
        """+1 for even, -1 for odd, by cycle parity."""
        seen = [False] * len(self.images)
        transpositions = 0
        for x in range(len(self.images)):
            if seen[x]:
                continue
            length = 0
            y = x
            while not seen[y]:
                seen[y] = True
                y = self.images[y]
                length += 1
            transpositions += length - 1
        return -1 if transpositions % 2 else 1


class _FactorTable:
    """Dense multiplication data for one symmetric factor."""

    def __init__(self, degree: int):
        self.degree = degree
        self.perms = tuple(iter_permutations(range(degree)))
        index = {p: i for i, p in enumerate(self.perms)}
        self.index = index
        n = len(self.perms)
        self.mul = [
            [index[tuple(p[q[x]] for x in range(degree))] for q in self.perms]
            for p in self.perms
        ]
        self.inv = [0] * n
        for i, p in enumerate(self.perms):
            invp = [0] * degree
            for x, y in enumerate(p):
                invp[y] = x
            self.inv[i] = index[tuple(invp)]
        self.sign_bit = [0 if Perm(p).sign == 1 else 1 for p in self.perms]

    def position_ids(self, pos: ChainPosition) -> frozenset[int]:
        """Element ids of one chain subgroup; V only exists at degree 4."""
        if pos is ChainPosition.TRIV:
            return frozenset({self.index[tuple(range(self.degree))]})
        if pos is ChainPosition.V:
            if self.degree != 4:
                raise LatTowerError("V position outside degree 4")
            vperms = [(0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0)]
            return frozenset(self.index[p] for p in vperms)
        if pos is ChainPosition.ALT:
            return frozenset(i for i, b in enumerate(self.sign_bit) if b == 0)
        return frozenset(range(len(self.perms)))


@lru_cache(maxsize=None)
def _factor_table(degree: int) -> _FactorTable:
    return _FactorTable(degree)


class ConcreteGroup:
    """A product of symmetric factors with global mixed-radix element ids.

    Factor j has degree degrees[j]; the id of an element is the ranking of
    its per-factor permutation indices, most significant factor first.  The
    identity always gets id 0.
    """

    def __init__(self, degrees: Sequence[int], max_order: int = DEFAULT_MAX_ORDER):
        if not all(d >= 2 for d in degrees):
            raise LatTowerError(f"factor degrees must be at least 2, got {degrees}")
        self.degrees = tuple(degrees)
        order = 1
        for d in self.degrees:
            order *= factorial(d)
        if order > max_order:
            raise TooLarge(f"group order {order} exceeds the oracle bound {max_order}")
        self.order = order
        self.tables = [_factor_table(d) for d in self.degrees]
        sizes = [factorial(d) for d in self.degrees]
        places = []
        acc = 1
        for size in reversed(sizes):
            places.append(acc)
            acc *= size
        self.places = tuple(reversed(places))
        self.components: list[tuple[int, ...]] = []
        for g in range(order):
            rest = g
            comp = []
            for place, size in zip(self.places, sizes):
                comp.append(rest // place)
                rest %= place
            self.components.append(tuple(comp))
        self.inverses = [
            self.from_components(tuple(t.inv[c] for t, c in zip(self.tables, comp)))
            for comp in self.components
        ]
        self._sign_bits: list[int] | None = None

    @property
    def identity(self) -> int:
        return 0

    def from_components(self, comp: Sequence[int]) -> int:
        return sum(c * p for c, p in zip(comp, self.places))

    def product(self, a: int, b: int) -> int:
        ca, cb = self.components[a], self.components[b]
        return self.from_components(
            tuple(t.mul[x][y] for t, x, y in zip(self.tables, ca, cb))
        )

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def conjugate(self, a: int, by: int) -> int:
        return self.product(self.product(by, a), self.inverses[by])

    def embed(self, factor: int, perm_index: int) -> int:
        comp = [0] * len(self.degrees)
        comp[factor] = perm_index
        return self.from_components(comp)

    @property
    def generators(self) -> list[int]:
        """A transposition and a full cycle in every factor."""
        gens = []
        for j, (d, table) in enumerate(zip(self.degrees, self.tables)):
            swap = tuple([1, 0] + list(range(2, d)))
            gens.append(self.embed(j, table.index[swap]))
            if d > 2:
                cyc = tuple(list(range(1, d)) + [0])
                gens.append(self.embed(j, table.index[cyc]))
        return gens

    def sign_bits(self, a: int) -> int:
        """Bit j set when the component in factor j is odd."""
        if self._sign_bits is None:
            bits = []
            for comp in self.components:
                v = 0
                for j, (t, c) in enumerate(zip(self.tables, comp)):
                    if t.sign_bit[c]:
                        v |= 1 << j
                bits.append(v)
            self._sign_bits = bits
        return self._sign_bits[a]

    def element_perms(self, a: int) -> tuple[Perm, ...]:
        return tuple(
            Perm(t.perms[c]) for t, c in zip(self.tables, self.components[a])
        )


def concrete_group(spec: TowerGroupSpec, max_order: int = DEFAULT_MAX_ORDER) -> ConcreteGroup:
    """Build the concrete group of a tower spec, factor j = slot j."""
    return ConcreteGroup(spec.degrees, max_order=max_order)


@dataclass(frozen=True)
class ConcreteSubgroup:
    """A subgroup as a sorted tuple of element ids."""

    ids: tuple[int, ...]

    @classmethod
    def from_ids(cls, ids: Iterable[int]) -> "ConcreteSubgroup":
        return cls(tuple(sorted(set(ids))))

    def __len__(self) -> int:
        return len(self.ids)

    def id_set(self) -> frozenset[int]:
        return frozenset(self.ids)


def _generated_subgroup(group: ConcreteGroup, gens: Iterable[int]) -> frozenset[int]:
    seen = {group.identity}
    frontier = [group.identity]
    gens = sorted(set(gens))
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.product(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def _conjugacy_class(group: ConcreteGroup, g: int) -> frozenset[int]:
    seen = {g}
    frontier = [g]
    gens = group.generators
    while frontier:
        x = frontier.pop()
        for h in gens:
            y = group.conjugate(x, h)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def normal_closure(group: ConcreteGroup, g: int) -> ConcreteSubgroup:
    """Smallest normal subgroup containing g: generate its conjugacy class."""
    return ConcreteSubgroup.from_ids(_generated_subgroup(group, _conjugacy_class(group, g)))


def is_normal(group: ConcreteGroup, sub: ConcreteSubgroup) -> bool:
    ids = sub.id_set()
    return all(group.conjugate(x, h) in ids for x in sub.ids for h in group.generators)


def subgroup_join(
    group: ConcreteGroup, a: ConcreteSubgroup, b: ConcreteSubgroup
) -> ConcreteSubgroup:
    """Product set AB, a subgroup because both inputs are normal."""
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    result = set(large.ids)
    large_ids = large.ids
    for r in small.ids:
        if r in result:
            continue
        result.update(group.product(r, m) for m in large_ids)
    return ConcreteSubgroup.from_ids(result)


def all_normal_subgroups(group: ConcreteGroup) -> list[ConcreteSubgroup]:
    """Every normal subgroup: closures of conjugacy classes, then join closure.

    Sorted by (order, ids), so the trivial subgroup is first and the whole
    group last.
    """
    classified: set[int] = set()
    seeds: set[tuple[int, ...]] = {(group.identity,)}
    for g in range(group.order):
        if g in classified:
            continue
        cls = _conjugacy_class(group, g)
        classified.update(cls)
        seeds.add(normal_closure(group, g).ids)
    normals = {ids: ConcreteSubgroup(ids) for ids in seeds}
    work = list(normals.values())
    while work:
        fresh: list[ConcreteSubgroup] = []
        for i, a in enumerate(work):
            for b in list(normals.values()):
                j = subgroup_join(group, a, b)
                if j.ids not in normals:
                    normals[j.ids] = j
                    fresh.append(j)
        work = fresh
    return sorted(normals.values(), key=lambda s: (len(s), s.ids))


def normal_subgroup_poset(
    group: ConcreteGroup, normals: list[ConcreteSubgroup] | None = None
) -> AbstractLattice:
    """The subgroup-inclusion order as a bare lattice."""
    if normals is None:
        normals = all_normal_subgroups(group)
    sets = [n.id_set() for n in normals]
    masks = []
    for j, big in enumerate(sets):
        m = 0
        for i, small in enumerate(sets):
            if small <= big:
                m |= 1 << i
        masks.append(m)
    return AbstractLattice(masks)


def block_projection(
    group: ConcreteGroup, sub: ConcreteSubgroup, factors: Iterable[int]
) -> ConcreteSubgroup:
    """Image under projection onto some factors, embedded back with identity."""
    keep = set(factors)
    out = set()
    for g in sub.ids:
        comp = list(group.components[g])
        for j in range(len(group.degrees)):
            if j not in keep:
                comp[j] = 0
        out.add(group.from_components(comp))
    return ConcreteSubgroup.from_ids(out)


def block_intersection(
    group: ConcreteGroup, sub: ConcreteSubgroup, factors: Iterable[int]
) -> ConcreteSubgroup:
    """Elements of the subgroup supported entirely on the given factors."""
    keep = set(factors)
    out = [
        g
        for g in sub.ids
        if all(c == 0 for j, c in enumerate(group.components[g]) if j not in keep)
    ]
    return ConcreteSubgroup.from_ids(out)


def extract_profile(group: ConcreteGroup, sub: ConcreteSubgroup) -> Profile:
    """Read the profile of a normal subgroup off its raw element set.

    The effective component per slot is the projection, identified among the
    chain subgroups; the sign subspace is spanned by the sign patterns of all
    elements.  Factors of degree 2 have no tower profile, hence NotTowerGroup.
    """
    if any(d < 3 for d in group.degrees):
        raise NotTowerGroup(f"degrees {group.degrees} include a factor below S3")
    if any(a > b for a, b in zip(group.degrees, group.degrees[1:])):
        raise NotTowerGroup(f"degrees {group.degrees} not in canonical slot order")
    spec = _spec_of_degrees(group.degrees)
    eff = []
    for j, table in enumerate(group.tables):
        proj = {group.components[g][j] for g in sub.ids}
        for pos in (ChainPosition.TRIV, ChainPosition.V, ChainPosition.ALT, ChainPosition.FULL):
            if pos is ChainPosition.V and table.degree != 4:
                continue
            if proj == table.position_ids(pos):
                eff.append(pos)
                break
        else:
            raise OracleMismatch(
                f"projection of size {len(proj)} at factor {j} is no chain subgroup"
            )
    signs = span(len(group.degrees), {group.sign_bits(g) for g in sub.ids})
    return Profile(spec, tuple(eff), signs)


@lru_cache(maxsize=None)
def _spec_of_degrees(degrees: tuple[int, ...]) -> TowerGroupSpec:
    exponents: dict[int, int] = {}
    for d in degrees:
        exponents[d] = exponents.get(d, 0) + 1
    return make_spec(exponents)


@dataclass(frozen=True)
class OracleReport:
    """Summary of one differential validation run."""

    spec: str
    group_order: int
    oracle_count: int
    enumerated_count: int
    pairs_checked: int
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "spec": self.spec,
            "group_order": self.group_order,
            "oracle_count": self.oracle_count,
            "enumerated_count": self.enumerated_count,
            "pairs_checked": self.pairs_checked,
            "ok": self.ok,
        }


def differential_validate(
    spec: TowerGroupSpec,
    max_order: int = DEFAULT_MAX_ORDER,
    max_slots: int = 8,
    lattice: Lattice | None = None,
) -> OracleReport:
    """Compare the triple enumeration against the raw permutation computation.

    Checks, in order: the counts agree; profiles give a bijection between the
    two lists; and for every pair, subset testing, set intersection and set
    product agree with leq, meet and join on the enumerated side.  The first
    divergence raises OracleMismatch.
    """
    group = concrete_group(spec, max_order=max_order)
    normals = all_normal_subgroups(group)
    lat = lattice if lattice is not None else enumerate_lattice(spec, max_slots)
    name = format_spec(spec)
    if len(normals) != len(lat):
        raise OracleMismatch(
            f"{name}: oracle found {len(normals)} normal subgroups, enumeration {len(lat)}"
        )

    mapped: list[int] = []
    for n in normals:
        profile = extract_profile(group, n)
        try:
            mapped.append(lat.index_of_profile(profile))
        except KeyError:
            raise OracleMismatch(
                f"{name}: oracle subgroup of order {len(n)} has no enumerated profile"
            ) from None
    if len(set(mapped)) != len(mapped):
        raise OracleMismatch(f"{name}: profile map is not injective")

    by_ids = {n.ids: idx for n, idx in zip(normals, mapped)}
    sets = [n.id_set() for n in normals]
    pairs = 0
    for i, (ni, idx_i) in enumerate(zip(normals, mapped)):
        for j, (nj, idx_j) in enumerate(zip(normals, mapped)):
            if j < i:
                continue
            pairs += 1
            if (sets[i] <= sets[j]) != lat.leq_idx(idx_i, idx_j):
                raise OracleMismatch(f"{name}: leq disagrees on pair ({i}, {j})")
            if (sets[j] <= sets[i]) != lat.leq_idx(idx_j, idx_i):
                raise OracleMismatch(f"{name}: leq disagrees on pair ({j}, {i})")
            meet_ids = tuple(sorted(sets[i] & sets[j]))
            if by_ids.get(meet_ids) != lat.meet_idx(idx_i, idx_j):
                raise OracleMismatch(f"{name}: meet disagrees on pair ({i}, {j})")
            join_ids = subgroup_join(group, ni, nj).ids
            if by_ids.get(join_ids) != lat.join_idx(idx_i, idx_j):
                raise OracleMismatch(f"{name}: join disagrees on pair ({i}, {j})")
    return OracleReport(
        spec=name,
        group_order=group.order,
        oracle_count=len(normals),
        enumerated_count=len(lat),
        pairs_checked=pairs,
        ok=True,
    )


LEMMA_GROUP_DEGREES: dict[str, tuple[int, ...]] = {
    "C2": (2,),
    "C2^2": (2, 2),
    "C2xS3": (2, 3),
    "C2xS4": (2, 4),
    "C2xS5": (2, 5),
}


def lemma_lattices(max_order: int = DEFAULT_MAX_ORDER) -> dict[str, AbstractLattice]:
    """Concrete normal-subgroup lattices of the small groups the tower visits.

    These are the groups where LatAut cannot be read off the slot formula:
    C2 and C2 x Sm have two-point fibres, C2^2 has the diamond with the full
    GL(2,2) symmetry.  Exported as bare posets for the automorphism search.
    """
    out = {}
    for name, degrees in LEMMA_GROUP_DEGREES.items():
        group = ConcreteGroup(degrees, max_order=max_order)
        out[name] = normal_subgroup_poset(group)
    return out
