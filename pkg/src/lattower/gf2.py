"""GF(2) linear algebra on int bitsets.

Sign patterns of a tower group live in {+1,-1}^T; additively a pattern is an
int whose bit i is 1 exactly when slot i carries an odd permutation.  A
Subspace stores its reduced row echelon basis (pivot = lowest set bit, pivots
strictly increasing, each pivot appearing in its own row only), which is a
canonical form: two subspaces are equal iff their bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .errors import BadCoordinate, WidthMismatch

__all__ = [
    "SignVector",
    "Subspace",
    "span",
    "zero_subspace",
    "full_subspace",
    "unit_span",
    "parity_kernel",
    "iter_subspaces",
]


def _pivot(row: int) -> int:
    return (row & -row).bit_length() - 1


def _reduce(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon basis of the span, rows sorted by pivot."""
    rows: list[int] = []
    for v in vectors:
        for r in rows:
            if v & (r & -r):
                v ^= r
        if v:
            p = v & -v
            rows = [r ^ v if r & p else r for r in rows]
            rows.append(v)
    rows.sort(key=_pivot)
    return tuple(rows)


@dataclass(frozen=True)
class SignVector:
    """A sign pattern: bit i set means slot i is odd."""

    width: int
    bits: int

    def __post_init__(self):
        if self.width < 0 or not 0 <= self.bits < (1 << self.width):
            raise WidthMismatch(f"bits {self.bits:#x} do not fit width {self.width}")

    @classmethod
    def from_string(cls, text: str) -> "SignVector":
        if set(text) - {"0", "1"}:
            raise WidthMismatch(f"bitstring must be over 0/1, got {text!r}")
        bits = 0
        for i, c in enumerate(text):
            if c == "1":
                bits |= 1 << i
        return cls(len(text), bits)

    def to_string(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.width))

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> "SignVector":
        signs = tuple(signs)
        bits = 0
        for i, s in enumerate(signs):
            if s == -1:
                bits |= 1 << i
            elif s != 1:
                raise WidthMismatch(f"signs must be +1/-1, got {s}")
        return cls(len(signs), bits)

    def to_signs(self) -> tuple[int, ...]:
        return tuple(-1 if (self.bits >> i) & 1 else 1 for i in range(self.width))


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(2)^width in canonical reduced echelon form."""

    width: int
    basis: tuple[int, ...]

    def __post_init__(self):
        last_pivot = -1
        mask = (1 << self.width) - 1
        for row in self.basis:
            if row == 0 or row & ~mask:
                raise WidthMismatch(f"row {row:#x} outside width {self.width}")
            p = _pivot(row)
            if p <= last_pivot:
                raise WidthMismatch("basis rows not in echelon order")
            last_pivot = p
        for row in self.basis:
            for other in self.basis:
                if other is not row and other & (row & -row):
                    raise WidthMismatch("basis not fully reduced")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << len(self.basis)

    def active_mask(self) -> int:
        """Coordinates where some vector of the subspace is odd."""
        m = 0
        for row in self.basis:
            m |= row
        return m

    def contains(self, v: "SignVector | int") -> bool:
        if isinstance(v, SignVector):
            if v.width != self.width:
                raise WidthMismatch(f"vector width {v.width} vs subspace width {self.width}")
            v = v.bits
        for r in self.basis:
            if v & (r & -r):
                v ^= r
        return v == 0

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.width != self.width:
            raise WidthMismatch(f"widths {other.width} and {self.width} differ")
        return all(self.contains(r) for r in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        if other.width != self.width:
            raise WidthMismatch(f"widths {self.width} and {other.width} differ")
        return Subspace(self.width, _reduce(self.basis + other.basis))

    def annihilator(self) -> "Subspace":
        """All functionals vanishing on the subspace, as bit vectors."""
        pivots = [_pivot(r) for r in self.basis]
        pivot_set = set(pivots)
        out = []
        for q in range(self.width):
            if q in pivot_set:
                continue
            v = 1 << q
            for p, r in zip(pivots, self.basis):
                if (r >> q) & 1:
                    v |= 1 << p
            out.append(v)
        return Subspace(self.width, _reduce(out))

    def intersect(self, other: "Subspace") -> "Subspace":
        # computed through duals: (U + W)^perp = U^perp with W^perp summed
        if other.width != self.width:
            raise WidthMismatch(f"widths {self.width} and {other.width} differ")
        return self.annihilator().sum(other.annihilator()).annihilator()

    def project(self, coords: tuple[int, ...]) -> "Subspace":
        """Restrict to the listed coordinates (strictly increasing)."""
        for a, b in zip(coords, coords[1:]):
            if b <= a:
                raise BadCoordinate(f"coordinates not strictly increasing: {coords}")
        for c in coords:
            if not 0 <= c < self.width:
                raise BadCoordinate(f"coordinate {c} outside width {self.width}")
        vectors = []
        for row in self.basis:
            v = 0
            for j, c in enumerate(coords):
                if (row >> c) & 1:
                    v |= 1 << j
            vectors.append(v)
        return Subspace(len(coords), _reduce(vectors))

    def elements(self) -> tuple[int, ...]:
        return _elements_of(self)

    def to_strings(self) -> tuple[str, ...]:
        return tuple(SignVector(self.width, r).to_string() for r in self.basis)


@lru_cache(maxsize=None)
def _elements_of(s: Subspace) -> tuple[int, ...]:
    out = []
    for mask in range(1 << s.dim):
        v = 0
        for i in range(s.dim):
            if (mask >> i) & 1:
                v ^= s.basis[i]
        out.append(v)
    return tuple(out)


def span(width: int, vectors: Iterable[SignVector | int]) -> Subspace:
    raw = []
    for v in vectors:
        if isinstance(v, SignVector):
            if v.width != width:
                raise WidthMismatch(f"vector width {v.width} vs {width}")
            raw.append(v.bits)
        else:
            if not 0 <= v < (1 << width):
                raise WidthMismatch(f"value {v:#x} outside width {width}")
            raw.append(v)
    return Subspace(width, _reduce(raw))


def zero_subspace(width: int) -> Subspace:
    return Subspace(width, ())


def full_subspace(width: int) -> Subspace:
    return Subspace(width, tuple(1 << i for i in range(width)))


def unit_span(width: int, mask: int) -> Subspace:
    """Span of the unit vectors at the set bits of mask."""
    if not 0 <= mask < (1 << width):
        raise WidthMismatch(f"mask {mask:#x} outside width {width}")
    return Subspace(width, tuple(1 << i for i in range(width) if (mask >> i) & 1))


def parity_kernel(width: int) -> Subspace:
    """Patterns with an even number of odd slots; the product-one subgroup."""
    return span(width, [(1 << i) | (1 << (i + 1)) for i in range(width - 1)])


def iter_subspaces(width: int) -> Iterator[Subspace]:
    """All subspaces of GF(2)^width, in a fixed deterministic order.

    Enumerates echelon bases directly: choose the pivot set, then every
    assignment of the free entries above the staircase.
    """
    yield zero_subspace(width)
    for d in range(1, width + 1):
        for pivots in combinations(range(width), d):
            pivot_set = set(pivots)
            free = [
                (i, q)
                for i, p in enumerate(pivots)
                for q in range(p + 1, width)
                if q not in pivot_set
            ]
            for assignment in range(1 << len(free)):
                rows = [1 << p for p in pivots]
                for t, (i, q) in enumerate(free):
                    if (assignment >> t) & 1:
                        rows[i] |= 1 << q
                yield Subspace(width, tuple(rows))
