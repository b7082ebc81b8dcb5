"""The LatAut tower: iterate G -> LatAut(G) until the trivial group.

For a tower group the automorphism group of N(G) is S_a4 x S_B, where a4
counts the degree-4 slots and B the rest.  That group is itself a product of
at most two symmetric groups, possibly of degree below 3, so tower nodes
after the start are plain pairs (a, b) standing for S_a x S_b with S_0 and
S_1 trivial and S_2 = C2.  One more application of LatAut lands in one of six
isomorphism types whose automorphism lattices are known outright, which is
why every tower dies by step three.  The bound is sharp: S4^2 x S3^2 needs
all three steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Union

from .errors import NonTermination, TooLarge
from .group_spec import TowerGroupSpec, format_spec, make_spec
from .lattice_core import AbstractLattice, enumerate_lattice
from .autgroup import brute_force_automorphisms
from .perm_oracle import ConcreteGroup, normal_subgroup_poset

__all__ = [
    "StartNode",
    "PairNode",
    "TowerNode",
    "TowerRun",
    "is_trivial_node",
    "latauto_step",
    "run_tower",
    "format_node",
    "format_run",
    "StepReport",
    "verify_step_against_lattice",
    "DEFAULT_MAX_TOWER_STEPS",
]

DEFAULT_MAX_TOWER_STEPS = 10


@dataclass(frozen=True)
class StartNode:
    """The initial tower group, with its full spec."""

    spec: TowerGroupSpec


@dataclass(frozen=True)
class PairNode:
    """S_a x S_b; the a coordinate descends from degree-4 slots."""

    a: int
    b: int


TowerNode = Union[StartNode, PairNode]


def is_trivial_node(node: TowerNode) -> bool:
    if isinstance(node, StartNode):
        return node.spec.is_trivial
    return node.a <= 1 and node.b <= 1


def latauto_step(node: TowerNode) -> PairNode:
    """One application of LatAut, by isomorphism type of the node.

    A start node maps to (a4, B) by the product formula.  A pair falls into
    one of six types: trivial, C2 and a single S_n all have rigid lattices;
    C2^2 carries the diamond, whose automorphism group is S3; C2 x S_m has
    one mirror symmetry, giving C2 (encoded (0, 2), since this C2 has no
    degree-4 ancestry); and a genuine two-factor tower group goes through the
    product formula again.
    """
    if isinstance(node, StartNode):
        return PairNode(node.spec.a4, node.spec.b)
    lo, hi = sorted((node.a, node.b))
    if lo <= 1:
        # trivial group, C2, or a single S_n: the lattice is a chain
        return PairNode(0, 0)
    if (lo, hi) == (2, 2):
        return PairNode(0, 3)
    if lo == 2:
        return PairNode(0, 2)
    a4 = (1 if node.a == 4 else 0) + (1 if node.b == 4 else 0)
    b = (1 if node.a >= 3 and node.a != 4 else 0) + (1 if node.b >= 3 and node.b != 4 else 0)
    return PairNode(a4, b)


@dataclass(frozen=True)
class TowerRun:
    """A complete tower: nodes[0] is the start, the last node is trivial."""

    nodes: tuple[TowerNode, ...]

    @property
    def steps(self) -> int:
        return len(self.nodes) - 1

    @property
    def sharp(self) -> bool:
        return self.steps == 3


def run_tower(start: TowerNode, max_steps: int = DEFAULT_MAX_TOWER_STEPS) -> TowerRun:
    """Iterate latauto_step until the trivial group, with a defensive cap."""
    nodes: list[TowerNode] = [start]
    while not is_trivial_node(nodes[-1]):
        if len(nodes) > max_steps:
            raise NonTermination(f"tower exceeded {max_steps} steps from {format_node(start)}")
        nodes.append(latauto_step(nodes[-1]))
    return TowerRun(tuple(nodes))


def _factor_name(n: int) -> str:
    return "C2" if n == 2 else f"S{n}"


def format_node(node: TowerNode) -> str:
    if isinstance(node, StartNode):
        return format_spec(node.spec)
    parts = [_factor_name(x) for x in (node.a, node.b) if x >= 2]
    if not parts:
        return "1"
    if len(parts) == 2 and parts[0] == parts[1]:
        return f"{parts[0]}^2"
    return "*".join(parts)


def format_run(run: TowerRun) -> str:
    """One line, e.g. ``G_0 = S4^2*S3^2 → G_1 = C2^2 → G_2 = S3 → G_3 = 1 (3 steps, sharp)``."""
    chain = " → ".join(f"G_{i} = {format_node(node)}" for i, node in enumerate(run.nodes))
    plural = "step" if run.steps == 1 else "steps"
    suffix = f"({run.steps} {plural}, sharp)" if run.sharp else f"({run.steps} {plural})"
    return f"{chain} {suffix}"


@dataclass(frozen=True)
class StepReport:
    """Outcome of checking one step against an actual automorphism count."""

    node: str
    result: str
    predicted_order: int
    observed_order: int | None
    skipped: str | None
    match: bool

    def to_json_dict(self) -> dict:
        return {
            "node": self.node,
            "result": self.result,
            "predicted_order": self.predicted_order,
            "observed_order": self.observed_order,
            "skipped": self.skipped,
            "match": self.match,
        }


def _node_lattice(
    node: TowerNode, max_order: int, max_slots: int
) -> AbstractLattice:
    """The normal-subgroup lattice of the node's group, as a bare poset.

    Tower groups go through the triple enumeration; anything with a C2
    factor goes through the permutation oracle; the trivial group is a
    single point.  TooLarge propagates to the caller.
    """
    if isinstance(node, StartNode):
        return enumerate_lattice(node.spec, max_slots=max_slots).to_abstract()
    degrees = tuple(sorted(x for x in (node.a, node.b) if x >= 2))
    if not degrees:
        return AbstractLattice((1,))
    if degrees[0] == 2:
        return normal_subgroup_poset(ConcreteGroup(degrees, max_order=max_order))
    exponents: dict[int, int] = {}
    for d in degrees:
        exponents[d] = exponents.get(d, 0) + 1
    return enumerate_lattice(make_spec(exponents), max_slots=max_slots).to_abstract()


def verify_step_against_lattice(
    node: TowerNode,
    max_order: int = 5000,
    max_slots: int = 8,
    max_size: int = 2000,
) -> StepReport:
    """Check one latauto_step answer against a brute-force count.

    The step claims LatAut of the node is S_a x S_b of order a! * b!; the
    check recomputes the node's lattice and counts its automorphisms with
    the order-only search.  Nodes beyond the size bounds are reported as
    skipped rather than guessed at.
    """
    result = latauto_step(node)
    predicted = factorial(result.a) * factorial(result.b)
    try:
        abstract = _node_lattice(node, max_order=max_order, max_slots=max_slots)
        observed = len(brute_force_automorphisms(abstract, max_size=max_size))
    except TooLarge as exc:
        return StepReport(
            node=format_node(node),
            result=format_node(result),
            predicted_order=predicted,
            observed_order=None,
            skipped=str(exc),
            match=True,
        )
    return StepReport(
        node=format_node(node),
        result=format_node(result),
        predicted_order=predicted,
        observed_order=observed,
        skipped=None,
        match=observed == predicted,
    )
