"""Exact solver parameterized by neighbourhood diversity.

Vertices u, v are twins when N(u) \\ {v} = N(v) \\ {u}; that relation is
an equivalence, and each class is either a clique (adjacent true twins)
or an independent set (false twins).  With w classes the solver tries,
for every clique class, whether the solution takes fewer than alpha(C)
of its cheapest-threshold vertices or at least that many, and solves one
small integer program per guess, so the work is 2^(#clique classes)
times a w-variable program instead of 2^n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Graph, Instance, ReconstructionError, SolveResult, is_harmless
from .ilp import IlpConstraint, IlpModel, IlpVariable, maximize


@dataclass(frozen=True)
class TypePartition:
    """Twin classes, their kind, and adjacency between classes.

    classes[i] lists members ascending; kinds[i] is "clique" or
    "independent" (singletons count as independent); type_neighbors[i]
    holds the indices of adjacent classes.
    """

    classes: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]
    type_neighbors: tuple[tuple[int, ...], ...]

    @property
    def width(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class NdGuess:
    """Clique classes guessed to hold at least alpha(C) solution vertices."""

    saturating: frozenset


def are_twins(graph: Graph, u: int, v: int) -> bool:
    """N(u) \\ {v} equals N(v) \\ {u}."""
    mu = graph.masks[u - 1] & ~(1 << (v - 1))
    mv = graph.masks[v - 1] & ~(1 << (u - 1))
    return mu == mv


def nd_partition(graph: Graph) -> TypePartition:
    """Group vertices into twin classes and build the type graph.

    Transitivity lets each vertex be tested against one representative
    per class; classes are ordered by smallest member.
    """
    classes: list[list[int]] = []
    for v in graph.vertices():
        for cls in classes:
            if are_twins(graph, cls[0], v):
                cls.append(v)
                break
        else:
            classes.append([v])
    kinds = []
    for cls in classes:
        if len(cls) >= 2 and graph.has_edge(cls[0], cls[1]):
            kinds.append("clique")
        else:
            kinds.append("independent")
    nbrs = []
    for i, ci in enumerate(classes):
        row = [
            j
            for j, cj in enumerate(classes)
            if j != i and graph.has_edge(ci[0], cj[0])
        ]
        nbrs.append(tuple(row))
    return TypePartition(
        tuple(tuple(c) for c in classes), tuple(kinds), tuple(nbrs)
    )


def class_threshold_stats(instance: Instance, members: tuple[int, ...]) -> tuple[int, int]:
    """(t(C), alpha(C)): smallest member threshold and how many attain it."""
    t = min(instance.threshold(v) for v in members)
    alpha = sum(1 for v in members if instance.threshold(v) == t)
    return t, alpha


def build_nd_ilp(
    instance: Instance, partition: TypePartition, guess: NdGuess
) -> IlpModel:
    """One variable per class (how many members enter S), constraints per
    class on the neighbours its members see, plus bounds tying each
    clique class to its guessed side.
    """
    for i in guess.saturating:
        if partition.kinds[i] != "clique":
            raise ValueError(f"class {i} in guess is not a clique class")
    w = partition.width
    variables = tuple(
        IlpVariable(f"x{i}", 0, len(partition.classes[i])) for i in range(w)
    )
    constraints: list[IlpConstraint] = []
    for i in range(w):
        t, alpha = class_threshold_stats(instance, partition.classes[i])
        coeffs = [0] * w
        for j in partition.type_neighbors[i]:
            coeffs[j] = 1
        if partition.kinds[i] == "clique":
            coeffs[i] = 1
            if i in guess.saturating:
                # members of S see x_i - 1 inside the class
                constraints.append(IlpConstraint(tuple(coeffs), t))
                bound = [0] * w
                bound[i] = -1
                constraints.append(IlpConstraint(tuple(bound), -alpha))
            else:
                constraints.append(IlpConstraint(tuple(coeffs), t - 1))
                bound = [0] * w
                bound[i] = 1
                constraints.append(IlpConstraint(tuple(bound), alpha - 1))
        else:
            constraints.append(IlpConstraint(tuple(coeffs), t - 1))
    return IlpModel(variables, tuple(constraints), tuple([1] * w))


def _select_members(
    instance: Instance, partition: TypePartition, counts: tuple[int, ...]
) -> tuple[int, ...]:
    chosen: list[int] = []
    for i, take in enumerate(counts):
        members = partition.classes[i]
        if partition.kinds[i] == "clique":
            order = sorted(members, key=lambda v: (instance.threshold(v), v))
        else:
            order = sorted(members)
        chosen.extend(order[:take])
    return tuple(sorted(chosen))


def solve_nd(instance: Instance) -> SolveResult:
    """Maximum harmless set via the type-graph integer programs."""
    partition = nd_partition(instance.graph)
    clique_classes = [
        i for i in range(partition.width) if partition.kinds[i] == "clique"
    ]
    stats: dict = {"classes": partition.width, "guesses": 0}
    best: tuple[int, tuple[int, ...], NdGuess] | None = None
    for bits in range(1 << len(clique_classes)):
        guess = NdGuess(
            frozenset(
                clique_classes[j]
                for j in range(len(clique_classes))
                if bits >> j & 1
            )
        )
        stats["guesses"] += 1
        solution = maximize(build_nd_ilp(instance, partition, guess), stats)
        if solution is None:
            continue
        if best is None or solution.value > best[0]:
            best = (solution.value, solution.assignment, guess)
    if best is None:
        raise ReconstructionError("no feasible guess; the empty set was lost")
    witness = _select_members(instance, partition, best[1])
    if len(witness) != best[0] or not is_harmless(instance, witness):
        raise ReconstructionError(
            f"nd witness {witness} fails verification for size {best[0]}"
        )
    return SolveResult(best[0], witness, "nd", stats)
