"""Brute-force reference solvers and the two source-problem formats.

These are the trusted baselines the faster solvers are tested against:

* maximum harmless set by branch and bound over vertex subsets,
* minimum maximum outdegree orientation feasibility (MMO),
* multidimensional relay station subset feasibility (MRSS).

Each one is exhaustive up to an explicit work limit and raises instead
of guessing when the limit is hit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import FormatError, Graph, Instance, SolveResult

DEFAULT_NODE_BUDGET = 2_000_000
DEFAULT_EDGE_LIMIT = 20
DEFAULT_VECTOR_LIMIT = 20


class OracleLimitError(RuntimeError):
    """The search exceeded its work budget before finishing."""


@dataclass(frozen=True)
class WeightedGraph:
    """Graph with positive integer edge weights and an outdegree bound r."""

    graph: Graph
    weights: dict
    r: int

    def __post_init__(self):
        canon = {}
        for (u, v), w in self.weights.items():
            e = (u, v) if u < v else (v, u)
            if e not in set(self.graph.edges):
                raise ValueError(f"weight given for missing edge ({u},{v})")
            if w < 1:
                raise ValueError(f"edge ({u},{v}): weight {w} < 1")
            canon[e] = w
        for e in self.graph.edges:
            if e not in canon:
                raise ValueError(f"edge ({e[0]},{e[1]}) has no weight")
        object.__setattr__(self, "weights", canon)
        if self.r < 0:
            raise ValueError("outdegree bound r must be non-negative")

    def weighted_degree(self, v: int) -> int:
        return sum(w for (a, b), w in self.weights.items() if v in (a, b))


@dataclass(frozen=True)
class MrssInstance:
    """Vectors over k coordinates, a demand vector t, and a budget k'."""

    k: int
    vectors: tuple[tuple[int, ...], ...]
    target: tuple[int, ...]
    budget: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("dimension k must be at least 1")
        if len(self.target) != self.k:
            raise ValueError("target length does not match dimension")
        for s in self.vectors:
            if len(s) != self.k:
                raise ValueError("vector length does not match dimension")
            if any(x < 0 for x in s):
                raise ValueError("vector entries must be non-negative")
        if self.budget < 0:
            raise ValueError("budget k' must be non-negative")


def max_harmless_bruteforce(
    instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET
) -> SolveResult:
    """Maximum harmless set size plus its lexicographically least witness.

    Phase one finds the maximum size h by branch and bound: vertices are
    decided in descending id order, a branch dies as soon as some vertex
    already has t(v) chosen neighbours (any superset stays violated), or
    when even taking every undecided vertex cannot beat the incumbent.
    Phase two rebuilds the lexicographically least witness of size h by
    greedily fixing vertices in ascending order and re-running the
    bounded feasibility search for each prefix.
    """
    graph = instance.graph
    n = graph.n
    masks = graph.masks
    thresholds = instance.thresholds
    counter = [0]

    def charge():
        counter[0] += 1
        if counter[0] > node_budget:
            raise OracleLimitError(
                f"oracle limit: more than {node_budget} search nodes"
            )

    best = [0]

    def search_max(v: int, size: int, residual: list[int]):
        # v counts down from n to 1; vertices above v are decided, and
        # the decided-in set is itself harmless (all residuals >= 1).
        charge()
        if size > best[0]:
            best[0] = size
        if v == 0 or size + v <= best[0]:
            return
        i = v - 1
        nm = masks[i]
        # include v unless some neighbour is already saturated
        can_take = True
        j = nm
        while j:
            low = j & -j
            if residual[low.bit_length() - 1] <= 1:
                can_take = False
                break
            j ^= low
        if can_take:
            j = nm
            while j:
                low = j & -j
                residual[low.bit_length() - 1] -= 1
                j ^= low
            search_max(v - 1, size + 1, residual)
            j = nm
            while j:
                low = j & -j
                residual[low.bit_length() - 1] += 1
                j ^= low
        search_max(v - 1, size, residual)

    search_max(n, 0, list(thresholds))
    h = best[0]
    stats = {"budget": node_budget}
    if h == 0:
        stats["nodes"] = counter[0]
        return SolveResult(0, (), "brute", stats)

    def completable(v: int, stop: int, size: int, residual: list[int]) -> bool:
        # True iff the fixed choices (encoded in residual/size) extend
        # to a harmless set of size exactly h using ids in stop+1..v.
        charge()
        if size == h:
            return True
        if v == stop or size + (v - stop) < h:
            return False
        i = v - 1
        nm = masks[i]
        can_take = True
        j = nm
        while j:
            low = j & -j
            if residual[low.bit_length() - 1] <= 1:
                can_take = False
                break
            j ^= low
        if can_take:
            j = nm
            while j:
                low = j & -j
                residual[low.bit_length() - 1] -= 1
                j ^= low
            ok = completable(v - 1, stop, size + 1, residual)
            j = nm
            while j:
                low = j & -j
                residual[low.bit_length() - 1] += 1
                j ^= low
            if ok:
                return True
        return completable(v - 1, stop, size, residual)

    # Greedy lexicographic reconstruction: walk ids upward, keep a
    # candidate only when the prefix still completes to size h among the
    # strictly larger ids.  Phase one guarantees the loop finishes.
    chosen: list[int] = []
    residual = list(thresholds)
    for cur in range(1, n + 1):
        if len(chosen) == h:
            break
        nm = masks[cur - 1]
        ok = True
        j = nm
        while j:
            low = j & -j
            if residual[low.bit_length() - 1] <= 1:
                ok = False
                break
            j ^= low
        if not ok:
            continue
        j = nm
        while j:
            low = j & -j
            residual[low.bit_length() - 1] -= 1
            j ^= low
        if completable(n, cur, len(chosen) + 1, residual):
            chosen.append(cur)
        else:
            j = nm
            while j:
                low = j & -j
                residual[low.bit_length() - 1] += 1
                j ^= low
    if len(chosen) != h:
        raise RuntimeError("witness reconstruction lost the optimum")
    stats["nodes"] = counter[0]
    return SolveResult(h, tuple(chosen), "brute", stats)


def mmo_feasible_bruteforce(
    wg: WeightedGraph, edge_limit: int = DEFAULT_EDGE_LIMIT
) -> tuple[bool, tuple[tuple[int, int], ...] | None]:
    """Is there an orientation with weighted outdegree <= r everywhere?

    Tries all 2^m orientations depth-first (edge list in sorted order,
    u->v branch first), pruning as soon as a tail exceeds r.  Returns
    the first feasible orientation as a tuple of directed pairs.
    """
    edges = wg.graph.edges
    if len(edges) > edge_limit:
        raise OracleLimitError(
            f"oracle limit: {len(edges)} edges exceeds cap {edge_limit}"
        )
    out = [0] * (wg.graph.n + 1)
    oriented: list[tuple[int, int]] = []

    def branch(idx: int) -> bool:
        if idx == len(edges):
            return True
        u, v = edges[idx]
        w = wg.weights[(u, v)]
        for tail, head in ((u, v), (v, u)):
            if out[tail] + w <= wg.r:
                out[tail] += w
                oriented.append((tail, head))
                if branch(idx + 1):
                    return True
                oriented.pop()
                out[tail] -= w
        return False

    if branch(0):
        return True, tuple(oriented)
    return False, None


def mrss_feasible_bruteforce(
    mi: MrssInstance, vector_limit: int = DEFAULT_VECTOR_LIMIT
) -> tuple[bool, tuple[int, ...] | None]:
    """Is there a subset of at most k' vectors with componentwise sum >= t?

    Enumerates subsets by increasing size, each size in lexicographic
    index order, and returns the first hit as a tuple of 1-based vector
    indices.
    """
    from itertools import combinations

    if len(mi.vectors) > vector_limit:
        raise OracleLimitError(
            f"oracle limit: {len(mi.vectors)} vectors exceeds cap {vector_limit}"
        )
    indices = range(1, len(mi.vectors) + 1)
    for size in range(min(mi.budget, len(mi.vectors)) + 1):
        for combo in combinations(indices, size):
            sums = [0] * mi.k
            for idx in combo:
                vec = mi.vectors[idx - 1]
                for c in range(mi.k):
                    sums[c] += vec[c]
            if all(sums[c] >= mi.target[c] for c in range(mi.k)):
                return True, combo
    return False, None


def parse_mmo(text: str) -> WeightedGraph:
    """Parse `p mmo <n> <m> <r>` plus `e <u> <v> <w>` lines."""
    header = None
    edges: list[tuple[int, int]] = []
    weights: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 5 or fields[0] != "p" or fields[1] != "mmo":
                raise FormatError(f"line {lineno}: expected `p mmo <n> <m> <r>`")
            try:
                header = tuple(int(x) for x in fields[2:])
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer header") from None
            continue
        if fields[0] != "e" or len(fields) != 4:
            raise FormatError(f"line {lineno}: expected `e <u> <v> <w>`")
        try:
            u, v, w = (int(x) for x in fields[1:])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer edge line") from None
        e = (u, v) if u < v else (v, u)
        if e in weights:
            raise FormatError(f"line {lineno}: duplicate edge ({e[0]},{e[1]})")
        edges.append(e)
        weights[e] = w
    if header is None:
        raise FormatError("missing `p mmo <n> <m> <r>` header")
    n, m, r = header
    if len(edges) != m:
        raise FormatError(f"expected {m} edge lines, found {len(edges)}")
    try:
        return WeightedGraph(Graph(n, edges), weights, r)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def parse_mrss(text: str) -> MrssInstance:
    """Parse `p mrss <k> <n> <k'>`, one `t` line, and n `s` lines."""
    header = None
    target = None
    vectors: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 5 or fields[0] != "p" or fields[1] != "mrss":
                raise FormatError(f"line {lineno}: expected `p mrss <k> <n> <k'>`")
            try:
                header = tuple(int(x) for x in fields[2:])
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer header") from None
            continue
        if fields[0] == "t":
            if target is not None:
                raise FormatError(f"line {lineno}: duplicate target line")
            try:
                target = tuple(int(x) for x in fields[1:])
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer target line") from None
        elif fields[0] == "s":
            try:
                vectors.append(tuple(int(x) for x in fields[1:]))
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer vector line") from None
        else:
            raise FormatError(f"line {lineno}: unknown line type {fields[0]!r}")
    if header is None:
        raise FormatError("missing `p mrss <k> <n> <k'>` header")
    k, n, budget = header
    if target is None:
        raise FormatError("missing `t` target line")
    if len(target) != k:
        raise FormatError(f"target has {len(target)} entries, expected {k}")
    if len(vectors) != n:
        raise FormatError(f"expected {n} vector lines, found {len(vectors)}")
    for i, vec in enumerate(vectors, start=1):
        if len(vec) != k:
            raise FormatError(f"vector {i} has {len(vec)} entries, expected {k}")
    try:
        return MrssInstance(k, tuple(vectors), target, budget)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_mmo(wg: WeightedGraph) -> str:
    lines = [f"p mmo {wg.graph.n} {len(wg.graph.edges)} {wg.r}"]
    for u, v in wg.graph.edges:
        lines.append(f"e {u} {v} {wg.weights[(u, v)]}")
    return "\n".join(lines) + "\n"


def serialize_mrss(mi: MrssInstance) -> str:
    lines = [f"p mrss {mi.k} {len(mi.vectors)} {mi.budget}"]
    lines.append("t " + " ".join(str(x) for x in mi.target))
    for vec in mi.vectors:
        lines.append("s " + " ".join(str(x) for x in vec))
    return "\n".join(lines) + "\n"
