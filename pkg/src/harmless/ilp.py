"""Small exact integer linear program solver.

Models are maximisation problems over bounded integer variables with
`sum(a_i * x_i) <= b` constraints.  The solver is a depth-first search
over variable assignments with interval propagation; it is built for the
tiny models the structural solvers emit (a handful of variables with
single-digit bounds), not for general-purpose optimisation.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class IlpVariable:
    name: str
    lower: int
    upper: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"variable {self.name}: bounds [{self.lower},{self.upper}] empty")


@dataclass(frozen=True)
class IlpConstraint:
    """sum(coeffs[i] * x_i) <= bound, one coefficient per variable."""

    coeffs: tuple[int, ...]
    bound: int


@dataclass(frozen=True)
class IlpSolution:
    assignment: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class IlpModel:
    variables: tuple[IlpVariable, ...]
    constraints: tuple[IlpConstraint, ...]
    objective: tuple[int, ...]

    def __post_init__(self):
        nvars = len(self.variables)
        if len(self.objective) != nvars:
            raise ValueError(
                f"objective has {len(self.objective)} coefficients for {nvars} variables"
            )
        for idx, con in enumerate(self.constraints):
            if len(con.coeffs) != nvars:
                raise ValueError(
                    f"constraint {idx} has {len(con.coeffs)} coefficients "
                    f"for {nvars} variables"
                )


def maximize(model: IlpModel, stats: dict | None = None) -> IlpSolution | None:
    """Best assignment, or None when the model is infeasible.

    Variables are assigned in declaration order, values from the upper
    bound downward, so among equal-objective optima the search reports
    the lexicographically greatest assignment.  Pruning: a constraint
    whose minimum achievable activity already exceeds its bound kills
    the branch, as does an objective upper bound that cannot beat the
    incumbent.
    """
    nvars = len(model.variables)
    lows = [v.lower for v in model.variables]
    highs = [v.upper for v in model.variables]
    obj = model.objective

    # per-constraint minimum activity of the still-unassigned suffix
    def suffix_tables():
        min_act = []  # [constraint][position] = min activity of vars position..end
        for con in model.constraints:
            row = [0] * (nvars + 1)
            for i in range(nvars - 1, -1, -1):
                a = con.coeffs[i]
                row[i] = row[i + 1] + min(a * lows[i], a * highs[i])
            min_act.append(row)
        obj_max = [0] * (nvars + 1)
        for i in range(nvars - 1, -1, -1):
            c = obj[i]
            obj_max[i] = obj_max[i + 1] + max(c * lows[i], c * highs[i])
        return min_act, obj_max

    min_act, obj_max = suffix_tables()
    best: list[IlpSolution | None] = [None]
    nodes = [0]
    assigned = [0] * nvars
    acts = [0] * len(model.constraints)  # activity of assigned prefix

    def feasible_prefix(pos: int) -> bool:
        for ci, con in enumerate(model.constraints):
            if acts[ci] + min_act[ci][pos] > con.bound:
                return False
        return True

    def dfs(pos: int, value: int):
        nodes[0] += 1
        if best[0] is not None and value + obj_max[pos] <= best[0].value:
            return
        if not feasible_prefix(pos):
            return
        if pos == nvars:
            best[0] = IlpSolution(tuple(assigned), value)
            return
        for x in range(highs[pos], lows[pos] - 1, -1):
            assigned[pos] = x
            for ci, con in enumerate(model.constraints):
                acts[ci] += con.coeffs[pos] * x
            dfs(pos + 1, value + obj[pos] * x)
            for ci, con in enumerate(model.constraints):
                acts[ci] -= con.coeffs[pos] * x
        assigned[pos] = 0

    dfs(0, 0)
    if stats is not None:
        stats["ilp_nodes"] = stats.get("ilp_nodes", 0) + nodes[0]
    return best[0]
