"""Exact ILP engine, cross-checked against full lattice enumeration."""

import itertools
import random

import numpy as np
import pytest

from harmless import IlpConstraint, IlpModel, IlpVariable, maximize


def model_of(bounds, constraints, objective):
    return IlpModel(
        tuple(IlpVariable(f"x{i}", lo, hi) for i, (lo, hi) in enumerate(bounds)),
        tuple(IlpConstraint(tuple(c), b) for c, b in constraints),
        tuple(objective),
    )


def test_simple_maximum():
    m = model_of([(0, 2), (0, 2)], [((1, 1), 3)], (1, 1))
    sol = maximize(m)
    assert sol.value == 3
    assert sol.assignment == (2, 1)  # lex-greatest optimum


def test_infeasible():
    m = model_of([(0, 5)], [((1,), -1)], (1,))
    assert maximize(m) is None


def test_two_constraints():
    m = model_of([(0, 4), (0, 4)], [((1, 1), 4), ((3, 0), 6)], (2, 1))
    sol = maximize(m)
    assert sol.value == 6 and sol.assignment == (2, 2)


def test_no_constraints():
    m = model_of([(1, 3), (0, 2)], [], (1, -1))
    sol = maximize(m)
    assert sol.assignment == (3, 0) and sol.value == 3


def test_zero_variables():
    m = IlpModel((), (IlpConstraint((), 0),), ())
    sol = maximize(m)
    assert sol.value == 0 and sol.assignment == ()
    assert maximize(IlpModel((), (IlpConstraint((), -1),), ())) is None


def test_negative_bounds_and_coeffs():
    m = model_of([(-3, 3)], [((-2,), 2)], (-1,))
    sol = maximize(m)
    # maximize -x with -2x <= 2, x in [-3,3] -> x = -1
    assert sol.assignment == (-1,) and sol.value == 1


def test_shape_validation():
    with pytest.raises(ValueError):
        IlpVariable("x", 2, 1)
    with pytest.raises(ValueError):
        model_of([(0, 1)], [], (1, 1))
    with pytest.raises(ValueError):
        model_of([(0, 1)], [((1, 1), 0)], (1,))


def test_stats_accumulate():
    stats = {}
    m = model_of([(0, 1), (0, 1)], [((1, 1), 1)], (1, 1))
    maximize(m, stats)
    first = stats["ilp_nodes"]
    maximize(m, stats)
    assert first >= 1 and stats["ilp_nodes"] == 2 * first


def lattice_best(bounds, constraints, objective):
    axes = [np.arange(lo, hi + 1) for lo, hi in bounds]
    grid = np.array(list(itertools.product(*axes)))
    ok = np.ones(len(grid), dtype=bool)
    for coeffs, bound in constraints:
        ok &= grid @ np.array(coeffs) <= bound
    if not ok.any():
        return None
    vals = grid[ok] @ np.array(objective)
    return int(vals.max())


def test_matches_lattice_enumeration():
    rng = random.Random(41)
    for _ in range(400):
        nvars = rng.randint(1, 4)
        bounds = []
        for _ in range(nvars):
            lo = rng.randint(-2, 2)
            bounds.append((lo, lo + rng.randint(0, 6)))
        constraints = [
            (
                tuple(rng.randint(-3, 3) for _ in range(nvars)),
                rng.randint(-4, 10),
            )
            for _ in range(rng.randint(0, 5))
        ]
        objective = tuple(rng.randint(-3, 3) for _ in range(nvars))
        got = maximize(model_of(bounds, constraints, objective))
        want = lattice_best(bounds, constraints, objective)
        if want is None:
            assert got is None
        else:
            assert got is not None and got.value == want
            acts = [
                sum(c * x for c, x in zip(coeffs, got.assignment))
                for coeffs, _ in constraints
            ]
            assert all(a <= b for a, (_, b) in zip(acts, constraints))


def test_reported_optimum_is_lex_greatest():
    rng = random.Random(42)
    for _ in range(150):
        nvars = rng.randint(1, 3)
        bounds = [(0, rng.randint(0, 3)) for _ in range(nvars)]
        constraints = [
            (tuple(rng.randint(0, 2) for _ in range(nvars)), rng.randint(0, 6))
            for _ in range(rng.randint(0, 3))
        ]
        objective = tuple(rng.randint(0, 2) for _ in range(nvars))
        got = maximize(model_of(bounds, constraints, objective))
        points = [
            p
            for p in itertools.product(*[range(lo, hi + 1) for lo, hi in bounds])
            if all(
                sum(c * x for c, x in zip(coeffs, p)) <= b
                for coeffs, b in constraints
            )
        ]
        if not points:
            assert got is None
            continue
        top = max(sum(c * x for c, x in zip(objective, p)) for p in points)
        assert got.value == top
        assert got.assignment == max(p for p in points if sum(c * x for c, x in zip(objective, p)) == top)
