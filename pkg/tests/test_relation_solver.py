from fractions import Fraction

import numpy as np

from src.relation_solver import (
    BareissKernelStrategy,
    MultiModularKernelStrategy,
    RelationSolver,
    default_solver,
)


def _random_rank_deficient(rng: np.random.Generator, nrows: int, ncols: int, rank: int) -> list:
    left = rng.integers(-9, 10, size=(nrows, rank))
    right = rng.integers(-9, 10, size=(rank, ncols))
    return [[Fraction(int(v), 3) for v in row] for row in left @ right]


def test_strategies_agree(rng):
    rows = _random_rank_deficient(rng, 60, 50, 41)
    rank_b, kernel_b = RelationSolver(BareissKernelStrategy()).solve(rows, 50)
    rank_m, kernel_m = RelationSolver(MultiModularKernelStrategy()).solve(rows, 50)
    assert rank_b == rank_m == 41
    assert kernel_b == kernel_m


def test_kernel_vectors_annihilate_rows(rng):
    rows = _random_rank_deficient(rng, 30, 45, 20)
    rank, kernel = default_solver(45).solve(rows, 45)
    assert rank == 20
    assert len(kernel) == 25
    for vector in kernel:
        assert all(sum(r * v for r, v in zip(row, vector)) == 0 for row in rows)


def test_empty_system_has_full_kernel():
    rank, kernel = RelationSolver(MultiModularKernelStrategy()).solve([], 3)
    assert rank == 0
    assert len(kernel) == 3


def test_set_strategy_switches_backend():
    solver = RelationSolver(MultiModularKernelStrategy())
    solver.set_strategy(BareissKernelStrategy())
    assert solver.solve([[1, 1]], 2) == (1, [(1, -1)])
