import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import prevprime

from src.exact_arith import (
    QMatrix,
    _integer_rows,
    crt_pair,
    kernel_basis,
    modular_rref,
    primitive_integer_vector,
    rational_reconstruction,
)

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")


class KernelStrategy(ABC):
    """
    Abstract base class for exact right-kernel computations.

    Subclasses return the exact rank of a rational matrix together with a basis
    of its right kernel.
    """

    @abstractmethod
    def solve(self, rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple:
        """
        Parameters:
        ----------
        rows : Sequence[Sequence[Fraction]]
            The matrix rows.
        ncols : int
            The number of columns (needed when there are no rows).

        Returns:
        -------
        tuple[int, list[tuple[int, ...]]]
            The exact rank and a basis of the right kernel as primitive integer vectors.
        """
        pass


class BareissKernelStrategy(KernelStrategy):
    """Exact fraction-free elimination over Q."""

    def solve(self, rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple:
        logging.info(f"Bareiss kernel of a {len(rows)}x{ncols} system.")
        matrix = QMatrix.from_rows(rows, cols=ncols)
        kernel = kernel_basis(matrix)
        return ncols - len(kernel), [primitive_integer_vector(v) for v in kernel]


class MultiModularKernelStrategy(KernelStrategy):
    """
    Kernel by elimination modulo word-sized primes and rational reconstruction.

    The reduced echelon form is computed modulo several primes with numpy,
    combined by the Chinese remainder theorem and lifted by rational
    reconstruction. Every lifted kernel vector is then checked against every
    integer row exactly. The rank modulo a prime never exceeds the rank over Q,
    and ``ncols - rank_p`` verified independent kernel vectors show that it is
    not smaller either, so the returned rank is exact. When the lift cannot be
    verified the computation falls back to Bareiss elimination.
    """

    def __init__(self, max_primes: int = 12) -> None:
        self.max_primes = max_primes

    @staticmethod
    def _primes(count: int) -> list:
        primes = []
        p = 2 ** 31
        for _ in range(count):
            p = prevprime(p)
            primes.append(p)
        return primes

    def solve(self, rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple:
        integer_rows = _integer_rows(rows)
        if not integer_rows:
            return BareissKernelStrategy().solve(rows, ncols)
        logging.info(f"Multimodular kernel of a {len(integer_rows)}x{ncols} system.")

        best_pivots = None
        residues = None
        modulus = 1
        for index, prime in enumerate(self._primes(self.max_primes)):
            reduced_rows = np.array([[value % prime for value in row] for row in integer_rows], dtype=np.int64)
            reduced, pivots = modular_rref(reduced_rows, prime)
            if best_pivots is not None and pivots != best_pivots:
                # a rank drop marks an unlucky prime; a rank increase restarts the lift
                if len(pivots) < len(best_pivots) or (len(pivots) == len(best_pivots) and pivots > best_pivots):
                    logging.warning(f"Skipping unlucky prime {prime}.")
                    continue
                residues, modulus = None, 1
            best_pivots = pivots
            free = [c for c in range(ncols) if c not in set(pivots)]
            entries = [[int(reduced[i, f]) for f in free] for i in range(len(pivots))]
            if residues is None:
                residues, modulus = entries, prime
            else:
                residues = [[crt_pair(a, modulus, b, prime) for a, b in zip(row_a, row_b)] for row_a, row_b in zip(residues, entries)]
                modulus *= prime
            if index == 0:
                continue
            kernel = self._lift(residues, modulus, best_pivots, free, ncols)
            if kernel is not None and self._verify(integer_rows, kernel):
                logging.info(f"Kernel verified with {index + 1} primes: rank {len(best_pivots)}.")
                return len(best_pivots), kernel
        logging.warning("Multimodular lift failed to verify; falling back to Bareiss elimination.")
        return BareissKernelStrategy().solve(rows, ncols)

    @staticmethod
    def _lift(residues: list, modulus: int, pivots: list, free: list, ncols: int):
        kernel = []
        for column, f in enumerate(free):
            vector = [Fraction(0)] * ncols
            vector[f] = Fraction(1)
            for i, p in enumerate(pivots):
                value = rational_reconstruction(residues[i][column], modulus)
                if value is None:
                    return None
                vector[p] = -value
            kernel.append(primitive_integer_vector(vector))
        return kernel

    @staticmethod
    def _verify(integer_rows: list, kernel: list) -> bool:
        for vector in kernel:
            support = [(j, v) for j, v in enumerate(vector) if v]
            for row in integer_rows:
                if sum(row[j] * v for j, v in support) != 0:
                    return False
        return True


class RelationSolver:
    """
    Context class that computes relation spaces with a pluggable kernel strategy.
    """

    def __init__(self, strategy: KernelStrategy) -> None:
        """
        Parameters:
        ----------
        strategy : KernelStrategy
            The strategy used for the kernel computation.
        """
        self._strategy = strategy

    def set_strategy(self, strategy: KernelStrategy) -> None:
        logging.info("Switching kernel strategy.")
        self._strategy = strategy

    def solve(self, rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple:
        return self._strategy.solve(rows, ncols)


def default_solver(ncols: int, max_primes: int = 12) -> RelationSolver:
    """Bareiss for narrow systems, the multimodular strategy for wide ones."""
    if ncols <= 40:
        return RelationSolver(BareissKernelStrategy())
    return RelationSolver(MultiModularKernelStrategy(max_primes=max_primes))
