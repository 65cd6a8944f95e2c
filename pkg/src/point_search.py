import logging
from abc import ABC, abstractmethod
from itertools import combinations_with_replacement, product
from typing import Sequence

import numpy as np
from joblib import Parallel, delayed

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

DIMENSION = 10
CUBIC_MONOMIALS = tuple(combinations_with_replacement(range(DIMENSION), 3))


def evaluate_cubics_exact(cubics: Sequence[Sequence[int]], point: Sequence[int]) -> list:
    """Values of integer cubic forms (indexed by sorted index triples) at an integer point."""
    monomials = [point[i] * point[j] * point[k] for i, j, k in CUBIC_MONOMIALS]
    return [sum(c * m for c, m in zip(cubic, monomials) if c) for cubic in cubics]


def _float_coefficients(cubics: tuple) -> np.ndarray:
    """Each cubic divided by its largest absolute coefficient."""
    rows = []
    for cubic in cubics:
        peak = max(abs(c) for c in cubic) or 1
        rows.append([c / peak for c in cubic])
    return np.array(rows, dtype=np.float64)


def _search_chunk(prefix: tuple, suffixes: np.ndarray, cubics: tuple, tolerance: float) -> list:
    """Exact zeros of the cubics among the primitive points with the given prefix."""
    if any(prefix):
        if next(v for v in prefix if v) < 0:
            return []
        rows = suffixes
    else:
        nonzero = suffixes != 0
        has_nonzero = nonzero.any(axis=1)
        first = np.argmax(nonzero, axis=1)
        leading = suffixes[np.arange(len(suffixes)), first]
        rows = suffixes[has_nonzero & (leading > 0)]
    if len(rows) == 0:
        return []
    points = np.hstack([np.tile(np.array(prefix, dtype=np.int64), (len(rows), 1)), rows])
    points = points[np.gcd.reduce(np.abs(points), axis=1) == 1]
    if len(points) == 0:
        return []

    index = np.array(CUBIC_MONOMIALS)
    coefficients = _float_coefficients(cubics)
    floats = points.astype(np.float64)
    monomials = floats[:, index[:, 0]] * floats[:, index[:, 1]] * floats[:, index[:, 2]]
    values = monomials @ coefficients.T
    scale = np.abs(monomials) @ np.abs(coefficients).T
    passing = np.all(np.abs(values) <= tolerance * scale, axis=1)

    found = []
    for row in points[passing]:
        point = tuple(int(v) for v in row)
        if not any(evaluate_cubics_exact(cubics, point)):
            found.append(point)
    return found


class PointSearchStrategy(ABC):
    """
    Abstract base class for rational point searches on an intersection of cubics.
    """

    @abstractmethod
    def search(self, cubics: Sequence[Sequence[int]], bound: int) -> list:
        """
        Parameters:
        ----------
        cubics : Sequence[Sequence[int]]
            Integer cubic forms in ten variables, indexed by sorted index triples.
        bound : int
            Height bound of the search box.

        Returns:
        -------
        list[tuple[int, ...]]
            The primitive zeros, first nonzero coordinate positive, in lexicographic order.
        """
        pass


class BoxPointSearch(PointSearchStrategy):
    """
    Exhaustive search of the box [-bound, bound]^10.

    The box is cut into chunks sharing a coordinate prefix; each chunk is
    screened in floating point and the survivors are confirmed with exact
    integer arithmetic, so the result is exact and independent of the
    number of workers.
    """

    def __init__(self, workers: int = 1, max_chunk: int = 50_000, tolerance: float = 1e-8) -> None:
        self.workers = workers
        self.max_chunk = max_chunk
        self.tolerance = tolerance

    def _prefix_length(self, bound: int) -> int:
        width = 2 * bound + 1
        length = 0
        while length < DIMENSION and width ** (DIMENSION - length) > self.max_chunk:
            length += 1
        return length

    def search(self, cubics: Sequence[Sequence[int]], bound: int) -> list:
        if bound < 0:
            raise ValueError("The height bound must be non-negative.")
        cubics = tuple(tuple(int(c) for c in cubic) for cubic in cubics)
        if bound == 0 or not cubics:
            return []
        length = self._prefix_length(bound)
        values = range(-bound, bound + 1)
        suffixes = np.array(list(product(values, repeat=DIMENSION - length)), dtype=np.int64).reshape(-1, DIMENSION - length)
        prefixes = list(product(values, repeat=length))
        logging.info(f"Searching the box of height {bound} in {len(prefixes)} chunks with {self.workers} workers.")
        chunks = Parallel(n_jobs=self.workers)(
            delayed(_search_chunk)(prefix, suffixes, cubics, self.tolerance) for prefix in prefixes
        )
        found = sorted(point for chunk in chunks for point in chunk)
        logging.info(f"Found {len(found)} points.")
        return found


class PointSearcher:
    """
    Context class running a point search with a pluggable strategy.
    """

    def __init__(self, strategy: PointSearchStrategy) -> None:
        self._strategy = strategy

    def set_strategy(self, strategy: PointSearchStrategy) -> None:
        logging.info("Switching point search strategy.")
        self._strategy = strategy

    def search(self, cubics: Sequence[Sequence[int]], bound: int) -> list:
        return self._strategy.search(cubics, bound)
