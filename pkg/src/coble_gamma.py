import hashlib
import json
import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from typing import Optional, Sequence, Union

from src.errors import InputError, InsufficientSamples, InternalInconsistency
from src.exact_arith import QMatrix, format_rational, parse_rational
from src.plane_config import SixPointConfig, TRIPLES, require_general_position, d2, minor, random_configurations
from src.relation_solver import BareissKernelStrategy, RelationSolver, default_solver
from src.settings import get_settings

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")


class SymbolKind(Enum):
    TRIPLE_SPLIT = "TripleSplit"
    PAIR_SPLIT = "PairSplit"


@dataclass(frozen=True)
class GammaSymbol:
    """
    Combinatorial index of one of the 40 invariants.

    A TripleSplit symbol (i1i2i3)(i4i5i6) is an unordered pair of complementary
    triples; a PairSplit symbol (i1i2)(i3i4)(i5i6) is a triple of disjoint pairs
    up to cyclic rotation. Instances are always in canonical form: blocks are
    sorted internally, the block containing 1 comes first, and for PairSplit the
    cyclic order of the pairs is preserved.
    """

    kind: SymbolKind
    blocks: tuple

    def __post_init__(self) -> None:
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in self.blocks)
        if sorted(i for b in blocks for i in b) != [1, 2, 3, 4, 5, 6]:
            raise InputError(f"Symbol blocks {blocks} do not partition 1..6.")
        sizes = {len(b) for b in blocks}
        expected = {SymbolKind.TRIPLE_SPLIT: ({3}, 2), SymbolKind.PAIR_SPLIT: ({2}, 3)}[self.kind]
        if sizes != expected[0] or len(blocks) != expected[1]:
            raise InputError(f"Blocks {blocks} do not match the symbol kind {self.kind.value}.")
        first = next(k for k, b in enumerate(blocks) if 1 in b)
        if self.kind is SymbolKind.TRIPLE_SPLIT:
            blocks = (blocks[first], blocks[1 - first])
        else:
            blocks = blocks[first:] + blocks[:first]
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> "GammaSymbol":
        kind = SymbolKind.TRIPLE_SPLIT if len(blocks) == 2 else SymbolKind.PAIR_SPLIT
        return cls(kind, tuple(tuple(b) for b in blocks))

    @classmethod
    def parse(cls, text: str) -> "GammaSymbol":
        """Parses "(123)(456)" or "(12)(34)(56)" in any admissible written form."""
        groups = re.findall(r"\((\d+)\)", text)
        if "".join(f"({g})" for g in groups) != text.replace(" ", ""):
            raise InputError(f"Cannot parse gamma symbol {text!r}.")
        return cls.from_blocks([[int(ch) for ch in g] for g in groups])

    def __str__(self) -> str:
        return "".join("(" + "".join(str(i) for i in b) + ")" for b in self.blocks)

    def sort_key(self) -> tuple:
        return (0 if self.kind is SymbolKind.TRIPLE_SPLIT else 1, self.blocks)


@lru_cache(maxsize=1)
def enumerate_symbols() -> tuple:
    """The 40 symbols in canonical order: 10 TripleSplit, then 30 PairSplit, each lexicographic."""
    triples = {GammaSymbol(SymbolKind.TRIPLE_SPLIT, (a, tuple(i for i in range(1, 7) if i not in a))) for a in combinations(range(1, 7), 3)}
    pair_splits = set()
    for order in permutations(range(1, 7)):
        pairs = (order[0:2], order[2:4], order[4:6])
        pair_splits.add(GammaSymbol(SymbolKind.PAIR_SPLIT, pairs))
    symbols = sorted(triples, key=GammaSymbol.sort_key) + sorted(pair_splits, key=GammaSymbol.sort_key)
    if len(triples) != 10 or len(pair_splits) != 30:
        raise InternalInconsistency(f"Expected 10 + 30 symbols, found {len(triples)} + {len(pair_splits)}.")
    return tuple(symbols)


@lru_cache(maxsize=1)
def symbol_index() -> dict:
    return {s: k for k, s in enumerate(enumerate_symbols())}


# Lexicographically first ten symbols with independent values: five of the
# TripleSplit type span d2 times the products of complementary minors, and
# the PairSplit ones restrict on the conic locus to independent pairings.
BASIS_SYMBOLS = (
    "(123)(456)",
    "(124)(356)",
    "(125)(346)",
    "(134)(256)",
    "(135)(246)",
    "(12)(34)(56)",
    "(12)(35)(46)",
    "(13)(24)(56)",
    "(13)(25)(46)",
    "(14)(25)(36)",
)


def fixed_basis_indices() -> tuple:
    index = symbol_index()
    return tuple(index[GammaSymbol.parse(text)] for text in BASIS_SYMBOLS)


def _as_symbol(key: Union[GammaSymbol, str]) -> GammaSymbol:
    return key if isinstance(key, GammaSymbol) else GammaSymbol.parse(key)


@dataclass(frozen=True)
class GammaVector:
    """The 40 invariants of a configuration in canonical symbol order."""

    values: tuple

    def __post_init__(self) -> None:
        values = tuple(Fraction(v) for v in self.values)
        if len(values) != 40:
            raise InputError(f"A gamma vector has 40 entries, got {len(values)}.")
        object.__setattr__(self, "values", values)

    def __getitem__(self, key: Union[int, GammaSymbol, str]) -> Fraction:
        if isinstance(key, int):
            return self.values[key]
        return self.values[symbol_index()[_as_symbol(key)]]

    def scaled(self, factor: Fraction) -> "GammaVector":
        return GammaVector(tuple(v * factor for v in self.values))

    def is_proportional_to(self, other: "GammaVector") -> bool:
        pivot = next((k for k, v in enumerate(self.values) if v != 0), None)
        if pivot is None or other.values[pivot] == 0:
            return False
        ratio = other.values[pivot] / self.values[pivot]
        return all(b == ratio * a for a, b in zip(self.values, other.values))

    def to_json(self) -> dict:
        return {str(s): format_rational(v) for s, v in zip(enumerate_symbols(), self.values)}

    @classmethod
    def from_json(cls, data: dict) -> "GammaVector":
        values = [None] * 40
        for key, value in data.items():
            values[symbol_index()[GammaSymbol.parse(key)]] = parse_rational(value)
        if any(v is None for v in values):
            raise InputError("A gamma vector document must list all 40 symbols.")
        return cls(tuple(values))


@dataclass(frozen=True)
class PowerSums:
    p2: Fraction
    p4: Fraction
    p6: Fraction
    p8: Fraction
    p10: Fraction

    def as_tuple(self) -> tuple:
        return (self.p2, self.p4, self.p6, self.p8, self.p10)

    def to_json(self) -> dict:
        return {f"p{2 * (k + 1)}": format_rational(v) for k, v in enumerate(self.as_tuple())}


def _pair_split_triples(blocks: tuple) -> tuple:
    (i1, i2), (i3, i4), (i5, i6) = blocks
    return ((i1, i3, i4), (i2, i3, i4), (i3, i5, i6), (i4, i5, i6), (i5, i1, i2), (i6, i1, i2))


def _evaluate_with(symbol: GammaSymbol, minors: dict, quadric: Fraction) -> Fraction:
    if symbol.kind is SymbolKind.TRIPLE_SPLIT:
        a, b = symbol.blocks
        return minors[a] * minors[b] * quadric
    value = Fraction(1)
    for triple in _pair_split_triples(symbol.blocks):
        value *= minors[tuple(sorted(triple))]
    return value


def evaluate(c: SixPointConfig, s: Union[GammaSymbol, str]) -> Fraction:
    """
    Evaluates one invariant on a configuration in general position.

    Parameters:
    ----------
    c : SixPointConfig
        The six points.
    s : GammaSymbol or str
        The symbol; strings are parsed and canonicalised first.

    Returns:
    -------
    Fraction
        The product of minors (times d2 for TripleSplit symbols).
    """
    require_general_position(c)
    symbol = _as_symbol(s)
    minors = {t: minor(c, t) for t in TRIPLES}
    quadric = d2(c) if symbol.kind is SymbolKind.TRIPLE_SPLIT else Fraction(1)
    return _evaluate_with(symbol, minors, quadric)


def evaluate_all(c: SixPointConfig) -> GammaVector:
    require_general_position(c)
    minors = {t: minor(c, t) for t in TRIPLES}
    quadric = d2(c)
    return GammaVector(tuple(_evaluate_with(s, minors, quadric) for s in enumerate_symbols()))


def power_sums(g: GammaVector) -> PowerSums:
    squares = [v * v for v in g.values]
    sums = []
    powers = list(squares)
    for _ in range(5):
        sums.append(sum(powers, Fraction(0)))
        powers = [p * s for p, s in zip(powers, squares)]
    return PowerSums(*sums)


@lru_cache(maxsize=1)
def _displayed_relation_symbols() -> tuple:
    left = tuple(GammaSymbol.parse(t) for t in ("(12)(34)(56)", "(23)(45)(16)", "(14)(36)(25)"))
    right = tuple(GammaSymbol.parse(t) for t in ("(12)(36)(45)", "(34)(25)(16)", "(56)(14)(23)"))
    return left, right


def check_cubic_relation(g: GammaVector) -> bool:
    """Checks the classical three-term product relation among the PairSplit invariants."""
    left, right = _displayed_relation_symbols()
    lhs = g[left[0]] * g[left[1]] * g[left[2]]
    rhs = g[right[0]] * g[right[1]] * g[right[2]]
    return lhs == rhs


def displayed_cubic_relation() -> tuple:
    """The two monomials of the displayed relation as triples of symbol indices."""
    left, right = _displayed_relation_symbols()
    index = symbol_index()
    return tuple(index[s] for s in left), tuple(index[s] for s in right)


def sample_gamma_vectors(count: int, seed: int, coordinate_range: Optional[int] = None) -> list:
    """Invariants of ``count`` seeded random configurations, in sample order."""
    if coordinate_range is None:
        coordinate_range = get_settings().coordinate_range
    logging.info(f"Sampling {count} configurations with seed {seed}.")
    return [evaluate_all(c) for c in random_configurations(count, seed, coordinate_range)]


@dataclass(frozen=True)
class RelationSpace:
    degree: int
    rank: int
    nullspace: tuple
    coordinates: tuple


def _monomials(n: int, degree: int) -> list:
    return list(combinations_with_replacement(range(n), degree))


def _monomial_row(values: Sequence[Fraction], monomials: list) -> list:
    row = []
    for mono in monomials:
        product = Fraction(1)
        for k in mono:
            product *= values[k]
        row.append(product)
    return row


def sampled_relation_space(
    degree: int,
    samples: Sequence[GammaVector],
    coordinates: Optional[Sequence[int]] = None,
    solver: Optional[RelationSolver] = None,
) -> RelationSpace:
    """
    Rank and relation space of the degree-``degree`` monomials on sampled points.

    Degree 1 uses all 40 invariants unless ``coordinates`` is given. Degrees 2 and
    3 use the ten basis coordinates of the linear span (computed from the samples
    when ``coordinates`` is omitted), giving 55 and 220 monomials.

    Parameters:
    ----------
    degree : int
        1, 2 or 3.
    samples : Sequence[GammaVector]
        Sampled invariant vectors.
    coordinates : Sequence[int], optional
        Indices of the coordinates to use.
    solver : RelationSolver, optional
        Kernel strategy context; chosen by system width when omitted.

    Returns:
    -------
    RelationSpace
        The exact rank and a basis of the relations (primitive integer vectors
        indexed by monomials in ``combinations_with_replacement`` order).
    """
    if degree not in (1, 2, 3):
        raise InputError(f"Relation spaces are computed in degrees 1, 2, 3, not {degree}.")
    if coordinates is None:
        coordinates = tuple(range(40)) if degree == 1 else linear_structure(samples)[0]
    coordinates = tuple(coordinates)
    monomials = _monomials(len(coordinates), degree)
    if len(samples) < len(monomials):
        logging.error(f"{len(samples)} samples for {len(monomials)} monomials.")
        raise InsufficientSamples(f"Degree {degree} needs at least {len(monomials)} samples, got {len(samples)}.")
    rows = [_monomial_row([g.values[k] for k in coordinates], monomials) for g in samples]
    if solver is None:
        solver = default_solver(len(monomials), get_settings().modular_primes)
    rank, nullspace = solver.solve(rows, len(monomials))
    logging.info(f"Degree {degree}: rank {rank}, nullity {len(nullspace)}.")
    return RelationSpace(degree, rank, tuple(nullspace), coordinates)


def linear_structure(samples: Sequence[GammaVector]) -> tuple:
    """
    Basis coordinates of the linear span and the expression of every invariant in them.

    Returns:
    -------
    tuple[tuple[int, ...], QMatrix]
        The pivot indices (lexicographically first independent symbols) and the
        40 x r matrix whose row j expresses gamma_j in the basis coordinates.
    """
    matrix = QMatrix.from_rows([g.values for g in samples], cols=40)
    reduced, pivots = matrix.rref()
    expressions = QMatrix.from_rows([[reduced[k, j] for k in range(len(pivots))] for j in range(40)], cols=len(pivots))
    return tuple(pivots), expressions


@dataclass(frozen=True)
class GammaRelations:
    """
    Seeded relation data of the gamma variety.

    ``expressions`` is the 40 x 10 matrix writing every invariant in the ten
    basis coordinates; ``cubic_relations`` are 30 integer vectors indexed by the
    220 cubic monomials in those coordinates.
    """

    seed: int
    sample_count: int
    basis_indices: tuple
    expressions: QMatrix
    linear_relations: tuple
    quadratic_rank: int
    cubic_rank: int
    cubic_relations: tuple
    digest: str

    @property
    def basis_symbols(self) -> tuple:
        symbols = enumerate_symbols()
        return tuple(symbols[k] for k in self.basis_indices)

    @property
    def cubic_monomials(self) -> list:
        return _monomials(len(self.basis_indices), 3)

    def project(self, g: GammaVector) -> tuple:
        return tuple(g.values[k] for k in self.basis_indices)

    def expand(self, coordinates: Sequence) -> list:
        """The 40 invariants from the ten basis coordinates (rationals or etale elements)."""
        expanded = []
        for j in range(40):
            total = 0
            for k, value in enumerate(coordinates):
                weight = self.expressions[j, k]
                if weight:
                    total = total + value * weight
            expanded.append(total)
        return expanded

    def evaluate_cubics(self, coordinates: Sequence[Fraction]) -> list:
        monomial_values = _monomial_row(coordinates, self.cubic_monomials)
        return [sum((c * m for c, m in zip(relation, monomial_values) if c), Fraction(0)) for relation in self.cubic_relations]


def _digest(samples: Sequence[GammaVector]) -> str:
    payload = json.dumps([[format_rational(v) for v in g.values] for g in samples], separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@lru_cache(maxsize=4)
def gamma_relations(seed: int, samples: int) -> GammaRelations:
    """
    Computes (and caches per process) the relation data for a seed and sample count.

    Raises InternalInconsistency when the sampled dimensions differ from
    10 (linear span), 55 (quadrics) and 190 (cubics).
    """
    vectors = sample_gamma_vectors(samples, seed)
    basis_indices, expressions = linear_structure(vectors)
    if len(basis_indices) != 10:
        logging.error(f"Linear span has dimension {len(basis_indices)}.")
        raise InternalInconsistency(f"The sampled linear span has dimension {len(basis_indices)}, expected 10.")
    if basis_indices != fixed_basis_indices():
        logging.error(f"Sampled basis {basis_indices} differs from the fixed basis.")
        raise InternalInconsistency("The sampled basis symbols differ from BASIS_SYMBOLS.", witness=list(basis_indices))
    linear = sampled_relation_space(1, vectors, solver=RelationSolver(BareissKernelStrategy()))
    quadratic = sampled_relation_space(2, vectors, coordinates=basis_indices)
    cubic = sampled_relation_space(3, vectors, coordinates=basis_indices)
    if quadratic.rank != 55 or cubic.rank != 190:
        logging.error(f"Sampled ranks {quadratic.rank}, {cubic.rank} differ from 55, 190.")
        raise InternalInconsistency(f"Sampled ranks are {quadratic.rank} (quadrics) and {cubic.rank} (cubics).")
    logging.info(f"Basis symbols: {', '.join(str(enumerate_symbols()[k]) for k in basis_indices)}.")
    return GammaRelations(
        seed=seed,
        sample_count=samples,
        basis_indices=basis_indices,
        expressions=expressions,
        linear_relations=linear.nullspace,
        quadratic_rank=quadratic.rank,
        cubic_rank=cubic.rank,
        cubic_relations=cubic.nullspace,
        digest=_digest(vectors),
    )
