import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import isqrt
from typing import Callable, Optional, Sequence

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

from src.coble_gamma import GammaVector, enumerate_symbols, evaluate_all, power_sums
from src.errors import InputError, InternalInconsistency
from src.exact_arith import QMatrix
from src.plane_config import NaiveCoords, cremona_i123, naive_configuration, random_naive_coords
from src.settings import get_settings

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

WEYL_E6_ORDER = 51840


# ---------------------------------------------------------------------------
# Line labels and the Picard lattice
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineLabel:
    """
    One of the 27 line labels: l_i (kind "l"), l'_i (kind "m") or l''_ij (kind "c").
    """

    kind: str
    indices: tuple

    def __str__(self) -> str:
        return self.kind + "".join(str(i) for i in self.indices)

    @classmethod
    def parse(cls, text: str) -> "LineLabel":
        label = LABEL_INDEX.get(text)
        if label is None:
            raise InputError(f"Unknown line label {text!r}.")
        return LABELS[label]

    def picard_class(self) -> tuple:
        """Coefficients (h, e1..e6) of the class h*H + sum e_i*E_i."""
        if self.kind == "l":
            (i,) = self.indices
            return tuple(1 if k == i else 0 for k in range(7))
        if self.kind == "m":
            (i,) = self.indices
            return (2,) + tuple(0 if k == i else -1 for k in range(1, 7))
        i, j = self.indices
        return (1,) + tuple(-1 if k in (i, j) else 0 for k in range(1, 7))


LABELS = (
    tuple(LineLabel("l", (i,)) for i in range(1, 7))
    + tuple(LineLabel("m", (i,)) for i in range(1, 7))
    + tuple(LineLabel("c", pair) for pair in combinations(range(1, 7), 2))
)
LABEL_INDEX = {str(label): k for k, label in enumerate(LABELS)}
CLASS_INDEX = {label.picard_class(): k for k, label in enumerate(LABELS)}


def intersection_number(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[0] - sum(a * b for a, b in zip(u[1:], v[1:]))


@lru_cache(maxsize=1)
def intersecting_pairs() -> frozenset:
    """The 135 unordered pairs of distinct intersecting lines."""
    classes = [label.picard_class() for label in LABELS]
    return frozenset(
        (a, b) for a, b in combinations(range(27), 2) if intersection_number(classes[a], classes[b]) == 1
    )


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


def _compose(g: tuple, h: tuple) -> tuple:
    """(g o h)(i) = g(h(i))."""
    return tuple(g[i] for i in h)


def _inverse(g: tuple) -> tuple:
    inverse = [0] * len(g)
    for i, image in enumerate(g):
        inverse[image] = i
    return tuple(inverse)


@dataclass(frozen=True)
class WE6Element:
    """
    An element of W(E6) as a permutation of the 27 labels in canonical order.

    ``perm27[i]`` is the index of the image of label ``i``; products compose
    as functions, ``(g * h)(Y) = g(h(Y))``.
    """

    perm27: tuple

    def __post_init__(self) -> None:
        perm = tuple(int(i) for i in self.perm27)
        if sorted(perm) != list(range(27)):
            raise InputError("A W(E6) element must permute the 27 labels.")
        object.__setattr__(self, "perm27", perm)

    @classmethod
    def identity(cls) -> "WE6Element":
        return cls(tuple(range(27)))

    def __mul__(self, other: "WE6Element") -> "WE6Element":
        return WE6Element(_compose(self.perm27, other.perm27))

    def inverse(self) -> "WE6Element":
        return WE6Element(_inverse(self.perm27))

    def is_identity(self) -> bool:
        return self.perm27 == tuple(range(27))

    def __call__(self, label: LineLabel) -> LineLabel:
        return LABELS[self.perm27[LABEL_INDEX[str(label)]]]

    def order(self) -> int:
        power, n = self, 1
        while not power.is_identity():
            power, n = power * self, n + 1
        return n

    def preserves_incidence(self) -> bool:
        pairs = intersecting_pairs()
        return all(tuple(sorted((self.perm27[a], self.perm27[b]))) in pairs for a, b in pairs)

    def s6_part(self) -> Optional[tuple]:
        """The permutation of {1..6} when the element permutes the l_i among themselves."""
        if all(self.perm27[i] < 6 for i in range(6)) and self == from_s6([self.perm27[i] + 1 for i in range(6)]):
            return tuple(self.perm27[i] + 1 for i in range(6))
        return None

    def to_json(self) -> list:
        return [str(LABELS[i]) for i in self.perm27]

    @classmethod
    def from_json(cls, images: Sequence[str]) -> "WE6Element":
        if len(images) != 27:
            raise InputError(f"A W(E6) element lists 27 label images, got {len(images)}.")
        return cls(tuple(LABEL_INDEX[str(LineLabel.parse(text))] for text in images))


def from_s6(sigma: Sequence[int]) -> WE6Element:
    """
    The label permutation induced by a permutation of the six points.

    Parameters:
    ----------
    sigma : Sequence[int]
        ``sigma[i - 1]`` is the image of i in 1..6.
    """
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != [1, 2, 3, 4, 5, 6]:
        raise InputError(f"{sigma} is not a permutation of 1..6.")
    images = []
    for label in LABELS:
        if label.kind == "c":
            moved = tuple(sorted(sigma[i - 1] for i in label.indices))
        else:
            moved = (sigma[label.indices[0] - 1],)
        images.append(LABEL_INDEX[str(LineLabel(label.kind, moved))])
    return WE6Element(tuple(images))


def reflection_element(root: Sequence[int]) -> WE6Element:
    """The label permutation of the reflection D -> D + (D.r) r in a (-2)-class r."""
    root = tuple(root)
    if intersection_number(root, root) != -2:
        raise InputError(f"{root} is not a (-2)-class.")
    images = []
    for label in LABELS:
        v = label.picard_class()
        factor = intersection_number(v, root)
        image = tuple(a + factor * b for a, b in zip(v, root))
        if image not in CLASS_INDEX:
            raise InternalInconsistency(f"Reflection in {root} does not preserve the 27 lines.")
        images.append(CLASS_INDEX[image])
    return WE6Element(tuple(images))


def i123_element() -> WE6Element:
    """The quadratic transformation centred at p1, p2, p3: the reflection in H - E1 - E2 - E3."""
    return reflection_element((1, -1, -1, -1, 0, 0, 0))


def double_six_swap() -> WE6Element:
    """Exchanges l_i and l'_i: the reflection in 2H - E1 - ... - E6."""
    return reflection_element((2, -1, -1, -1, -1, -1, -1))


def simple_reflections() -> list:
    """Coxeter generators: the five adjacent transpositions and the quadratic transformation."""
    transpositions = []
    for i in range(1, 6):
        sigma = list(range(1, 7))
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
        transpositions.append(from_s6(sigma))
    return transpositions + [i123_element()]


def even_subgroup_generators() -> list:
    """Generators s_1 s_k of the index-2 rotation subgroup."""
    reflections = simple_reflections()
    return [reflections[0] * s for s in reflections[1:]]


def picard_matrix(g: WE6Element) -> QMatrix:
    """Matrix of g on Pic in the basis (H, E1..E6); H = l''_12 + E1 + E2."""
    images = [LABELS[g.perm27[k]].picard_class() for k in range(6)]
    c12 = LABELS[g.perm27[LABEL_INDEX["c12"]]].picard_class()
    hyperplane = tuple(a + b + c for a, b, c in zip(c12, images[0], images[1]))
    columns = [hyperplane] + images
    return QMatrix.from_rows([[columns[j][i] for j in range(7)] for i in range(7)], cols=7)


def determinant_sign(g: WE6Element) -> int:
    return int(picard_matrix(g).determinant())


# ---------------------------------------------------------------------------
# Signed permutations of the 40 invariants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedPerm80:
    """
    A signed permutation of the 40 invariants.

    It acts on vectors by ``(P v)_i = signs[i] * v[perm40^-1(i)]``: the entry
    at position j moves to position perm40[j]. Equivalently it is a
    permutation of the 80 signed invariants, where index k stands for +gamma_k
    and k + 40 for -gamma_k.
    """

    perm40: tuple
    signs: tuple

    def __post_init__(self) -> None:
        if sorted(self.perm40) != list(range(40)) or len(self.signs) != 40 or any(s not in (1, -1) for s in self.signs):
            raise InputError("A signed permutation needs a permutation of 40 indices and 40 signs.")
        object.__setattr__(self, "perm40", tuple(self.perm40))
        object.__setattr__(self, "signs", tuple(self.signs))

    @classmethod
    def identity(cls) -> "SignedPerm80":
        return cls(tuple(range(40)), (1,) * 40)

    def to_perm80(self) -> tuple:
        images = [0] * 80
        for j in range(40):
            target = self.perm40[j]
            negative = self.signs[target] == -1
            images[j] = target + 40 if negative else target
            images[j + 40] = target if negative else target + 40
        return tuple(images)

    @classmethod
    def from_perm80(cls, perm80: Sequence[int]) -> "SignedPerm80":
        perm40 = [0] * 40
        signs = [1] * 40
        for j in range(40):
            image = perm80[j]
            perm40[j] = image % 40
            signs[image % 40] = 1 if image < 40 else -1
        return cls(tuple(perm40), tuple(signs))

    def __mul__(self, other: "SignedPerm80") -> "SignedPerm80":
        return SignedPerm80.from_perm80(_compose(self.to_perm80(), other.to_perm80()))

    def inverse(self) -> "SignedPerm80":
        return SignedPerm80.from_perm80(_inverse(self.to_perm80()))

    def apply(self, values: Sequence) -> list:
        source = _inverse(self.perm40)
        return [values[source[i]] * self.signs[i] for i in range(40)]

    def apply_gamma(self, g: GammaVector) -> GammaVector:
        return GammaVector(tuple(self.apply(g.values)))

    def to_json(self) -> dict:
        symbols = enumerate_symbols()
        return {
            str(symbols[j]): ("-" if self.signs[self.perm40[j]] == -1 else "+") + str(symbols[self.perm40[j]])
            for j in range(40)
        }


def _rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    numerator, denominator = isqrt(value.numerator), isqrt(value.denominator)
    if numerator * numerator != value.numerator or denominator * denominator != value.denominator:
        return None
    return Fraction(numerator, denominator)


def match_signed_permutation(before: Sequence[GammaVector], after: Sequence[GammaVector]) -> SignedPerm80:
    """
    Finds the unique signed permutation P with after = lambda * P(before) for a
    positive scalar lambda per sample, consistently over all samples.

    Parameters:
    ----------
    before, after : Sequence[GammaVector]
        Invariants of sample configurations before and after a geometric map.

    Returns:
    -------
    SignedPerm80
        The signed permutation.
    """
    candidates = [None] * 40
    for v, w in zip(before, after):
        scale = _rational_sqrt(power_sums(w).p2 / power_sums(v).p2)
        if scale is None:
            logging.error("Power sums of matched vectors are not related by a rational square.")
            raise InternalInconsistency("The two gamma vectors are not related by a signed permutation.")
        positions = {}
        for j, value in enumerate(v.values):
            positions.setdefault(value, []).append(j)
        for i, value in enumerate(w.values):
            target = value / scale
            options = {(j, 1) for j in positions.get(target, [])} | {(j, -1) for j in positions.get(-target, [])}
            candidates[i] = options if candidates[i] is None else candidates[i] & options
    if any(c is None or len(c) != 1 for c in candidates):
        logging.error("The matching oracle found no unique signed permutation.")
        raise InternalInconsistency("No unique signed permutation matches the samples.")
    sources = [next(iter(c)) for c in candidates]
    perm40 = [0] * 40
    signs = [1] * 40
    for i, (j, sign) in enumerate(sources):
        perm40[j] = i
        signs[i] = sign
    if sorted(perm40) != list(range(40)):
        raise InternalInconsistency("The matched sources do not form a permutation.")
    return SignedPerm80(tuple(perm40), tuple(signs))


def _geometric_action(g: WE6Element) -> Callable:
    sigma = g.s6_part()
    if sigma is not None:
        return lambda n: naive_configuration(n).permuted(sigma)
    if g == i123_element():
        return lambda n: naive_configuration(cremona_i123(n))
    raise InputError("Only point permutations and the quadratic transformation have a direct geometric action.")


def derive_gamma_action(g: WE6Element, seed: Optional[int] = None, samples: Optional[int] = None) -> SignedPerm80:
    """Signed permutation of a generator found by evaluating the invariants before and after its action."""
    settings = get_settings()
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    action = _geometric_action(g)
    before, after = [], []
    for _ in range(settings.oracle_samples if samples is None else samples):
        n = random_naive_coords(rng, settings.coordinate_range)
        before.append(evaluate_all(naive_configuration(n)))
        after.append(evaluate_all(action(n)))
    return match_signed_permutation(before, after)


# ---------------------------------------------------------------------------
# Stabilizer chain
# ---------------------------------------------------------------------------

COMBINED_DEGREE = 27 + 80


class WeylGroup:
    """
    The group generated by label permutations together with their signed actions.

    Elements are combined permutations of 27 + 80 points held in a sympy
    ``PermutationGroup``. The smallest moved point becomes the next base point,
    so a base among the 27 labels shows that the signed action is a function
    of the label action. ``gamma_action`` of any member is computed by sifting
    its label permutation through the basic transversals.
    """

    def __init__(self, generators: Sequence[WE6Element], images: Sequence[SignedPerm80]) -> None:
        self.generators = tuple(generators)
        self.images = tuple(images)
        combined = [Permutation(list(g.perm27 + tuple(27 + k for k in image.to_perm80()))) for g, image in zip(self.generators, self.images)]
        self.group = PermutationGroup(combined or [Permutation(list(range(COMBINED_DEGREE)))])
        self.group.schreier_sims()
        self.base = tuple(self.group.base)
        if any(b >= 27 for b in self.base):
            logging.error(f"Base {self.base} leaves the 27 labels.")
            raise InternalInconsistency("The signed action is not determined by the label action.")
        self.transversals = [
            {beta: tuple(u.array_form) for beta, u in level.items()} for level in self.group.basic_transversals
        ]
        self._cache = {}
        logging.info(f"Stabilizer chain with base {self.base} and order {self.order()}.")

    def order(self) -> int:
        return int(self.group.order())

    def factor(self, g: WE6Element) -> Optional[tuple]:
        """The combined permutation over ``g``, or None when g is not a member."""
        h = g.perm27
        element = tuple(range(COMBINED_DEGREE))
        for base_point, transversal in zip(self.base, self.transversals):
            u = transversal.get(h[base_point])
            if u is None:
                return None
            h = _compose(_inverse(u[:27]), h)
            element = _compose(element, u)
        return element if h == tuple(range(27)) else None

    def contains(self, g: WE6Element) -> bool:
        return self.factor(g) is not None

    def element_order(self, g: WE6Element) -> int:
        if not self.contains(g):
            raise InputError("The element does not lie in the generated group.")
        return g.order()

    def gamma_action(self, g: WE6Element) -> SignedPerm80:
        if g not in self._cache:
            element = self.factor(g)
            if element is None:
                logging.error("Element is not in the generated group.")
                raise InputError("The element does not lie in the generated group.")
            self._cache[g] = SignedPerm80.from_perm80(tuple(k - 27 for k in element[27:]))
        return self._cache[g]

    def random_element(self, rng: np.random.Generator) -> WE6Element:
        """A uniform element from seeded transversal picks."""
        element = tuple(range(COMBINED_DEGREE))
        for transversal in self.transversals:
            points = sorted(transversal)
            element = _compose(element, transversal[points[int(rng.integers(len(points)))]])
        return WE6Element(element[:27])


@lru_cache(maxsize=1)
def default_weyl_group() -> WeylGroup:
    """W(E6) from its six Coxeter generators, with oracle-derived signed actions."""
    generators = simple_reflections()
    images = [derive_gamma_action(g) for g in generators]
    group = WeylGroup(generators, images)
    if group.order() != WEYL_E6_ORDER:
        logging.error(f"Generated group has order {group.order()}.")
        raise InternalInconsistency(f"The generated group has order {group.order()}, expected {WEYL_E6_ORDER}.")
    return group


def gamma_action(g: WE6Element) -> SignedPerm80:
    """
    The signed permutation of the 40 invariants induced by g.

    For every configuration, the invariants after the geometric action of g
    equal the signed permuted invariants up to one common positive scalar.
    """
    if g.is_identity():
        return SignedPerm80.identity()
    return default_weyl_group().gamma_action(g)


# ---------------------------------------------------------------------------
# Group reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupReport:
    order: int
    transitive_on_signed: bool
    pair_blocks: bool
    transitive_on_blocks: bool
    primitive_on_blocks: bool
    incidence_preserved: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def verify_group(generators: Sequence[WE6Element]) -> GroupReport:
    """
    Order and orbit structure of the group generated by ``generators``.

    Parameters:
    ----------
    generators : Sequence[WE6Element]
        Elements of W(E6); their signed actions come from ``gamma_action``.

    Returns:
    -------
    GroupReport
        Order, transitivity on the 80 signed invariants, whether the pairs
        {gamma, -gamma} form the block system generated by one pair, and
        transitivity and primitivity on the 40 blocks.
    """
    generators = [g for g in generators if not g.is_identity()]
    if not generators:
        return GroupReport(1, False, False, False, False, True)
    images = [gamma_action(g) for g in generators]
    order = WeylGroup(generators, images).order()

    signed = PermutationGroup([Permutation(list(p.to_perm80())) for p in images])
    blocks = PermutationGroup([Permutation(list(p.perm40)) for p in images])
    transitive_signed = signed.is_transitive()
    pair_blocks = False
    if transitive_signed:
        system = signed.minimal_block([0, 40])
        pair_blocks = len(set(system)) == 40 and all(system[k] == system[k + 40] for k in range(40))
    transitive_blocks = blocks.is_transitive()
    primitive_blocks = transitive_blocks and blocks.is_primitive()
    report = GroupReport(
        order=order,
        transitive_on_signed=transitive_signed,
        pair_blocks=pair_blocks,
        transitive_on_blocks=transitive_blocks,
        primitive_on_blocks=primitive_blocks,
        incidence_preserved=all(g.preserves_incidence() for g in generators),
    )
    logging.info(f"Group report: {report}.")
    return report


def find_element_of_order(group: WeylGroup, n: int, seed: int, attempts: int = 20000) -> WE6Element:
    """A deterministic pseudo-random element of the given order."""
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        g = group.random_element(rng)
        if group.element_order(g) == n:
            return g
    raise InputError(f"No element of order {n} found in {attempts} attempts.")
