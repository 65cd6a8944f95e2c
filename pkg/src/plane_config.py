import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from src.errors import DegenerateConfig, InputError, NotDefinedHere
from src.exact_arith import QMatrix, format_rational, parse_rational

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

TRIPLES = tuple(combinations(range(1, 7), 3))


@dataclass(frozen=True)
class ProjPoint2:
    """
    A point of the projective plane over Q.

    The coordinates are stored in canonical form: the last nonzero coordinate
    is scaled to 1. Equality of two points is therefore projective equality, and
    the naive chart points (w:x:1) are their own canonical representatives.
    """

    coords: tuple

    def __post_init__(self) -> None:
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != 3:
            raise InputError(f"A plane point has three coordinates, got {len(coords)}.")
        if all(c == 0 for c in coords):
            raise InputError("(0:0:0) is not a point of the projective plane.")
        last = next(c for c in reversed(coords) if c != 0)
        object.__setattr__(self, "coords", tuple(c / last for c in coords))

    def veronese(self) -> tuple:
        x0, x1, x2 = self.coords
        return (x0 * x0, x1 * x1, x2 * x2, x0 * x1, x0 * x2, x1 * x2)

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coords]


@dataclass(frozen=True)
class SixPointConfig:
    """An ordered six-tuple of plane points, the blow-up model of a marked cubic surface."""

    points: tuple

    def __post_init__(self) -> None:
        points = tuple(p if isinstance(p, ProjPoint2) else ProjPoint2(tuple(p)) for p in self.points)
        if len(points) != 6:
            raise InputError(f"A configuration has six points, got {len(points)}.")
        object.__setattr__(self, "points", points)

    @classmethod
    def from_coordinates(cls, rows: Sequence[Sequence[Union[int, Fraction, str]]]) -> "SixPointConfig":
        return cls(tuple(ProjPoint2(tuple(parse_rational(c) for c in row)) for row in rows))

    def point(self, index: int) -> ProjPoint2:
        """The point with label ``index`` in 1..6."""
        return self.points[index - 1]

    def permuted(self, sigma: Sequence[int]) -> "SixPointConfig":
        """
        Relabels the points by a permutation of {1..6}: the point formerly called
        p_i is called p_sigma(i) afterwards.

        Parameters:
        ----------
        sigma : Sequence[int]
            ``sigma[i - 1]`` is the image of i.
        """
        relabelled = [None] * 6
        for i, image in enumerate(sigma):
            relabelled[image - 1] = self.points[i]
        return SixPointConfig(tuple(relabelled))

    def transformed(self, matrix: QMatrix) -> "SixPointConfig":
        """Applies a projective linear map to all six points."""
        return SixPointConfig(tuple(ProjPoint2(matrix @ p.coords) for p in self.points))

    def to_json(self) -> list:
        return [p.to_json() for p in self.points]


@dataclass(frozen=True)
class NaiveCoords:
    """The coordinates (w, x, y, z) of the naive chart p5 = (w:x:1), p6 = (y:z:1)."""

    w: Fraction
    x: Fraction
    y: Fraction
    z: Fraction

    def __post_init__(self) -> None:
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def as_tuple(self) -> tuple:
        return (self.w, self.x, self.y, self.z)

    def to_config(self) -> SixPointConfig:
        return naive_configuration(self)


def naive_configuration(n: NaiveCoords) -> SixPointConfig:
    return SixPointConfig(((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (n.w, n.x, 1), (n.y, n.z, 1)))


def _det3(a: Sequence[Fraction], b: Sequence[Fraction], c: Sequence[Fraction]) -> Fraction:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def minor(c: SixPointConfig, triple: Sequence[int]) -> Fraction:
    """
    The 3x3 minor m_{i1,i2,i3} of the canonical coordinate rows, indices sorted.

    Parameters:
    ----------
    c : SixPointConfig
        The configuration.
    triple : Sequence[int]
        Three distinct labels in 1..6.
    """
    indices = sorted(triple)
    if len(set(indices)) != 3 or indices[0] < 1 or indices[-1] > 6:
        raise InputError(f"A minor needs three distinct labels in 1..6, got {tuple(triple)}.")
    return _det3(*(c.point(i).coords for i in indices))


def d2(c: SixPointConfig) -> Fraction:
    """Determinant of the 6x6 matrix of degree-two monomials of the six points."""
    return QMatrix.from_rows([p.veronese() for p in c.points], cols=6).determinant()


def d2_from_minors(c: SixPointConfig) -> Fraction:
    """-det [[m134 m156, m135 m146], [m234 m256, m235 m246]], which equals d2 identically."""
    m = {t: minor(c, t) for t in ((1, 3, 4), (1, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 4), (2, 5, 6), (2, 3, 5), (2, 4, 6))}
    return -(m[1, 3, 4] * m[1, 5, 6] * m[2, 3, 5] * m[2, 4, 6] - m[1, 3, 5] * m[1, 4, 6] * m[2, 3, 4] * m[2, 5, 6])


def check_quadric_relation(c: SixPointConfig) -> bool:
    return d2(c) == d2_from_minors(c)


def general_position_witness(c: SixPointConfig) -> Optional[Union[tuple, str]]:
    """The first collinear triple, ``"conic"`` when all six lie on a conic, or None."""
    for triple in TRIPLES:
        if minor(c, triple) == 0:
            return triple
    if d2(c) == 0:
        return "conic"
    return None


def general_position(c: SixPointConfig) -> bool:
    return general_position_witness(c) is None


def require_general_position(c: SixPointConfig) -> None:
    witness = general_position_witness(c)
    if witness is not None:
        description = "the six points lie on a conic" if witness == "conic" else f"points {witness} are collinear"
        logging.error(f"Configuration is not in general position: {description}.")
        raise DegenerateConfig(f"Not in general position: {description}.", witness=witness if witness == "conic" else list(witness))


def _inverse3(matrix: QMatrix) -> QMatrix:
    columns = []
    for k in range(3):
        unit = [1 if i == k else 0 for i in range(3)]
        columns.append(matrix.solve(unit))
    return QMatrix.from_rows([[columns[j][i] for j in range(3)] for i in range(3)], cols=3)


def normalize_to_standard(c: SixPointConfig) -> tuple:
    """
    Moves p1..p4 to the standard frame and reads off the naive coordinates.

    Parameters:
    ----------
    c : SixPointConfig
        A configuration in general position.

    Returns:
    -------
    tuple[NaiveCoords, QMatrix]
        The naive coordinates (w, x, y, z) and the 3x3 matrix (defined up to
        scaling) carrying p1..p4 to (1:0:0), (0:1:0), (0:0:1), (1:1:1).
    """
    require_general_position(c)
    frame = QMatrix.from_rows([[c.point(j).coords[i] for j in (1, 2, 3)] for i in range(3)], cols=3)
    weights = frame.solve(c.point(4).coords)
    scaled = QMatrix.from_rows([[frame[i, j] * weights[j] for j in range(3)] for i in range(3)], cols=3)
    transform = _inverse3(scaled)
    images = []
    for label in (5, 6):
        image = transform @ c.point(label).coords
        if image[2] == 0:
            logging.error(f"Point p{label} is mapped to the line at infinity.")
            raise DegenerateConfig(f"The third coordinate of p{label} vanishes in the standard frame.", witness=label)
        images.append((image[0] / image[2], image[1] / image[2]))
    (w, x), (y, z) = images
    return NaiveCoords(w, x, y, z), transform


def partner(n: NaiveCoords) -> NaiveCoords:
    """
    The partner point identified with ``n`` by the double cover of the naive chart.

    With N = wz - xy the partner is
    w' = N(z-1)/((x-z)(y-z)), x' = N(y-1)/((w-y)(y-z)),
    y' = N(x-1)/((w-x)(x-z)), z' = N(w-1)/((w-x)(w-y)).
    """
    w, x, y, z = n.as_tuple()
    denominators = ((x - z) * (y - z), (w - y) * (y - z), (w - x) * (x - z), (w - x) * (w - y))
    if any(d == 0 for d in denominators):
        logging.error(f"Partner map undefined at {n.as_tuple()}.")
        raise NotDefinedHere("A denominator of the partner map vanishes.", witness=[format_rational(v) for v in n.as_tuple()])
    numerator = w * z - x * y
    image = (
        numerator * (z - 1) / denominators[0],
        numerator * (y - 1) / denominators[1],
        numerator * (x - 1) / denominators[2],
        numerator * (w - 1) / denominators[3],
    )
    if any(v == 0 for v in image):
        logging.error(f"Partner of {n.as_tuple()} leaves the chart.")
        raise NotDefinedHere("The partner point has a vanishing coordinate.", witness=[format_rational(v) for v in image])
    return NaiveCoords(*image)


def cremona_i123(n: NaiveCoords) -> NaiveCoords:
    """The quadratic transformation centred at p1, p2, p3: componentwise reciprocals."""
    if any(v == 0 for v in n.as_tuple()):
        logging.error(f"Quadratic transformation undefined at {n.as_tuple()}.")
        raise NotDefinedHere("The quadratic transformation needs nonzero coordinates.")
    return NaiveCoords(*(1 / v for v in n.as_tuple()))


def random_configuration(rng: np.random.Generator, coordinate_range: int = 20, max_attempts: int = 10_000) -> SixPointConfig:
    """A configuration with integer coordinates in [-r, r], retried until in general position."""
    for _ in range(max_attempts):
        rows = rng.integers(-coordinate_range, coordinate_range + 1, size=(6, 3))
        if any(not row.any() for row in rows):
            continue
        config = SixPointConfig(tuple(tuple(int(v) for v in row) for row in rows))
        if general_position(config):
            return config
    raise DegenerateConfig(f"No general-position configuration found in {max_attempts} attempts.")


def random_configurations(count: int, seed: int, coordinate_range: int = 20) -> Iterator[SixPointConfig]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield random_configuration(rng, coordinate_range)


def random_naive_coords(rng: np.random.Generator, coordinate_range: int = 20, max_attempts: int = 10_000) -> NaiveCoords:
    """Nonzero integer naive coordinates whose configuration is in general position."""
    for _ in range(max_attempts):
        values = rng.integers(-coordinate_range, coordinate_range + 1, size=4)
        if not values.all():
            continue
        n = NaiveCoords(*(int(v) for v in values))
        if general_position(naive_configuration(n)):
            return n
    raise DegenerateConfig(f"No admissible naive coordinates found in {max_attempts} attempts.")


def random_invertible_matrix(rng: np.random.Generator, coordinate_range: int = 5) -> QMatrix:
    while True:
        matrix = QMatrix.from_rows(rng.integers(-coordinate_range, coordinate_range + 1, size=(3, 3)).tolist(), cols=3)
        if matrix.determinant() != 0:
            return matrix
