import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from src.coble_gamma import GammaVector, PowerSums, power_sums
from src.errors import InputError, NoProperPentahedron, ZeroVector
from src.exact_arith import QMatrix, UniPoly, format_rational, parse_rational

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

WEIGHTS = (1, 2, 3, 4, 5)


@dataclass(frozen=True)
class ClebschVector:
    """A point [A:B:C:D:E] of the weighted projective space P(1,2,3,4,5)."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    e: Fraction

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d", "e"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c, self.d, self.e)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.as_tuple())

    def weighted_scaled(self, factor: Fraction) -> "ClebschVector":
        return ClebschVector(*(v * Fraction(factor) ** w for v, w in zip(self.as_tuple(), WEIGHTS)))

    def to_json(self) -> list:
        return [format_rational(v) for v in self.as_tuple()]

    @classmethod
    def from_json(cls, data: Sequence) -> "ClebschVector":
        if len(data) != 5:
            raise InputError(f"A Clebsch vector has five entries, got {len(data)}.")
        return cls(*(parse_rational(v) for v in data))


@dataclass(frozen=True)
class SigmaVector:
    """The elementary symmetric functions sigma_1..sigma_5 of the pentahedral coefficients."""

    values: tuple

    def __post_init__(self) -> None:
        if len(self.values) != 5:
            raise InputError(f"A sigma vector has five entries, got {len(self.values)}.")
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def __getitem__(self, k: int) -> Fraction:
        """``s[k]`` is sigma_k for k in 1..5."""
        return self.values[k - 1]

    def to_json(self) -> list:
        return [format_rational(v) for v in self.values]


@dataclass(frozen=True)
class PentahedralCoeffs:
    """Coefficients a_0..a_4 of a_0 X_0^3 + ... + a_4 X_4^3 on X_0 + ... + X_4 = 0."""

    values: tuple

    def __post_init__(self) -> None:
        if len(self.values) != 5:
            raise InputError(f"A pentahedral form has five coefficients, got {len(self.values)}.")
        object.__setattr__(self, "values", tuple(self.values))


def _nonzero_or_fail(v: ClebschVector, origin: str) -> ClebschVector:
    if v.is_zero():
        logging.error(f"{origin} produced the zero vector.")
        raise ZeroVector(f"{origin} vanishes identically; the weighted point is undefined.")
    return v


def clebsch_from_power_sums(p: PowerSums) -> ClebschVector:
    """
    Clebsch's invariants from the power sums P2..P10 of the 40 invariants.

    Parameters:
    ----------
    p : PowerSums
        P_2k = sum of gamma^(2k) over the 40 invariants.

    Returns:
    -------
    ClebschVector
        [A:B:C:D:E], with the normalisation A = -6 P2.
    """
    p2, p4, p6, p8, p10 = p.as_tuple()
    F = Fraction
    a = -6 * p2
    b = -24 * p4 + F(41, 16) * p2**2
    c = F(576, 13) * p6 - F(396, 13) * p4 * p2 + F(29, 13) * p2**3
    d = (
        F(-62208, 1171) * p8
        + F(54864, 1171) * p6 * p2
        + F(203616, 1171) * p4**2
        - F(61287, 1171) * p4 * p2**2
        + F(13393, 4684) * p2**4
    )
    e = (
        F(41472, 155) * p10
        - F(4605984, 36301) * p8 * p2
        - F(106272, 403) * p6 * p4
        + F(19990440, 471913) * p6 * p2**2
        + F(47719206, 471913) * p4**2 * p2
        - F(7468023, 471913) * p4 * p2**3
        + F(10108327, 18876520) * p2**5
    )
    return _nonzero_or_fail(ClebschVector(a, b, c, d, e), "The power sum formulas")


def clebsch_from_gamma(g: GammaVector) -> ClebschVector:
    return clebsch_from_power_sums(power_sums(g))


def clebsch_from_sigma(s: SigmaVector) -> ClebschVector:
    """[A:B:C:D:E] = [s4^2 - 4 s3 s5, s1 s5^3, s4 s5^4, s2 s5^6, s5^8]."""
    return _nonzero_or_fail(
        ClebschVector(
            s[4] ** 2 - 4 * s[3] * s[5],
            s[1] * s[5] ** 3,
            s[4] * s[5] ** 4,
            s[2] * s[5] ** 6,
            s[5] ** 8,
        ),
        "The pentahedral formulas",
    )


def sigma_from_clebsch(v: ClebschVector) -> SigmaVector:
    """
    The sigma vector [B, D, (C^2 - AE)/4, CE, E^2] of a pentahedral form with the given invariants.

    The result is weighted-equivalent (weights 1..5) to the sigma vector of any
    pentahedral form with invariants v.
    """
    if v.e == 0:
        logging.error("E vanishes; no proper pentahedral form.")
        raise NoProperPentahedron("E = 0: the invariants do not come from a proper pentahedral form.")
    return SigmaVector((v.b, v.d, (v.c**2 - v.a * v.e) / 4, v.c * v.e, v.e**2))


def elementary_symmetric(a: PentahedralCoeffs) -> SigmaVector:
    e = [Fraction(1), Fraction(0), Fraction(0), Fraction(0), Fraction(0), Fraction(0)]
    for x in a.values:
        for k in range(5, 0, -1):
            e[k] = e[k] + e[k - 1] * x
    return SigmaVector(tuple(e[1:]))


def quintic_from_sigma(s: SigmaVector) -> UniPoly:
    """g(T) = T^5 - s1 T^4 + s2 T^3 - s3 T^2 + s4 T - s5."""
    return UniPoly((-s[5], s[4], -s[3], s[2], -s[1], Fraction(1)))


def sigma_from_quintic(g: UniPoly) -> SigmaVector:
    """Reads sigma back from a monic quintic."""
    if g.degree != 5 or g.leading != 1:
        raise InputError(f"Expected a monic quintic, got {g}.")
    return SigmaVector(tuple((-1) ** k * g.coefficient(5 - k) for k in range(1, 6)))


def _bezout(values: Sequence[int]) -> tuple:
    """gcd of positive integers together with integer coefficients c with sum c_i x_i = gcd."""
    g, coefficients = values[0], [1]
    for x in values[1:]:
        # extended Euclid on (g, x)
        old_r, r, old_s, s, old_t, t = g, x, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        coefficients = [c * old_s for c in coefficients] + [old_t]
        g = old_r
    return g, coefficients


def weighted_equal(u: ClebschVector, v: ClebschVector) -> bool:
    """
    True iff v = (l A, l^2 B, l^3 C, l^4 D, l^5 E) for some nonzero l over the algebraic closure.

    With ratios r_i = v_i / u_i on the common support and g the gcd of the
    weights there, a Bezout combination mu = prod r_i^(c_i) equals l^g, so the
    condition is r_i = mu^(w_i / g) for every supported index. Comparing pairs
    of ratios alone is not enough: (0,1,0,1,0) and (0,1,0,-1,0) pass every
    pairwise test but are not equivalent.
    """
    if u.is_zero() or v.is_zero():
        logging.error("Weighted comparison with the zero vector.")
        raise ZeroVector("The zero vector is not a weighted projective point.")
    left, right = u.as_tuple(), v.as_tuple()
    if any((x == 0) != (y == 0) for x, y in zip(left, right)):
        return False
    support = [k for k in range(5) if left[k] != 0]
    ratios = [right[k] / left[k] for k in support]
    weights = [WEIGHTS[k] for k in support]
    g, coefficients = _bezout(weights)
    mu = Fraction(1)
    for ratio, c in zip(ratios, coefficients):
        mu *= ratio**c
    return all(ratio == mu ** (w // g) for ratio, w in zip(ratios, weights))


def _weighted_monomials(weight: int) -> list:
    """Exponent tuples over P2..P10 (weights 1..5) of total weight ``weight``."""
    monomials = []
    for length in range(1, weight + 1):
        for combo in combinations_with_replacement(range(5), length):
            if sum(k + 1 for k in combo) == weight:
                monomials.append(combo)
    return monomials


def power_sum_monomial_ranks(samples: Sequence[GammaVector]) -> list:
    """
    Rank of the weighted power-sum monomials of each weight 1..5 on the samples.

    Parameters:
    ----------
    samples : Sequence[GammaVector]
        Invariant vectors of sampled configurations.

    Returns:
    -------
    list[int]
        The ranks; 1, 2, 3, 5, 7 when P2..P10 are algebraically independent
        on the sampled variety.
    """
    sums = [power_sums(g).as_tuple() for g in samples]
    ranks = []
    for weight in range(1, 6):
        monomials = _weighted_monomials(weight)
        rows = []
        for values in sums:
            row = []
            for combo in monomials:
                product = Fraction(1)
                for k in combo:
                    product *= values[k]
                row.append(product)
            rows.append(row)
        ranks.append(QMatrix.from_rows(rows, cols=len(monomials)).rank())
        logging.info(f"Weight {weight}: rank {ranks[-1]} of {len(monomials)} monomials.")
    return ranks
