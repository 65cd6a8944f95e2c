from fractions import Fraction

import pytest

from src.clebsch_inv import (
    ClebschVector,
    PentahedralCoeffs,
    SigmaVector,
    clebsch_from_gamma,
    clebsch_from_power_sums,
    clebsch_from_sigma,
    elementary_symmetric,
    power_sum_monomial_ranks,
    quintic_from_sigma,
    sigma_from_clebsch,
    sigma_from_quintic,
    weighted_equal,
)
from src.coble_gamma import PowerSums, evaluate_all, sample_gamma_vectors
from src.errors import InputError, NoProperPentahedron, ZeroVector
from src.exact_arith import UniPoly
from src.plane_config import NaiveCoords, naive_configuration

SPLIT = ClebschVector(736, 5184, 82944, -14929920, 429981696)


def test_normalisation_of_a():
    assert clebsch_from_power_sums(PowerSums(1, 0, 0, 0, 0)).a == -6
    with pytest.raises(ZeroVector):
        clebsch_from_power_sums(PowerSums(0, 0, 0, 0, 0))


def test_clebsch_from_sigma_examples():
    assert clebsch_from_sigma(SigmaVector((5, 10, 10, 5, 1))).as_tuple() == (-15, 5, 5, 10, 1)
    assert clebsch_from_sigma(SigmaVector((0, 0, 0, 0, 1))).as_tuple() == (0, 0, 0, 0, 1)
    assert clebsch_from_sigma(SigmaVector((1, 1, 1, 1, 0))).as_tuple() == (1, 0, 0, 0, 0)
    with pytest.raises(ZeroVector):
        clebsch_from_sigma(SigmaVector((1, 2, 0, 0, 0)))


def test_sigma_from_clebsch_examples():
    assert sigma_from_clebsch(ClebschVector(-15, 5, 5, 10, 1)).values == (5, 10, 10, 5, 1)
    with pytest.raises(NoProperPentahedron):
        sigma_from_clebsch(ClebschVector(1, 2, 3, 4, 0))


def test_sigma_round_trip_is_weighted_identity():
    for v in (SPLIT, ClebschVector(1, 0, 0, 0, 1), ClebschVector(Fraction(1, 2), -3, 7, Fraction(5, 3), -2)):
        assert weighted_equal(clebsch_from_sigma(sigma_from_clebsch(v)), v)


def test_split_fixture_sigma():
    s = elementary_symmetric(PentahedralCoeffs((1, -1, 2, -2, 3)))
    assert s.values == (3, -5, -15, 4, 12)
    assert clebsch_from_sigma(s) == SPLIT


def test_elementary_symmetric_example():
    assert elementary_symmetric(PentahedralCoeffs((1, 2, 3, 4, 5))).values == (15, 85, 225, 274, 120)


def test_quintic_round_trip():
    s = SigmaVector((3, -5, -15, 4, 12))
    g = quintic_from_sigma(s)
    assert g == UniPoly.from_roots([1, -1, 2, -2, 3])
    assert sigma_from_quintic(g) == s
    with pytest.raises(InputError):
        sigma_from_quintic(g * 2)


def test_weighted_equal_examples():
    assert weighted_equal(SPLIT, SPLIT.weighted_scaled(3))
    assert weighted_equal(SPLIT, SPLIT.weighted_scaled(Fraction(-2, 5)))
    assert not weighted_equal(SPLIT, ClebschVector(736, 5184, 82944, -14929920, 1))
    assert not weighted_equal(ClebschVector(1, 0, 0, 0, 1), ClebschVector(1, 1, 0, 0, 1))


def test_weighted_equal_needs_a_common_scalar():
    assert not weighted_equal(ClebschVector(0, 1, 0, 1, 0), ClebschVector(0, 1, 0, -1, 0))
    assert weighted_equal(ClebschVector(0, 1, 0, 1, 0), ClebschVector(0, -1, 0, 1, 0))
    with pytest.raises(ZeroVector):
        weighted_equal(SPLIT, ClebschVector(0, 0, 0, 0, 0))


def test_json_parsing():
    assert ClebschVector.from_json(["1/2", 3, "-4", 0, "7"]).a == Fraction(1, 2)
    with pytest.raises(InputError):
        ClebschVector.from_json([1, 2, 3])


def test_invariants_ignore_the_projective_frame():
    g = evaluate_all(naive_configuration(NaiveCoords(2, 3, 5, 7)))
    assert weighted_equal(clebsch_from_gamma(g), clebsch_from_gamma(g.scaled(Fraction(-3, 2))))
    relabelled = evaluate_all(naive_configuration(NaiveCoords(2, 3, 5, 7)).permuted((3, 1, 2, 6, 4, 5)))
    assert weighted_equal(clebsch_from_gamma(g), clebsch_from_gamma(relabelled))


def test_power_sum_monomials_are_independent():
    assert power_sum_monomial_ranks(sample_gamma_vectors(12, seed=21)) == [1, 2, 3, 5, 7]
