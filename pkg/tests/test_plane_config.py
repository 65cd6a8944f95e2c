from fractions import Fraction

import pytest

from src.errors import DegenerateConfig, InputError, NotDefinedHere
from src.exact_arith import QMatrix
from src.plane_config import (
    NaiveCoords,
    ProjPoint2,
    SixPointConfig,
    check_quadric_relation,
    cremona_i123,
    d2,
    general_position,
    general_position_witness,
    minor,
    naive_configuration,
    normalize_to_standard,
    partner,
    random_configurations,
    random_invertible_matrix,
    require_general_position,
)

STANDARD = naive_configuration(NaiveCoords(2, 3, 5, 7))
CONIC = SixPointConfig(((1, 0, 0), (0, 0, 1), (1, 1, 1), (4, 2, 1), (9, 3, 1), (1, -1, 1)))


def test_points_are_canonical():
    assert ProjPoint2((2, 4, 2)) == ProjPoint2((1, 2, 1))
    assert ProjPoint2((3, 0, 0)).coords == (1, 0, 0)
    with pytest.raises(InputError):
        ProjPoint2((0, 0, 0))


def test_minor_examples():
    assert minor(STANDARD, (1, 2, 3)) == 1
    assert minor(STANDARD, (4, 5, 6)) == -2
    assert minor(STANDARD, (6, 5, 4)) == -2
    with pytest.raises(InputError):
        minor(STANDARD, (1, 1, 2))


def test_general_position_examples():
    assert general_position(STANDARD)
    repeated = SixPointConfig(((1, 0, 0), (1, 0, 0), (0, 0, 1), (1, 1, 1), (2, 3, 1), (5, 7, 1)))
    assert not general_position(repeated)
    assert general_position_witness(CONIC) == "conic"
    assert d2(CONIC) == 0
    assert d2(repeated) == 0


def test_collinear_witness_is_reported():
    collinear = naive_configuration(NaiveCoords(2, 2, 5, 7))
    with pytest.raises(DegenerateConfig) as info:
        require_general_position(collinear)
    assert info.value.witness == [3, 4, 5]


def test_quadric_relation_on_random_configurations():
    assert all(check_quadric_relation(c) for c in random_configurations(10, seed=7))


def test_normalize_standard_form():
    n, transform = normalize_to_standard(STANDARD)
    assert n.as_tuple() == (2, 3, 5, 7)
    assert transform.to_rows() == QMatrix.identity(3).to_rows()


def test_normalize_is_projectively_invariant(rng):
    for _ in range(5):
        moved = STANDARD.transformed(random_invertible_matrix(rng))
        assert normalize_to_standard(moved)[0] == NaiveCoords(2, 3, 5, 7)


def test_normalize_rejects_degenerate_configuration():
    at_infinity = SixPointConfig(((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 0), (5, 7, 1)))
    with pytest.raises(DegenerateConfig):
        normalize_to_standard(at_infinity)


def test_partner_examples():
    with pytest.raises(NotDefinedHere):
        partner(NaiveCoords(2, 3, 4, 6))
    with pytest.raises(NotDefinedHere):
        partner(NaiveCoords(2, 3, 5, 3))


def test_partner_of_partner_is_identity():
    n = NaiveCoords(2, 3, 5, 7)
    assert partner(partner(n)) == n


def test_cremona_examples():
    assert cremona_i123(NaiveCoords(2, 3, 5, 7)).as_tuple() == (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))
    with pytest.raises(NotDefinedHere):
        cremona_i123(NaiveCoords(0, 3, 5, 7))


def test_permuted_moves_points():
    relabelled = STANDARD.permuted((2, 1, 3, 4, 5, 6))
    assert relabelled.point(1) == STANDARD.point(2)
    assert relabelled.point(2) == STANDARD.point(1)
