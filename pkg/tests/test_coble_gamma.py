from fractions import Fraction

import pytest

from src.coble_gamma import (
    BASIS_SYMBOLS,
    GammaSymbol,
    GammaVector,
    SymbolKind,
    check_cubic_relation,
    enumerate_symbols,
    evaluate,
    evaluate_all,
    fixed_basis_indices,
    linear_structure,
    power_sums,
    sample_gamma_vectors,
    sampled_relation_space,
)
from src.errors import DegenerateConfig, InputError, InsufficientSamples
from src.plane_config import NaiveCoords, d2, minor, naive_configuration, random_configurations, random_invertible_matrix

STANDARD = naive_configuration(NaiveCoords(2, 3, 5, 7))


def test_forty_symbols_in_canonical_order():
    symbols = enumerate_symbols()
    assert len(symbols) == 40
    assert len(set(symbols)) == 40
    assert [s.kind for s in symbols[:10]] == [SymbolKind.TRIPLE_SPLIT] * 10
    assert str(symbols[0]) == "(123)(456)"
    assert str(symbols[10]) == "(12)(34)(56)"


def test_pair_split_symbols_rotate_only_cyclically():
    assert GammaSymbol.parse("(12)(34)(56)") == GammaSymbol.parse("(34)(56)(12)")
    assert GammaSymbol.parse("(21)(43)(65)") == GammaSymbol.parse("(12)(34)(56)")
    assert GammaSymbol.parse("(12)(34)(56)") != GammaSymbol.parse("(12)(56)(34)")
    assert GammaSymbol.parse("(456)(123)") == GammaSymbol.parse("(123)(456)")


def test_malformed_symbols_are_rejected():
    for text in ("(12)(34)", "(123)(345)", "12)(34)(56)", "(1234)(56)"):
        with pytest.raises(InputError):
            GammaSymbol.parse(text)


def test_triple_split_value():
    assert evaluate(STANDARD, "(123)(456)") == -2 * d2(STANDARD)


def test_pair_split_value():
    expected = Fraction(1)
    for triple in ((1, 3, 4), (2, 3, 4), (3, 5, 6), (4, 5, 6), (1, 2, 5), (1, 2, 6)):
        expected *= minor(STANDARD, triple)
    assert evaluate(STANDARD, "(12)(34)(56)") == expected


def test_all_values_nonzero_in_general_position():
    assert all(v != 0 for v in evaluate_all(STANDARD).values)


def test_evaluation_needs_general_position():
    with pytest.raises(DegenerateConfig):
        evaluate_all(naive_configuration(NaiveCoords(2, 2, 5, 7)))


def test_power_sums_examples():
    assert power_sums(GammaVector((1,) * 40)).as_tuple() == (40, 40, 40, 40, 40)
    assert power_sums(GammaVector((1, -1) + (0,) * 38)).as_tuple() == (2, 2, 2, 2, 2)


def test_cubic_relation():
    assert check_cubic_relation(GammaVector((1,) * 40))
    assert all(check_cubic_relation(evaluate_all(c)) for c in random_configurations(20, seed=11))
    perturbed = list(evaluate_all(STANDARD).values)
    perturbed[10] *= 2
    assert not check_cubic_relation(GammaVector(tuple(perturbed)))


def test_projective_maps_scale_the_vector(rng):
    g = evaluate_all(STANDARD)
    for _ in range(3):
        moved = evaluate_all(STANDARD.transformed(random_invertible_matrix(rng)))
        assert g.is_proportional_to(moved)
    assert not g.is_proportional_to(evaluate_all(naive_configuration(NaiveCoords(2, 3, 5, 8))))


def test_json_uses_symbol_keys():
    document = evaluate_all(STANDARD).to_json()
    assert len(document) == 40
    assert "(123)(456)" in document
    assert GammaVector.from_json(document) == evaluate_all(STANDARD)
    del document["(123)(456)"]
    with pytest.raises(InputError):
        GammaVector.from_json(document)


def test_insufficient_samples():
    vectors = sample_gamma_vectors(5, seed=3)
    with pytest.raises(InsufficientSamples):
        sampled_relation_space(3, vectors, coordinates=range(10))
    with pytest.raises(InputError):
        sampled_relation_space(4, vectors)


def test_linear_span_has_dimension_ten():
    vectors = sample_gamma_vectors(45, seed=5)
    space = sampled_relation_space(1, vectors)
    assert space.rank == 10
    assert len(space.nullspace) == 30


def test_relation_dimensions(relations):
    assert len(relations.basis_indices) == 10
    assert tuple(str(s) for s in relations.basis_symbols) == BASIS_SYMBOLS
    assert len(relations.linear_relations) == 30
    assert relations.quadratic_rank == 55
    assert relations.cubic_rank == 190
    assert len(relations.cubic_relations) == 30


def test_relations_hold_on_fresh_configurations(relations):
    for config in random_configurations(5, seed=99):
        g = evaluate_all(config)
        coordinates = relations.project(g)
        assert relations.expand(coordinates) == list(g.values)
        assert all(v == 0 for v in relations.evaluate_cubics(coordinates))


def test_fixed_basis_is_the_first_independent_set():
    assert fixed_basis_indices() == (0, 1, 2, 4, 5, 10, 11, 16, 17, 23)
    vectors = sample_gamma_vectors(30, seed=11)
    pivots, _ = linear_structure(vectors)
    assert pivots == fixed_basis_indices()
