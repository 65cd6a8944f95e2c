import pytest

from data_ingestion.data_ingestion import load_document
from src.clebsch_inv import ClebschVector, clebsch_from_gamma, weighted_equal
from src.coble_gamma import evaluate_all
from src.errors import DescentDimensionMismatch, InputError, InvalidFieldData, NotFoundWithinBound, NotOnVariety
from src.exact_arith import UniPoly
from src.galois_twist import (
    GaloisFieldData,
    RhoAssignment,
    TwistedModel,
    TwistResult,
    build_descent_space,
    check_descent_condition,
    cyclic_embedding_pretest,
    point_search,
    quadratic_field,
    real_cyclotomic_field,
    reduce_basis,
    restrict_cubics,
    run_twist_job,
    rho_is_homomorphism,
    transport_gammas,
    trivial_field,
    try_candidates,
)
from src.plane_config import NaiveCoords, naive_configuration
from src.weyl_e6 import find_element_of_order, from_s6

T = UniPoly.variable()
SWAP_12 = RhoAssignment((from_s6((2, 1, 3, 4, 5, 6)),))
CYCLE_123 = RhoAssignment((from_s6((2, 3, 1, 4, 5, 6)),))


@pytest.fixture(scope="module")
def c2_model(relations):
    return build_descent_space(quadratic_field(5), SWAP_12, relations)


def test_field_validation():
    assert quadratic_field(5).validate().degree == 2
    assert trivial_field().validate().degree == 1
    with pytest.raises(InvalidFieldData):
        GaloisFieldData(T * T - 5, (T,)).validate()
    with pytest.raises(InvalidFieldData):
        GaloisFieldData(T * T - 5, (T + 1,)).validate()
    with pytest.raises(InvalidFieldData):
        GaloisFieldData(T * T, (T,)).validate()
    with pytest.raises(InputError):
        quadratic_field(0)


def test_real_cyclotomic_fields():
    cubic = real_cyclotomic_field(7).validate()
    assert cubic.modulus == T**3 + T**2 - 2 * T - 1
    assert real_cyclotomic_field(19).validate().degree == 9
    with pytest.raises(InputError):
        real_cyclotomic_field(9)


def test_cyclic_embedding_pretest_examples():
    assert not cyclic_embedding_pretest(-1, 4)
    assert not cyclic_embedding_pretest(3, 4)
    assert cyclic_embedding_pretest(13, 4)
    assert not cyclic_embedding_pretest(13, 8)
    assert cyclic_embedding_pretest(17, 8)
    for d in range(1, 80):
        if cyclic_embedding_pretest(d, 8):
            assert cyclic_embedding_pretest(d, 4)
    with pytest.raises(InputError):
        cyclic_embedding_pretest(5, 6)


def test_rho_homomorphism_check():
    field = quadratic_field(5)
    assert rho_is_homomorphism(field, SWAP_12)
    assert not rho_is_homomorphism(field, CYCLE_123)
    assert not rho_is_homomorphism(field, RhoAssignment(()))
    assert rho_is_homomorphism(trivial_field(), RhoAssignment(()))


def test_trivial_descent_is_the_standard_structure(relations):
    model = build_descent_space(trivial_field(), RhoAssignment(()), relations)
    assert len(model.basis) == 10
    assert check_descent_condition(model)
    assert len(restrict_cubics(model).cubics) == 30


def test_quadratic_twist(c2_model):
    assert len(c2_model.basis) == 10
    assert check_descent_condition(c2_model)
    restricted = restrict_cubics(c2_model)
    assert len(restricted.cubics) == 30
    assert all(len(c) == 220 for c in restricted.cubics)


def test_non_homomorphism_is_rejected(relations):
    with pytest.raises(DescentDimensionMismatch):
        build_descent_space(quadratic_field(5), CYCLE_123, relations)


def test_reduced_basis_still_descends(c2_model):
    reduced = reduce_basis(c2_model)
    assert len(reduced.basis) == 10
    assert check_descent_condition(reduced)


def test_model_json(c2_model):
    model = restrict_cubics(c2_model)
    document = model.to_json()
    assert TwistedModel.from_json(document) == model
    document["cubic_order"] = "lex"
    with pytest.raises(InputError):
        TwistedModel.from_json(document)


def test_rational_invariants_are_not_on_a_nontrivial_twist(c2_model):
    gamma = evaluate_all(naive_configuration(NaiveCoords(2, 3, 5, 7)))
    with pytest.raises(NotOnVariety):
        transport_gammas(c2_model, gamma)


def test_search_needs_restricted_cubics(c2_model):
    with pytest.raises(InputError):
        point_search(c2_model, 1)


def test_empty_result_is_a_failure(c2_model):
    result = TwistResult(c2_model, [], [], [])
    with pytest.raises(NotFoundWithinBound):
        result.require_success()


def test_trivial_job_recovers_planted_points(fixtures_dir, relations):
    job = load_document(str(fixtures_dir / "twist_trivial.json"), "twist")
    result = run_twist_job(
        job.to_field_data(),
        job.to_rho(),
        job.bound,
        seed=relations.seed,
        samples=relations.sample_count,
        anchors=job.anchor_gammas(),
    )
    result.require_success()
    units = [tuple(1 if j == k else 0 for j in range(10)) for k in range(5)]
    assert all(u in result.points for u in units)
    planted = try_candidates(result.model, units, all_points=True)
    assert [tuple(s["point"]) for s in planted.successes] == units
    for success, anchor in zip(planted.successes, job.anchor_gammas()):
        assert weighted_equal(ClebschVector.from_json(success["clebsch"]), clebsch_from_gamma(anchor))
    restored = TwistResult.from_json(result.model.to_json(), result.to_json())
    assert restored.points == result.points


@pytest.mark.slow
def test_cyclic_nine_twist(weyl_group, relations):
    rho = RhoAssignment((find_element_of_order(weyl_group, 9, seed=19),))
    field = real_cyclotomic_field(19)
    assert rho_is_homomorphism(field, rho)
    model = build_descent_space(field, rho, relations)
    assert len(model.basis) == 10
    assert check_descent_condition(model)
    assert len(restrict_cubics(model).cubics) == 30
