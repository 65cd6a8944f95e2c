import json

import pytest

from data_ingestion.data_ingestion import (
    DocumentExtractionFactory,
    JsonClebschExtractor,
    JsonConfigExtractor,
    JsonTwistJobExtractor,
    load_document,
)
from src.errors import InputError
from src.plane_config import general_position
from src.settings import get_settings


def write(tmp_path, name: str, document) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


def test_factory_returns_matching_extractor():
    assert isinstance(DocumentExtractionFactory.get_document_extractor("config"), JsonConfigExtractor)
    assert isinstance(DocumentExtractionFactory.get_document_extractor("clebsch"), JsonClebschExtractor)
    assert isinstance(DocumentExtractionFactory.get_document_extractor("twist"), JsonTwistJobExtractor)
    with pytest.raises(InputError):
        DocumentExtractionFactory.get_document_extractor("csv")


def test_config_document(fixtures_dir):
    config = load_document(str(fixtures_dir / "config_general.json"), "config").to_config()
    assert general_position(config)
    assert config.point(5).coords == (2, 3, 1)


def test_clebsch_document_accepts_rational_strings(tmp_path):
    path = write(tmp_path, "clebsch.json", ["1/2", -3, "7", 0, "5/3"])
    assert load_document(path, "clebsch").to_clebsch().as_tuple()[0] * 2 == 1


def test_missing_and_foreign_files(tmp_path):
    with pytest.raises(InputError):
        load_document(str(tmp_path / "absent.json"), "config")
    other = tmp_path / "config.txt"
    other.write_text("[]", encoding="utf-8")
    with pytest.raises(InputError):
        load_document(str(other), "config")


@pytest.mark.parametrize(
    "document",
    [
        [[1, 0, 0]] * 5,
        [[1, 0]] * 6,
        [[1, 0, 0.5]] * 6,
        [[1, 0, "1/0"]] * 6,
    ],
)
def test_malformed_configs_are_input_errors(tmp_path, document):
    path = write(tmp_path, "config.json", document)
    with pytest.raises(InputError) as info:
        load_document(path, "config")
    assert info.value.witness


def test_twist_job_defaults(fixtures_dir):
    job = load_document(str(fixtures_dir / "twist_c2.json"), "twist")
    assert job.bound == 1
    assert job.seed is None
    assert not job.all_points
    assert job.to_field_data().validate().degree == 2
    assert len(job.to_rho().images) == 1
    assert job.anchor_gammas() == []


def test_twist_job_bound_defaults_to_settings(tmp_path):
    path = write(tmp_path, "job.json", {"field": {"modulus": [0, 1]}, "rho": []})
    assert load_document(path, "twist").bound == get_settings().search_bound


def test_twist_job_anchors(fixtures_dir):
    job = load_document(str(fixtures_dir / "twist_trivial.json"), "twist")
    gammas = job.anchor_gammas()
    assert len(gammas) == 5
    assert all(all(v != 0 for v in g.values) for g in gammas)


def test_twist_job_rejects_bad_labels_and_fields(fixtures_dir, tmp_path):
    with pytest.raises(InputError):
        load_document(str(fixtures_dir / "twist_malformed.json"), "twist")
    unknown = write(tmp_path, "job.json", {"field": {"modulus": [0, 1]}, "rho": [], "colour": "red"})
    with pytest.raises(InputError):
        load_document(unknown, "twist")
    negative = write(tmp_path, "neg.json", {"field": {"modulus": [0, 1]}, "rho": [], "bound": -1})
    with pytest.raises(InputError):
        load_document(negative, "twist")
