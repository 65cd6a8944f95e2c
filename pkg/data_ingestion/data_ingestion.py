import logging
from abc import ABC, abstractmethod
from pathlib import Path

from pydantic import BaseModel, ValidationError

from data_ingestion.job_models import ClebschDocument, ConfigDocument, TwistJob
from src.errors import InputError

# Configure logging for the script
logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")


class DocumentExtractor(ABC):
    """
    Interface for reading and validating the JSON input documents.
    """

    @abstractmethod
    def extract(self, file_path: str) -> BaseModel:
        """
        Reads the document at the given path and returns the validated model.

        Parameters:
        file_path (str): Path of the JSON document.

        Returns:
        BaseModel: The validated document.
        """
        pass

    @staticmethod
    def _read(file_path: str) -> str:
        path = Path(file_path)
        if not path.is_file():
            logging.error(f"Input file {file_path} does not exist.")
            raise InputError(f"No such input file: {file_path}")
        if path.suffix != ".json":
            raise InputError(f"Provided file {file_path} is not a JSON document.")
        logging.info(f"Reading {file_path}.")
        return path.read_text(encoding="utf-8")


class JsonConfigExtractor(DocumentExtractor):
    """Reads a six-point configuration."""

    def extract(self, file_path: str) -> ConfigDocument:
        return ConfigDocument.model_validate_json(self._read(file_path))


class JsonClebschExtractor(DocumentExtractor):
    """Reads a Clebsch vector."""

    def extract(self, file_path: str) -> ClebschDocument:
        return ClebschDocument.model_validate_json(self._read(file_path))


class JsonTwistJobExtractor(DocumentExtractor):
    """Reads a twist job."""

    def extract(self, file_path: str) -> TwistJob:
        return TwistJob.model_validate_json(self._read(file_path))


class DocumentExtractionFactory:
    """
    Factory class for creating document extractors based on the document kind.
    """

    @staticmethod
    def get_document_extractor(kind: str) -> DocumentExtractor:
        """
        Returns an extractor for the given document kind.

        Parameters:
        kind (str): One of "config", "clebsch" or "twist".

        Returns:
        DocumentExtractor: An instance of the appropriate extractor.
        """
        if kind == "config":
            return JsonConfigExtractor()
        elif kind == "clebsch":
            return JsonClebschExtractor()
        elif kind == "twist":
            return JsonTwistJobExtractor()
        else:
            raise InputError(f"No extractor available for document kind: {kind}")


def load_document(file_path: str, kind: str) -> BaseModel:
    """
    Reads a document and turns validation problems into InputError.

    Parameters:
    file_path (str): Path of the JSON document.
    kind (str): The document kind passed to the factory.

    Returns:
    BaseModel: The validated document.
    """
    extractor = DocumentExtractionFactory.get_document_extractor(kind)
    try:
        return extractor.extract(file_path)
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "document"
        logging.error(f"Invalid {kind} document {file_path}: {exc.error_count()} problems.")
        problems = [{"loc": [str(part) for part in e["loc"]], "msg": e["msg"]} for e in exc.errors()]
        raise InputError(f"Invalid {kind} document at {location}: {first['msg']}", witness=problems) from exc
