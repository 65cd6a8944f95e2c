from data_ingestion.data_ingestion import load_document
from zenml import step


@step
def data_extraction_step(file_path: str, kind: str) -> dict:
    document = load_document(file_path, kind)
    return {"kind": kind, "document": document.model_dump(mode="json")}
