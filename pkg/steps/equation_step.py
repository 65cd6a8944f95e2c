from data_ingestion.job_models import ClebschDocument
from src.surface_builder import solve_equation_problem
from zenml import step


@step(enable_cache=False)
def equation_step(clebsch: dict) -> dict:
    vector = ClebschDocument.model_validate(clebsch["document"]).to_clebsch()
    return solve_equation_problem(vector).to_json()
