import logging

from data_ingestion.job_models import TwistJob
from src.coble_gamma import gamma_relations
from src.galois_twist import build_descent_space
from src.settings import get_settings
from zenml import step

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")


@step(enable_cache=False)
def descent_space_step(job: dict) -> dict:
    twist_job = TwistJob.model_validate(job["document"])
    settings = get_settings()
    seed = settings.seed if twist_job.seed is None else twist_job.seed
    relations = gamma_relations(seed, twist_job.samples or settings.relation_samples)
    model = build_descent_space(twist_job.to_field_data(), twist_job.to_rho(), relations)
    logging.info(f"Descent space of dimension {len(model.basis)} over a field of degree {model.field_data.degree}.")
    return model.to_json()
