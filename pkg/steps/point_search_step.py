import logging

from data_ingestion.job_models import TwistJob
from src.galois_twist import TwistedModel, point_search
from zenml import step

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")


@step(enable_cache=False)
def point_search_step(model: dict, job: dict) -> list:
    twist_job = TwistJob.model_validate(job["document"])
    points = point_search(TwistedModel.from_json(model), twist_job.bound, twist_job.workers)
    logging.info(f"{len(points)} candidate points within height {twist_job.bound}.")
    return [list(p) for p in points]
