from data_ingestion.job_models import TwistJob
from src.galois_twist import TwistedModel, try_candidates
from zenml import step


@step(enable_cache=False)
def surface_recovery_step(model: dict, points: list, job: dict) -> dict:
    """
    Tests the candidate points in order and records a failure for each unusable one.

    Returns the restricted model together with the result record, so the
    caller can rebuild a TwistResult.
    """
    all_points = TwistJob.model_validate(job["document"]).all_points
    result = try_candidates(TwistedModel.from_json(model), points, all_points)
    return {"model": model, "result": result.to_json()}
