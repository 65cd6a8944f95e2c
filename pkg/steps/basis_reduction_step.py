from data_ingestion.job_models import TwistJob
from src.galois_twist import TwistedModel, rebase_on_points, reduce_basis, transport_gammas
from zenml import step


@step(enable_cache=False)
def basis_reduction_step(model: dict, job: dict) -> dict:
    twisted = reduce_basis(TwistedModel.from_json(model))
    anchors = TwistJob.model_validate(job["document"]).anchor_gammas()
    if anchors:
        twisted = rebase_on_points(twisted, [transport_gammas(twisted, g) for g in anchors])
    return twisted.to_json()
