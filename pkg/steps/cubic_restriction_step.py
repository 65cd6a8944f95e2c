from src.galois_twist import TwistedModel, restrict_cubics
from zenml import step


@step(enable_cache=False)
def cubic_restriction_step(model: dict) -> dict:
    return restrict_cubics(TwistedModel.from_json(model)).to_json()
