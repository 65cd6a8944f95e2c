from steps.basis_reduction_step import basis_reduction_step
from steps.cubic_restriction_step import cubic_restriction_step
from steps.data_extraction_step import data_extraction_step
from steps.descent_space_step import descent_space_step
from steps.point_search_step import point_search_step
from steps.surface_recovery_step import surface_recovery_step
from zenml import Model, pipeline


@pipeline(
    model=Model(
        # the name uniquely identifies the model
        name="cubic_surface_twist"),
    enable_cache=False,
)
def twist_pipeline(job_path: str):
    """
    Defines the twisted moduli search from a job file to a rational cubic surface
    """

    # job extraction step
    job = data_extraction_step(file_path=job_path, kind="twist")

    # descent space step
    descent_model = descent_space_step(job)

    # LLL reduction, rebased on anchors when the job lists them
    reduced_model = basis_reduction_step(descent_model, job)

    # restriction of the 30 cubic relations
    restricted_model = cubic_restriction_step(reduced_model)

    # point search step
    points = point_search_step(restricted_model, job)

    # surface recovery step
    outcome = surface_recovery_step(restricted_model, points, job)

    return outcome


if __name__ == "__main__":
    from pathlib import Path

    run = twist_pipeline(job_path=str(Path(__file__).parent.parent / "tests" / "fixtures" / "twist_trivial.json"))
