from steps.data_extraction_step import data_extraction_step
from steps.equation_step import equation_step
from zenml import Model, pipeline


@pipeline(model=Model(name="cubic_surface_equation"), enable_cache=False)
def equation_pipeline(clebsch_path: str):
    """
    Defines the equation problem from a Clebsch vector file to a cubic surface
    """
    clebsch = data_extraction_step(file_path=clebsch_path, kind="clebsch")
    return equation_step(clebsch)
