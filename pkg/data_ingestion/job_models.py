from typing import Annotated, List, Optional, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, RootModel, field_validator

from src.clebsch_inv import ClebschVector
from src.coble_gamma import GammaVector, evaluate_all
from src.exact_arith import parse_rational
from src.galois_twist import GaloisFieldData, RhoAssignment
from src.plane_config import SixPointConfig
from src.settings import get_settings
from src.weyl_e6 import WE6Element


def _check_rational(value: Union[int, str]) -> Union[int, str]:
    parse_rational(value)
    return value


RationalText = Annotated[Union[int, str], AfterValidator(_check_rational)]
PolynomialCoeffs = Annotated[List[RationalText], Field(min_length=1)]
PlanePoint = Annotated[List[RationalText], Field(min_length=3, max_length=3)]
ConfigRows = Annotated[List[PlanePoint], Field(min_length=6, max_length=6)]


class FieldModel(BaseModel):
    """A Galois field Q[T]/(modulus); polynomials are coefficient lists, lowest degree first."""

    model_config = ConfigDict(extra="forbid")

    modulus: PolynomialCoeffs
    automorphisms: List[PolynomialCoeffs] = Field(default_factory=list)
    order_basis: Optional[List[PolynomialCoeffs]] = None

    def to_field_data(self) -> GaloisFieldData:
        return GaloisFieldData.from_json(self.model_dump(exclude_none=True))


class TwistJob(BaseModel):
    """
    A twist job document.

    ``rho`` lists, for every automorphism generator in order, the images of the
    27 line labels in canonical label order. ``anchor_configs`` are optional
    configurations whose invariants are moved onto unit vectors of the search
    lattice (meaningful for the trivial twist).
    """

    model_config = ConfigDict(extra="forbid")

    field: FieldModel
    rho: List[Annotated[List[str], Field(min_length=27, max_length=27)]]
    bound: int = Field(default_factory=lambda: get_settings().search_bound, ge=0)
    seed: Optional[int] = None
    samples: Optional[int] = Field(default=None, ge=1)
    anchor_configs: List[ConfigRows] = Field(default_factory=list, max_length=10)
    all_points: bool = False
    workers: Optional[int] = Field(default=None, ge=1)

    @field_validator("rho")
    @classmethod
    def _labels_are_permutations(cls, value: list) -> list:
        for images in value:
            WE6Element.from_json(images)
        return value

    def to_field_data(self) -> GaloisFieldData:
        return self.field.to_field_data()

    def to_rho(self) -> RhoAssignment:
        return RhoAssignment.from_json(self.rho)

    def anchor_gammas(self) -> List[GammaVector]:
        return [evaluate_all(SixPointConfig.from_coordinates(rows)) for rows in self.anchor_configs]


class ConfigDocument(RootModel[ConfigRows]):
    """Six plane points as rows of three rational coordinates."""

    def to_config(self) -> SixPointConfig:
        return SixPointConfig.from_coordinates(self.root)


class ClebschDocument(RootModel[Annotated[List[RationalText], Field(min_length=5, max_length=5)]]):
    """A Clebsch vector [A, B, C, D, E]."""

    def to_clebsch(self) -> ClebschVector:
        return ClebschVector.from_json(self.root)

