from fractions import Fraction
from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class PipelineSettings(BaseSettings):
    """
    Tunable defaults of the cubic surface pipeline.

    Every field can be overridden from the environment with the ``CUBIC_``
    prefix, e.g. ``CUBIC_RELATION_SAMPLES=600``.
    """

    model_config = SettingsConfigDict(env_prefix="CUBIC_")

    seed: int = 20240601
    relation_samples: int = Field(default=400, ge=1)
    coordinate_range: int = Field(default=20, ge=2)
    oracle_samples: int = Field(default=4, ge=2)
    search_bound: int = Field(default=1, ge=0)
    workers: int = Field(default=1, ge=1)
    lll_delta: str = "3/4"
    minkowski_precision_bits: int = Field(default=48, ge=8)
    modular_primes: int = Field(default=12, ge=2)

    @field_validator("lll_delta")
    @classmethod
    def _delta_in_range(cls, value: str) -> str:
        delta = Fraction(value)
        if not Fraction(1, 4) < delta < 1:
            raise ValueError("lll_delta must lie strictly between 1/4 and 1")
        return value

    @property
    def delta(self) -> Fraction:
        return Fraction(self.lll_delta)


@lru_cache(maxsize=1)
def get_settings() -> PipelineSettings:
    return PipelineSettings()
