"""Configuration settings for the closure engine."""

from functools import lru_cache
from typing import Any, Dict, List, Literal, Tuple, Type

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class SampleConfig(BaseModel):
    """Bounds for the sampled ideal/element universe of the axiom checker."""

    seed: int
    samples: int = Field(gt=0)
    max_generators: int = Field(gt=0)
    max_degree: int = Field(gt=0)
    degree_bound: int = Field(gt=0)
    witnesses: List[str] = Field(default_factory=list)


class CorrespondenceConfig(BaseModel):
    """Bounds for the closure/semistar round-trip checks."""

    seed: int
    samples: int = Field(gt=0)
    max_generators: int = Field(gt=0)
    max_degree: int = Field(gt=0)
    numerator_degree: int = Field(gt=0)


class Settings(BaseSettings):
    """Engine settings with validation.

    Values come from constructor arguments only; the command line feeds its
    flags in through :func:`override_settings`.
    """

    model_config = SettingsConfigDict(case_sensitive=False, validate_default=True)

    # Sampling
    seed: int = 20240601
    degree_bound: int = Field(default=6, gt=0)
    axiom_samples: int = Field(default=100, gt=0)
    correspondence_samples: int = Field(default=30, gt=0)
    max_generators: int = Field(default=4, gt=0)
    max_sample_degree: int = Field(default=5, gt=0)
    witnesses: List[str] = Field(default_factory=list)

    # Semi-decision bounds
    power_oracle_bound: int = Field(default=6, gt=0)
    frobenius_e_max: int = Field(default=2, ge=0)

    # Groebner kernel
    groebner_pair_ceiling: int = Field(default=50000, gt=0)

    # Output
    output_format: Literal["text", "json"] = "text"
    log_level: str = "WARNING"
    fail_fast: bool = False

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)

    def sample_config(self, samples: int = 0) -> SampleConfig:
        """Sampling configuration for the axiom checker."""
        return SampleConfig(
            seed=self.seed,
            samples=samples or self.axiom_samples,
            max_generators=self.max_generators,
            max_degree=self.max_sample_degree,
            degree_bound=self.degree_bound,
            witnesses=list(self.witnesses),
        )

    def correspondence_config(self, samples: int = 0) -> CorrespondenceConfig:
        """Sampling configuration for the correspondence checks."""
        return CorrespondenceConfig(
            seed=self.seed,
            samples=samples or self.correspondence_samples,
            max_generators=self.max_generators,
            max_degree=self.degree_bound,
            numerator_degree=self.degree_bound,
        )


_overrides: Dict[str, Any] = {}


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings(**_overrides)


def override_settings(**values: Any) -> Settings:
    """Replace the cached settings; ``None`` values keep the defaults."""
    _overrides.clear()
    _overrides.update({key: value for key, value in values.items() if value is not None})
    get_settings.cache_clear()
    return get_settings()
