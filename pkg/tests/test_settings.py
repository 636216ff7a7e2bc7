"""Tests for engine settings."""

import pytest
from pydantic import ValidationError

from src.config.settings import Settings, get_settings, override_settings


class TestSettings:
    """Test settings sources and overrides."""

    def test_environment_is_ignored(self, monkeypatch):
        """Test that values only come from arguments."""
        monkeypatch.setenv("SEED", "5")
        monkeypatch.setenv("FAIL_FAST", "true")
        settings = Settings()
        assert settings.seed == 20240601
        assert settings.fail_fast is False

    def test_override_skips_none(self):
        """Test that None keeps the default."""
        settings = override_settings(seed=3, degree_bound=None)
        assert settings.seed == 3
        assert settings.degree_bound == 6
        assert get_settings() is settings

    def test_validation(self):
        """Test that bounds must be positive."""
        with pytest.raises(ValidationError):
            Settings(degree_bound=0)
        with pytest.raises(ValidationError):
            Settings(output_format="xml")

    def test_sample_configs(self):
        """Test the derived sampling configurations."""
        settings = Settings(seed=4, degree_bound=3, witnesses=["x"])
        axioms = settings.sample_config(7)
        assert (axioms.seed, axioms.samples, axioms.degree_bound) == (4, 7, 3)
        assert axioms.witnesses == ["x"]
        assert settings.sample_config().samples == settings.axiom_samples
        correspondence = settings.correspondence_config()
        assert correspondence.samples == 30
        assert correspondence.numerator_degree == 3
