"""
Configuration management using environment variables.

This module handles loading configuration from environment variables
(and an optional .env file at the repository root) and provides a
centralized settings object.
"""

from pathlib import Path

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings


# Load environment variables from .env file; real environment wins
env_path = Path(__file__).parent.parent.parent / ".env"
load_dotenv(env_path, override=False)

ENGINES = ("exact", "lift", "auto")


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # Application Configuration
    LOG_LEVEL: str = Field("INFO", description="Logging level")
    DEBUG: bool = Field(False, description="Debug mode (colored console logs)")
    ENV: str = Field("development", description="Environment (development, test, production)")

    # Solver Configuration
    SOLVER_ENGINE: str = Field("auto", description="Default feasibility engine: exact, lift or auto")
    LIFT_BUDGET_FACTOR: int = Field(10, description="Lift budget = factor * rows * cols")

    # Campaign Configuration
    CAMPAIGN_WORKERS: int = Field(1, description="Worker processes for campaigns")
    PROBE_N_MAX: int = Field(3, description="Largest truncation order for bivariate probes")
    BRUTE_FORCE_SAMPLES: int = Field(1000, description="Random points for the bivariate cross-check")

    # Output Configuration
    SVG_DECIMALS: int = Field(6, description="Decimals kept in SVG coordinates")

    class Config:
        """Pydantic configuration."""
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True
        extra = "ignore"

    def validate_settings(self) -> None:
        """Validate that settings are within their allowed ranges."""
        problems = []
        if self.SOLVER_ENGINE not in ENGINES:
            problems.append(f"SOLVER_ENGINE must be one of {', '.join(ENGINES)}")
        if self.LIFT_BUDGET_FACTOR < 1:
            problems.append("LIFT_BUDGET_FACTOR must be positive")
        if self.CAMPAIGN_WORKERS < 1:
            problems.append("CAMPAIGN_WORKERS must be positive")
        if self.PROBE_N_MAX < 0:
            problems.append("PROBE_N_MAX must be nonnegative")
        if self.BRUTE_FORCE_SAMPLES < 0:
            problems.append("BRUTE_FORCE_SAMPLES must be nonnegative")
        if not 0 <= self.SVG_DECIMALS <= 12:
            problems.append("SVG_DECIMALS must be between 0 and 12")

        if problems:
            raise ValueError(
                f"Invalid configuration: {'; '.join(problems)}\n"
                "Please check your environment or .env file."
            )


# Create settings instance
settings = Settings()
settings.validate_settings()


def get_config() -> Settings:
    """Get configuration instance."""
    return settings
