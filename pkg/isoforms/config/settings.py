"""Library and CLI settings using Pydantic Settings."""

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from isoforms.geometry.numkit import Tolerance


class Settings(BaseSettings):
    """Settings loaded from environment variables (prefix ``ISOFORMS_``)."""

    # Numerical tolerances
    rank_tol: float = 1e-12
    angle_tol: float = 1e-7
    residual_tol: float = 1e-9
    cluster_tol: float = 1e-4  # spread of a perturbed Jordan cluster
    max_dimension: int = 64

    # Output
    json_digits: int = 17
    human_digits: int = 6
    golden_dir: str = "golden"

    # Runtime
    log_level: str = "WARNING"
    workers: int = 1

    @field_validator("rank_tol", "angle_tol", "residual_tol", "cluster_tol")
    @classmethod
    def check_positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("tolerances must be strictly positive")
        return v

    @field_validator("workers", "max_dimension")
    @classmethod
    def check_at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v):
        if isinstance(v, str):
            return v.strip().upper()
        return v

    def tolerance(
        self, rank_tol: float | None = None, angle_tol: float | None = None
    ) -> Tolerance:
        """Build the immutable tolerance bundle, applying per-request overrides."""
        return Tolerance(
            rank_tol=rank_tol if rank_tol is not None else self.rank_tol,
            angle_tol=angle_tol if angle_tol is not None else self.angle_tol,
            residual_tol=self.residual_tol,
            cluster_tol=self.cluster_tol,
            max_dimension=self.max_dimension,
        )

    model_config = SettingsConfigDict(
        env_prefix="ISOFORMS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


def get_settings() -> Settings:
    """Get settings instance."""
    return Settings()
