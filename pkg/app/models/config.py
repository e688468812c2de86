"""Configuration models using Pydantic for environment-based settings."""

from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings


class SchemeConfig(BaseSettings):
    """Scheme materialization configuration."""

    element_budget: int = Field(
        default=2_000_000, description="Max sets materialized per level table"
    )
    default_type: str = Field(default="tstar", description="Builtin type name")
    max_level: int = Field(
        default=12, description="Hard cap on levels reached by lazy queries"
    )
    cache_size: int = Field(
        default=1 << 16, description="Entries kept per memoized closure and metric table"
    )

    model_config = {"env_prefix": "SCHEME_", "extra": "ignore"}

    @field_validator("element_budget", "max_level", "cache_size", mode="before")
    @classmethod
    def validate_positive(cls, v):
        if int(v) <= 0:
            raise ValueError(f"Budget must be positive: {v}")
        return int(v)


class VerifyConfig(BaseSettings):
    """Default windows for the verification suites."""

    metric_window: int = Field(default=50, description="Window for metric suites")
    countryman_window: int = Field(default=40, description="Window for order checks")
    chain_window: int = Field(default=30, description="Window for chain labels")
    family_window: int = Field(default=25, description="Window for set families")
    aronszajn_window: int = Field(default=30, description="Window for tree checks")
    coloring_window: int = Field(default=40, description="Window for colorings")
    max_level: int = Field(default=6, description="Deepest level checked")
    cofinality_exhaustive_limit: int = Field(
        default=16, description="Check every subset of m_k up to this size"
    )
    cofinality_samples: int = Field(
        default=10_000, description="Sampled subsets above the exhaustive limit"
    )

    model_config = {"env_prefix": "VERIFY_", "extra": "ignore"}


class ForcingConfig(BaseSettings):
    """Forcing lab budgets and session storage."""

    block_budget: int = Field(default=4, description="Number of omega blocks M")
    scan_budget: int = Field(
        default=200_000, description="Max candidate sets visited by one scan"
    )
    witness_level_budget: int = Field(
        default=24, description="Deepest level searched for witnesses"
    )
    scan_window: int = Field(
        default=40, description="Offset bound for member scans inside the omega block"
    )
    session_dir: Path = Field(
        default=Path("./force_session"), description="Session directory"
    )

    model_config = {"env_prefix": "FORCING_", "extra": "ignore"}

    @field_validator("block_budget", "scan_budget", "witness_level_budget", "scan_window", mode="before")
    @classmethod
    def validate_positive(cls, v):
        if int(v) <= 0:
            raise ValueError(f"Budget must be positive: {v}")
        return int(v)


class CeleryConfig(BaseSettings):
    """Celery task queue configuration."""

    broker_url: str = Field(
        default="redis://redis:6379/0", description="Message broker URL"
    )
    result_backend: str = Field(
        default="redis://redis:6379/0", description="Result backend URL"
    )
    worker_concurrency: int = Field(default=4, description="Number of worker processes")
    task_max_retries: int = Field(default=3, description="Maximum task retries")
    task_retry_delay: int = Field(default=60, description="Retry delay in seconds")
    task_time_limit: int = Field(default=900, description="Task time limit in seconds")
    task_always_eager: bool = Field(
        default=False, description="Run tasks inline (tests, local runs)"
    )

    model_config = {"env_prefix": "CELERY_", "extra": "ignore"}


class LoggingConfig(BaseSettings):
    """Logging configuration."""

    level: str = Field(default="INFO", description="Log level")
    format: str = Field(default="json", description="Log format (json or text)")
    run_id: Optional[str] = Field(
        default=None, description="Fixed run id; derived from the command when unset"
    )

    model_config = {"env_prefix": "LOG_", "extra": "ignore"}

    @field_validator("format", mode="before")
    @classmethod
    def validate_format(cls, v):
        if str(v).lower() not in {"json", "text"}:
            raise ValueError(f"Unknown log format: {v}")
        return str(v).lower()


class AppConfig(BaseSettings):
    """Main application configuration."""

    # Component configurations
    scheme: SchemeConfig = Field(default_factory=SchemeConfig)
    verify: VerifyConfig = Field(default_factory=VerifyConfig)
    forcing: ForcingConfig = Field(default_factory=ForcingConfig)
    celery: CeleryConfig = Field(default_factory=CeleryConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    # Global settings
    debug: bool = Field(default=False, description="Enable debug mode")
    environment: str = Field(default="production", description="Deployment name")

    model_config = {"env_file": ".env", "env_file_encoding": "utf-8", "extra": "ignore"}

    def model_post_init(self, __context):
        """Post-initialization setup."""
        if self.debug:
            self.logging.level = "DEBUG"
