from pydantic_settings import BaseSettings


class AnalyzerConfig(BaseSettings):
    """Rigidity toolkit configuration."""

    # Separation scans
    separation_default_bound: int = 12
    separation_max_bound: int = 30

    # Crude-bound threshold window
    crude_max_amax: int = 20

    # Dimension inference
    infer_default_amax: int = 12
    infer_max_dimension: int = 4096

    # Standard-error multiplier for empirical inputs
    z_score: float = 5.0

    # Torsion agreement
    torsion_default_degree: int = 8

    class Config:
        env_prefix = "STM_ANALYZER_"


# Global config instance
config = AnalyzerConfig()
