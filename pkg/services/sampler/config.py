from pydantic_settings import BaseSettings


class SamplerConfig(BaseSettings):
    """Haar Monte Carlo configuration."""

    # Samples per substream; each chunk gets its own spawned seed
    chunk_size: int = 20000

    # Fresh Ginibre draws allowed before a degenerate factorization is fatal
    max_retries: int = 3

    # |R_ii| below this counts as a degenerate orthonormalization
    degeneracy_tolerance: float = 1e-12

    # Consistency gate: |m - F| <= stderr_multiplier * s
    stderr_multiplier: float = 5.0

    class Config:
        env_prefix = "STM_SAMPLER_"


# Global config instance
config = SamplerConfig()
