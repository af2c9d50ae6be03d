from pydantic_settings import BaseSettings


class MomentsConfig(BaseSettings):
    """Exact moment engine configuration."""

    # S_n enumeration costs n! lookups per cell
    weyl_max_rank: int = 6

    # Guard on a + b for class-sum evaluation of finite groups
    finite_max_degree: int = 64

    # Prune single-cell power computations to the support that can reach a target
    prune_single_cell: bool = True

    class Config:
        env_prefix = "STM_MOMENTS_"


# Global config instance
config = MomentsConfig()
