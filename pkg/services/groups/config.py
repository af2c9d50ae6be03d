from pydantic_settings import BaseSettings


class GroupsConfig(BaseSettings):
    """Group model and catalog configuration."""

    # Binary dihedral family binary_dihedral(4n), n in [min, max]
    binary_dihedral_min_n: int = 2
    binary_dihedral_max_n: int = 30

    # torus_normalizer_su2 is approximated by binary_dihedral(4 * n)
    normalizer_approximation_n: int = 30

    # Cyclic subgroups recorded as subgroup pairs of u1-wt1
    cyclic_pair_max_n: int = 12

    manifest_name: str = "MANIFEST.json"

    class Config:
        env_prefix = "STM_GROUPS_"


# Global config instance
config = GroupsConfig()
