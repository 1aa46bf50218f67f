from .config import ScenarioConfig, load_config
from .runners import (
    EXPERIMENTS,
    RunArtifact,
    operating_point,
    run_pattern_experiment,
    run_secrecy_vs_angle,
    run_secrecy_vs_ibo,
    run_sndr_vs_ibo,
)

__all__ = [
    "EXPERIMENTS",
    "RunArtifact",
    "ScenarioConfig",
    "load_config",
    "operating_point",
    "run_pattern_experiment",
    "run_secrecy_vs_angle",
    "run_secrecy_vs_ibo",
    "run_sndr_vs_ibo",
]
