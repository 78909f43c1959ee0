"""Hybrid beamforming and multiuser detection for pinching-antenna MIMO systems.

Matrices are numpy arrays: channel and precoder matrices are complex M x K, element
layouts are real N x M (column m holds the element positions on waveguide m), user
positions are K x 3 (or K x 2 with z = 0). Rates are in nats unless the key says bits.
"""

from ._core import (
    ConfigError,
    DegenerateError,
    Error,
    FeasibilityError,
    NumericalError,
    RankDeficiencyError,
    ScenarioConfig,
    SingularSystemError,
    channel_matrix,
    cli_main,
    is_feasible,
    mmse_detector,
    run_baseline_dl,
    run_baseline_ul,
    run_fp_bcd,
    run_greedy_uplink,
    run_single,
    run_zf,
    sample_users,
    seed_scenario,
    weighted_sum_rate_dl,
    zf_precoder,
)

__all__ = [
    "ConfigError",
    "DegenerateError",
    "Error",
    "FeasibilityError",
    "NumericalError",
    "RankDeficiencyError",
    "ScenarioConfig",
    "SingularSystemError",
    "channel_matrix",
    "cli_main",
    "is_feasible",
    "mmse_detector",
    "run_baseline_dl",
    "run_baseline_ul",
    "run_fp_bcd",
    "run_greedy_uplink",
    "run_single",
    "run_zf",
    "sample_users",
    "seed_scenario",
    "weighted_sum_rate_dl",
    "zf_precoder",
]
