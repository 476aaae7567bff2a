"""Analog network coding laboratory for layered Gaussian relay networks."""

from .bounds import (
    BoundsReport,
    anc_rate,
    bounds_report,
    destination_snr,
    high_snr_lower_bound,
    ideal_snr,
    mac_cutset,
    rank_one_cutset,
    rate_lower_bound,
    rate_upper_bound,
)
from .coding import (
    CodingState,
    TooManyPathsError,
    count_paths,
    enumerate_paths,
    local_coefficient,
    path_coefficient,
    propagate_coefficients,
)
from .gains import GainAssignment, gains_from_dict, gains_to_dict, load_gains, save_gains
from .montecarlo import (
    AgreementReport,
    SimConfig,
    SimReport,
    agreement_check,
    analytic_moments,
    simulate,
)
from .network import (
    LayeredNetwork,
    NetworkValidationError,
    NodeId,
    RegimeSpec,
    build_network,
    load_network,
    neighbors_in,
    network_from_dict,
    network_to_dict,
    save_network,
)
from .optimize import OptimizerConfig, optimize_gains
from .power import (
    FeasibilityReport,
    PowerProfile,
    check_feasible,
    exact_transmit_power,
    max_safe_gain,
    node_delta,
    power_profile,
    received_power,
    regime_delta,
)
from .schemes import SchemeParams, downstream_gains, full_power_gains, matched_gains

__all__ = [
    "AgreementReport",
    "BoundsReport",
    "CodingState",
    "FeasibilityReport",
    "GainAssignment",
    "LayeredNetwork",
    "NetworkValidationError",
    "NodeId",
    "OptimizerConfig",
    "PowerProfile",
    "RegimeSpec",
    "SchemeParams",
    "SimConfig",
    "SimReport",
    "TooManyPathsError",
    "agreement_check",
    "analytic_moments",
    "anc_rate",
    "bounds_report",
    "build_network",
    "check_feasible",
    "count_paths",
    "destination_snr",
    "downstream_gains",
    "enumerate_paths",
    "exact_transmit_power",
    "full_power_gains",
    "gains_from_dict",
    "gains_to_dict",
    "high_snr_lower_bound",
    "ideal_snr",
    "load_gains",
    "load_network",
    "local_coefficient",
    "mac_cutset",
    "matched_gains",
    "max_safe_gain",
    "neighbors_in",
    "network_from_dict",
    "network_to_dict",
    "node_delta",
    "optimize_gains",
    "path_coefficient",
    "power_profile",
    "propagate_coefficients",
    "rank_one_cutset",
    "rate_lower_bound",
    "rate_upper_bound",
    "received_power",
    "regime_delta",
    "save_gains",
    "save_network",
    "simulate",
]
