"""Half-duplex diamond relay networks: approximate capacity and relay selection."""

from ._core import (
    GuardExceeded,
    HdnetError,
    Network,
    check_lemma2,
    dual_capacity,
    fd_capacity,
    fixed_schedule_rate,
    guarantee_bound,
    half_tight,
    hd_capacity,
    random_network,
    select,
    single_relay_capacity,
    sweep,
    threshold_sets,
    two_phase_schedule,
    verify,
    verify_suites,
    worst_case,
)

__all__ = [
    "GuardExceeded",
    "HdnetError",
    "Network",
    "check_lemma2",
    "dual_capacity",
    "fd_capacity",
    "fixed_schedule_rate",
    "guarantee_bound",
    "half_tight",
    "hd_capacity",
    "random_network",
    "select",
    "single_relay_capacity",
    "sweep",
    "threshold_sets",
    "two_phase_schedule",
    "verify",
    "verify_suites",
    "worst_case",
]
