"""Optimal eigenvalue shrinkage of spiked covariance matrices under
relative condition number loss."""

from ._core import (
    PivotBlock,
    SpikedPopulation,
    ab_coeffs,
    apply,
    asymptotic_kappa,
    block,
    bulk_edges,
    cosine2,
    dead_zone_single,
    default_gamma_grid,
    eigen_inverse,
    eigen_map,
    empirical_pivot_kappa,
    eta_minimax,
    eta_mmst,
    eta_multi,
    eta_pnl,
    eta_single,
    kappa_star,
    kappa_star_limit,
    least_favorable_forecast,
    loss_report,
    max_regret,
    nu_minus_minimax,
    nu_minus_star,
    rsrg_from_kappa,
    sample_data,
    sample_empirical,
    simulate_loss,
    sine2,
    spike_detection_threshold,
    worst_config_kappa,
)

__all__ = [
    "PivotBlock",
    "SpikedPopulation",
    "ab_coeffs",
    "apply",
    "asymptotic_kappa",
    "block",
    "bulk_edges",
    "cosine2",
    "dead_zone_single",
    "default_gamma_grid",
    "eigen_inverse",
    "eigen_map",
    "empirical_pivot_kappa",
    "eta_minimax",
    "eta_mmst",
    "eta_multi",
    "eta_pnl",
    "eta_single",
    "kappa_star",
    "kappa_star_limit",
    "least_favorable_forecast",
    "loss_report",
    "max_regret",
    "nu_minus_minimax",
    "nu_minus_star",
    "rsrg_from_kappa",
    "sample_data",
    "sample_empirical",
    "simulate_loss",
    "sine2",
    "spike_detection_threshold",
    "worst_config_kappa",
]

__version__ = "0.1.0"
