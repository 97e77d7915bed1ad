"""Downlink, leakage and secrecy rates."""

from mimo_pcsim.rates.downlink import (
    asymptotic_rates,
    asymptotic_sinr,
    effective_noise,
    exact_rates,
    hybrid_sum_rate,
    jain_fairness,
    jamming_power,
    rate_report,
)
from mimo_pcsim.rates.leakage import (
    exact_leakage_rates,
    leakage_rates,
    leakage_signal,
    saturating_leakage,
    secrecy_report,
)

__all__ = [
    "asymptotic_rates",
    "asymptotic_sinr",
    "effective_noise",
    "exact_leakage_rates",
    "exact_rates",
    "hybrid_sum_rate",
    "jain_fairness",
    "jamming_power",
    "leakage_rates",
    "leakage_signal",
    "saturating_leakage",
    "rate_report",
    "secrecy_report",
]
