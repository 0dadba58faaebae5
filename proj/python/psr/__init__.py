"""Probabilistic sufficient reasons for binary linear classifiers."""

from ._core import (
    CapExceeded,
    Explanation,
    Instance,
    LinearModel,
    MinimalReason,
    PartialInstance,
    ProductDistribution,
    binomial_approximation,
    binomial_tail,
    brute_force_prob,
    build_gap_demo,
    classify,
    dp_prob,
    exact_prob,
    explain,
    greedy_prefix,
    greedy_prefixes,
    hoeffding_samples,
    is_delta_sr,
    is_sufficient_reason,
    max_search_steps,
    mc_estimate,
    min_delta_sr_exact,
    sample_budget,
    score_ranking,
    scores,
    verification_reports,
    worst_case_margin,
)

__all__ = [
    "CapExceeded",
    "Explanation",
    "Instance",
    "LinearModel",
    "MinimalReason",
    "PartialInstance",
    "ProductDistribution",
    "binomial_approximation",
    "binomial_tail",
    "brute_force_prob",
    "build_gap_demo",
    "classify",
    "dp_prob",
    "exact_prob",
    "explain",
    "greedy_prefix",
    "greedy_prefixes",
    "hoeffding_samples",
    "is_delta_sr",
    "is_sufficient_reason",
    "max_search_steps",
    "mc_estimate",
    "min_delta_sr_exact",
    "sample_budget",
    "score_ranking",
    "scores",
    "verification_reports",
    "worst_case_margin",
]
