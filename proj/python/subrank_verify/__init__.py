"""Exact verification toolkit for induced-matching subrank bounds.

Thin wrapper over the C++ core; see the package README for the full CLI.
"""

from subrank_verify._core import (  # noqa: F401
    KGraph,
    Subspace,
    __version__,
    alpha_for_type_graph,
    binomial,
    certify_main_bound,
    check_f_properties,
    check_tightness,
    conjectured_value,
    cw3_lower_bound,
    f_km,
    git_sha,
    greedy_weight_bound,
    is_induced_matching,
    kkl_subspace_check,
    krawchouk,
    kronecker,
    kronecker_power,
    lemma2_instance_check,
    middle_krawchouk_closed,
    pair_count_fourier,
    restricted_pair_count,
    robbins_check,
    scan_conjecture,
    subrank,
    subrank_power_rate,
    sumratio_check,
    type_graph,
    ukrs_lhs,
    unrestricted_pair_count,
    verify_rank_inequality,
    weight_distribution,
)
