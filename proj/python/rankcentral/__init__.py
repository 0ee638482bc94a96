"""Select the K best items from noisy pairwise comparisons (BTL model)."""

from rankcentral._rankcentral import (
    Graph,
    ObservationSet,
    PreferenceVector,
    RankcentralError,
    RankingResult,
    borda_count,
    compute_spectra,
    degree_concentration_check,
    delta_k,
    exact_observations,
    l2_error,
    l2inf_of_laplacian_squared,
    linf_error,
    planted_scores,
    rank_centrality,
    read_edge_list,
    read_observations,
    run_sweep,
    sample_er,
    sample_observations,
    spectral_gap,
    spectral_mle,
    thm1_sufficient,
    thm2_necessary,
    thm3_er_sufficient,
    top_k,
    true_top_k,
    write_edge_list,
    write_observations,
)

__all__ = [
    "Graph",
    "ObservationSet",
    "PreferenceVector",
    "RankcentralError",
    "RankingResult",
    "borda_count",
    "compute_spectra",
    "degree_concentration_check",
    "delta_k",
    "exact_observations",
    "l2_error",
    "l2inf_of_laplacian_squared",
    "linf_error",
    "planted_scores",
    "rank_centrality",
    "read_edge_list",
    "read_observations",
    "run_sweep",
    "sample_er",
    "sample_observations",
    "spectral_gap",
    "spectral_mle",
    "thm1_sufficient",
    "thm2_necessary",
    "thm3_er_sufficient",
    "top_k",
    "true_top_k",
    "write_edge_list",
    "write_observations",
]
