"""Probabilistic Boolean network inference and steady-state analysis."""

from ._core import (
    BinaryMatrix,
    ExpressionMatrix,
    KsReport,
    Pbn,
    PipelineConfig,
    PipelineResult,
    Predictor,
    StateHistogram,
    TransitionMatrix,
    build_transition_matrix,
    discretize,
    distribution_from_histogram,
    gray_decode,
    gray_encode,
    histogram,
    infer,
    ks_critical,
    ks_statistic,
    ks_two_half_test,
    parse_binary_matrix,
    parse_expression_matrix,
    parse_histogram,
    run_pipeline,
    select_genes,
    simulate,
    stationary_distribution,
    threshold,
    thresholds,
    total_variation,
    validate_config,
)

__all__ = [
    "BinaryMatrix",
    "ExpressionMatrix",
    "KsReport",
    "Pbn",
    "PipelineConfig",
    "PipelineResult",
    "Predictor",
    "StateHistogram",
    "TransitionMatrix",
    "build_transition_matrix",
    "discretize",
    "distribution_from_histogram",
    "gray_decode",
    "gray_encode",
    "histogram",
    "infer",
    "ks_critical",
    "ks_statistic",
    "ks_two_half_test",
    "parse_binary_matrix",
    "parse_expression_matrix",
    "parse_histogram",
    "run_pipeline",
    "select_genes",
    "simulate",
    "stationary_distribution",
    "threshold",
    "thresholds",
    "total_variation",
    "validate_config",
]

__version__ = "0.1.0"
