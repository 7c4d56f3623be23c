"""Loss-based practical relevance analysis."""

from ._core import (
    BinomialModel,
    ConfigError,
    DegenerateEvidenceError,
    DomainError,
    HypothesisPair,
    Interval,
    LossSpec,
    NormalKnownVarModel,
    NumericalError,
    ParameterError,
    ParameterSpace,
    PosteriorModel,
    RegionSet,
    RelevancePartition,
    ValidationError,
    __version__,
    check_complete,
    check_partial,
    decide,
    derive_hypotheses,
    expected_loss_decision,
    interval_bayes_factor,
    nhst_point_null,
    partition,
    posterior_update,
    rope_decision,
    run_cli,
    simulate,
    tost_equivalence,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
