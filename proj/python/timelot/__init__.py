"""Growth-rate evaluation of time lotteries.

Evaluates lotteries with certain payment amounts but random payment times
under two competing growth-rate criteria (time-average vs ensemble-average),
classifies the implied risk preferences, checks the von Neumann-Morgenstern
axioms for growth-optimal preferences, reproduces the shipped experiment
tables, and generates distinguishing experiment designs.
"""

from timelot._core import (  # noqa: F401
    Approach,
    AuditFinding,
    AuditSeverity,
    AxiomCounts,
    AxiomReport,
    BandPoint,
    BinaryTimeLottery,
    ChoiceProblemRecord,
    Dataset,
    DatasetSchema,
    DesignedPair,
    GeneralLottery,
    GrowthSummary,
    IndependenceCase,
    IndependenceReport,
    KunstgriffEntry,
    KunstgriffSweep,
    OLSFit,
    Outcome,
    PreferenceOutcome,
    Relation,
    RiskClass,
    SamplerRanges,
    SearchConfig,
    SimConfig,
    SimMode,
    SimResult,
    TimedPayment,
    ValidationError,
    audit,
    axiom_suite,
    classify_pair,
    compare,
    confidence_band,
    continuity_weight,
    convergence_series,
    degenerate_of,
    design_adjust_amounts,
    design_adjust_times,
    disagreement_interval,
    effective_time,
    emit_rates_csv,
    ensemble_growth,
    growth_summary,
    independence_check,
    independence_counterexample_search,
    kunstgriff_factor,
    kunstgriff_sweep,
    load_dataset,
    mix,
    ols_fit,
    render_figure,
    shipped_dataset,
    shipped_dataset_csv,
    simulate_ensemble,
    simulate_sequential,
    time_growth,
    timed_payment_growth,
    to_general,
)

__all__ = [name for name in dir() if not name.startswith("_")]
