"""Diversity-driven selection of exploration strategies."""

from ._core import (
    AdaptConfig,
    ArmSpec,
    Box,
    CoverageGrid,
    CreditLedger,
    ExperimentConfig,
    MotorSpace,
    Rng,
    RunRecord,
    SelectorConfig,
    SelectorOutcome,
    StepLog,
    StrategyConfig,
    SummaryStats,
    SweepSpec,
    ball_volume,
    default_experiment,
    episode_seed,
    experiment_to_json,
    forward_kinematics,
    mc_coverage_oracle,
    parse_experiment,
    perturb,
    report_directory,
    run_and_emit,
    run_episode,
    select_strategy,
    strategy_names,
    sweep,
    sweep_and_emit,
    usage_fraction,
)

__all__ = [
    "AdaptConfig",
    "ArmSpec",
    "Box",
    "CoverageGrid",
    "CreditLedger",
    "ExperimentConfig",
    "MotorSpace",
    "Rng",
    "RunRecord",
    "SelectorConfig",
    "SelectorOutcome",
    "StepLog",
    "StrategyConfig",
    "SummaryStats",
    "SweepSpec",
    "ball_volume",
    "default_experiment",
    "episode_seed",
    "experiment_to_json",
    "forward_kinematics",
    "mc_coverage_oracle",
    "parse_experiment",
    "perturb",
    "report_directory",
    "run_and_emit",
    "run_episode",
    "select_strategy",
    "strategy_names",
    "sweep",
    "sweep_and_emit",
    "usage_fraction",
]
