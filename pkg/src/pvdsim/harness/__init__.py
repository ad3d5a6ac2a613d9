"""Security experiments, adversary strategies and outcome distributions."""
from .adversaries import (GAME_ADVERSARIES, AdvBranch, BruteForceAdversary, CircuitAdversary,
                          ClassicalInverter, EchoAdversary, ExactBranching, GameView,
                          GuessAdversary, HadamardRetainer, HonestDeleter, SampledBranching,
                          Strategy, View, build_strategy)
from .distributions import (BOTTOM, EMPIRICAL, EXACT, OutcomeDistribution, Proportion,
                            binomial_ci, outcome_distance, tv_confidence_radius, tv_distance)
from .experiments import (ExperimentConfig, HybridRun, Scheme, SchemeConfig, abort_probability,
                          evpke_report, fixed_instances, game_report, hybrid_chain_report,
                          hybrid_report, hybrid_run, make_instance, other_preimage_exact,
                          other_preimage_game, run_evpke, run_hyb)

__all__ = [
    "AdvBranch", "BOTTOM", "BruteForceAdversary", "CircuitAdversary", "ClassicalInverter",
    "EMPIRICAL", "EXACT", "EchoAdversary", "ExactBranching", "ExperimentConfig",
    "GAME_ADVERSARIES", "GameView", "GuessAdversary", "HadamardRetainer", "HonestDeleter",
    "HybridRun", "OutcomeDistribution", "Proportion", "SampledBranching", "Scheme",
    "SchemeConfig", "Strategy", "View", "abort_probability", "binomial_ci", "build_strategy",
    "evpke_report", "fixed_instances", "game_report", "hybrid_chain_report", "hybrid_report",
    "hybrid_run", "make_instance", "other_preimage_exact", "other_preimage_game",
    "outcome_distance", "run_evpke", "run_hyb", "tv_confidence_radius", "tv_distance",
]
