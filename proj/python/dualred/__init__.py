"""Exact correlated-equilibrium analysis and dual reduction of finite games."""

from ._core import (
    AnalysisError,
    ParseError,
    Game,
    ReducedGame,
    Trace,
    analyze_ce,
    bimatrix_nash,
    ce_dimension,
    coherent_strategies,
    component_support,
    full_dual_vector,
    gains,
    gen_game,
    is_correlated_equilibrium,
    is_dual_vector,
    is_elementary,
    is_nash,
    is_quasi_strict,
    iterate_to_elementary,
    jeopardizes,
    parse_game,
    pure_nash,
    redundancy_dual_vector,
    reduce,
    run_cli,
    strong_dual_vector,
    strong_full_dual_vector,
    trivial_dual_vector,
    write_game,
    zero_probability_profiles,
    zero_sum_dual_vector,
)

__all__ = [name for name in dir() if not name.startswith("_")]
