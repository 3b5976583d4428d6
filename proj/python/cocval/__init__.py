"""Cost-of-capital valuation of insurance liabilities with risky buffer capital."""

from ._core import (
    DomainError,
    Distribution,
    MarketSpec,
    McEstimate,
    NoSolution,
    RiskMeasure,
    ScenarioSet,
    SolveReport,
    SweepResult,
    SweepRow,
    Unsupported,
    ValuationResult,
    capped_expectation_quadrature,
    degenerate,
    es_empirical,
    generate,
    lognormal,
    lognormal_from_moments,
    make_grid,
    negative_loading_threshold,
    normal,
    pareto,
    pareto_from_mean_beta,
    pareto_from_moments,
    pareto_riskless_valuation,
    psi,
    solve_r0_gaussian,
    solve_r0_lognormal_var,
    solve_r0_numeric,
    sweep,
    sweep_gaussian_closed_form,
    value_closed_form,
    value_gaussian,
    value_lognormal_var,
    value_monte_carlo,
    var_empirical,
    what_gaussian,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
