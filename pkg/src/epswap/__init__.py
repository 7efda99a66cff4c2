"""Equity protection swaps: term sheets, static hedges, fair fees and performance studies."""

from epswap.errors import CoverageError, DataError, DomainError, EpsError, NoSolutionError, ValidationError
from epswap.instrument import (
    EpsSpec,
    LegValues,
    adjusted_return,
    build_buffer,
    build_floor,
    build_generic,
    leg_values,
    net_return,
    settlement_cashflow,
)
from epswap.hedge import (
    HedgePortfolio,
    OptionPosition,
    OptionQuote,
    QuoteBoard,
    hedge_payoff,
    premium_from_pricer,
    premium_from_quotes,
    synthesize_hedge,
)
from epswap.pricing_bs import BsParams, bs_call, bs_pricer, bs_put, eps_premium_closed_form, gbm_paths
from epswap.fairsolve import FeeSolution, basic_eps_fee, solve_fee_bs, solve_fee_market

__all__ = [
    "BsParams",
    "CoverageError",
    "DataError",
    "DomainError",
    "EpsError",
    "EpsSpec",
    "FeeSolution",
    "HedgePortfolio",
    "LegValues",
    "NoSolutionError",
    "OptionPosition",
    "OptionQuote",
    "QuoteBoard",
    "ValidationError",
    "adjusted_return",
    "basic_eps_fee",
    "bs_call",
    "bs_pricer",
    "bs_put",
    "build_buffer",
    "build_floor",
    "build_generic",
    "eps_premium_closed_form",
    "gbm_paths",
    "hedge_payoff",
    "leg_values",
    "net_return",
    "premium_from_pricer",
    "premium_from_quotes",
    "settlement_cashflow",
    "solve_fee_bs",
    "solve_fee_market",
    "synthesize_hedge",
]
