"""Realised returns of reference portfolios.

Covers single indices, bespoke baskets (weights fixed at inception) and
foreign components converted at the domestic/foreign exchange rate, plus
rolling trailing returns from a daily close file.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass
from typing import Literal, NamedTuple, Sequence

import numpy as np

from epswap.errors import DomainError, ValidationError

TRADING_DAYS_PER_YEAR = 252


@dataclass(frozen=True)
class PriceSeries:
    """Dated closes with strictly increasing dates and positive prices."""

    dates: tuple[dt.date, ...]
    closes: tuple[float, ...]

    def __post_init__(self) -> None:
        dates = tuple(self.dates)
        closes = tuple(float(c) for c in self.closes)
        if len(dates) != len(closes):
            raise ValidationError(f"{len(dates)} dates but {len(closes)} closes", "closes")
        for i, c in enumerate(closes):
            if not (math.isfinite(c) and c > 0):
                raise ValidationError(f"nonpositive close {c} at position {i}", "closes")
        for i in range(1, len(dates)):
            if dates[i] <= dates[i - 1]:
                raise ValidationError(f"dates not strictly increasing at {dates[i]}", "dates")
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "closes", closes)

    def __len__(self) -> int:
        return len(self.closes)

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[dt.date, float]]) -> "PriceSeries":
        return cls(tuple(d for d, _ in pairs), tuple(c for _, c in pairs))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.closes, dtype=float)


class TrailingReturn(NamedTuple):
    end: dt.date
    value: float
    start: dt.date


@dataclass(frozen=True)
class Component:
    weight: float
    market: Literal["domestic", "foreign"] = "domestic"
    series_id: str = ""


@dataclass(frozen=True)
class PortfolioSpec:
    """Static basket described by initial wealth proportions."""

    components: tuple[Component, ...]
    fx_series_id: str | None = None

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        if not comps:
            raise ValidationError("portfolio needs at least one component", "components")
        for c in comps:
            if not c.weight > 0:
                raise ValidationError(f"weight must be positive, got {c.weight}", "components")
            if c.market not in ("domestic", "foreign"):
                raise ValidationError(f"unknown market {c.market!r}", "components")
        total = math.fsum(c.weight for c in comps)
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"weights sum to {total}, not 1", "components")
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "PortfolioSpec":
        return cls(tuple(Component(float(w)) for w in weights))

    @property
    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.components])


def simple_return(s0: float, sT: float) -> float:
    if not s0 > 0:
        raise DomainError(f"initial price must be positive, got {s0}")
    if sT < 0:
        raise DomainError(f"terminal price must be nonnegative, got {sT}")
    return (sT - s0) / s0


def trailing_returns(series: PriceSeries, window: int = TRADING_DAYS_PER_YEAR) -> list[TrailingReturn]:
    """Rolling ``close[t] / close[t - window] - 1`` using a positional (row) lag."""
    if window < 1:
        raise ValidationError(f"window must be at least 1, got {window}", "window")
    n = len(series)
    if n <= window:
        raise ValidationError(f"series of length {n} is too short for a {window}-day window", "series")
    closes = series.closes
    return [
        TrailingReturn(series.dates[t], closes[t] / closes[t - window] - 1.0, series.dates[t - window])
        for t in range(window, n)
    ]


def bespoke_return(spec: PortfolioSpec, component_returns: Sequence[float]) -> float:
    returns = np.asarray(component_returns, dtype=float)
    if returns.shape != (len(spec.components),):
        raise ValidationError(
            f"expected {len(spec.components)} component returns, got {returns.size}", "component_returns"
        )
    return math.fsum(w * r for w, r in zip(spec.weights, returns))


def cross_currency_return(q0: float, qT: float, s0: float, sT: float) -> float:
    """Return of a foreign asset measured in domestic currency."""
    if not (q0 > 0 and s0 > 0):
        raise DomainError(f"initial exchange rate and price must be positive, got q0={q0}, s0={s0}")
    if qT < 0 or sT < 0:
        raise DomainError(f"terminal exchange rate and price must be nonnegative, got qT={qT}, sT={sT}")
    return (qT * sT - q0 * s0) / (q0 * s0)


def _check_side(level: float, side: str) -> None:
    if side == "loss":
        if not -1 <= level <= 0:
            raise ValidationError(f"loss level must lie in [-1, 0], got {level}", "level")
    elif side == "gain":
        if level < 0:
            raise ValidationError(f"gain level must be nonnegative, got {level}", "level")
    else:
        raise ValidationError(f"side must be 'loss' or 'gain', got {side!r}", "side")


def basket_leg_payoff(spec: PortfolioSpec, level: float, side: str, component_returns: Sequence[float]) -> float:
    """Exact basket option payoff ``(level - R)^+`` or ``(R - level)^+`` per unit notional."""
    _check_side(level, side)
    r = bespoke_return(spec, component_returns)
    return max(level - r, 0.0) if side == "loss" else max(r - level, 0.0)


def basket_leg_bounds(spec: PortfolioSpec, level: float, side: str, component_returns: Sequence[float]) -> float:
    """Weighted sum of single-name option payoffs at the same moneyness.

    By convexity of ``x -> x^+`` this super-replicates :func:`basket_leg_payoff`,
    with equality when every component sits on the same side of ``level``.
    """
    _check_side(level, side)
    returns = np.asarray(component_returns, dtype=float)
    if returns.shape != (len(spec.components),):
        raise ValidationError(
            f"expected {len(spec.components)} component returns, got {returns.size}", "component_returns"
        )
    legs = np.maximum(level - returns, 0.0) if side == "loss" else np.maximum(returns - level, 0.0)
    return math.fsum(spec.weights * legs)
