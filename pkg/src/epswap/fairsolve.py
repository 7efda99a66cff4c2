"""Fee rates that make an EPS fair (null premium at inception).

The premium is affine in any single fee rate, ``c(x) = A - B x``, because the
hedge quantities are differences of adjacent rates.  The root ``A / B`` is
therefore exact; bisection is kept as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

from scipy.optimize import bisect

from epswap.errors import NoSolutionError, ValidationError
from epswap.hedge import DEFAULT_SNAP_TOLERANCE, PriceSide, QuoteBoard, premium_from_quotes
from epswap.instrument import EpsSpec
from epswap.pricing_bs import BsParams, eps_premium_closed_form

Method = Literal["affine", "bisect"]


@dataclass(frozen=True)
class FeeSolution:
    rate: float
    spec: EpsSpec
    premium: float
    method: str

    @property
    def warnings(self) -> tuple[str, ...]:
        return self.spec.warnings


def _fee_index(spec: EpsSpec, index: int | None) -> int:
    if index is None:
        return len(spec.fee_rates) - 1
    if not -len(spec.fee_rates) <= index < len(spec.fee_rates):
        raise ValidationError(f"fee index {index} out of range for {len(spec.fee_rates)} fee rates", "index")
    return index % len(spec.fee_rates)


def _solve(
    spec: EpsSpec,
    index: int | None,
    premium: Callable[[EpsSpec], float],
    method: Method,
    bracket: tuple[float, float],
) -> FeeSolution:
    k = _fee_index(spec, index)

    def at(x: float) -> float:
        return premium(spec.with_fee_rate(k, x))

    if method == "affine":
        a = at(0.0)
        b = a - at(1.0)
        if not b > 0:
            raise NoSolutionError(f"premium does not decrease in fee rate f{k + 1} (slope {-b:.3g})")
        x = a / b
    elif method == "bisect":
        lo, hi = bracket
        c_lo, c_hi = at(lo), at(hi)
        if c_lo == 0:
            x = lo
        elif c_hi == 0:
            x = hi
        elif (c_lo > 0) == (c_hi > 0):
            raise NoSolutionError(f"premium has no sign change for f{k + 1} in [{lo}, {hi}]")
        else:
            x = bisect(at, lo, hi, xtol=1e-14, rtol=8.9e-16, maxiter=200)
    else:
        raise ValidationError(f"unknown method {method!r}", "method")

    if x < 0:
        raise NoSolutionError(f"fair fee rate f{k + 1} would be negative ({x:.6g})")
    solved = spec.with_fee_rate(k, x)
    return FeeSolution(rate=x, spec=solved, premium=premium(solved), method=method)


def solve_fee_bs(
    spec: EpsSpec,
    p: BsParams,
    index: int | None = None,
    method: Method = "affine",
    bracket: tuple[float, float] = (0.0, 10.0),
) -> FeeSolution:
    """Fee rate ``fee_rates[index]`` (default: the last one) giving a null Black-Scholes premium.

    The current value of that rate in ``spec`` is ignored.
    """
    return _solve(spec, index, lambda s: eps_premium_closed_form(s, p), method, bracket)


def solve_fee_market(
    spec: EpsSpec,
    board: QuoteBoard,
    price_side: PriceSide = "mid",
    index: int | None = None,
    tolerance: float = DEFAULT_SNAP_TOLERANCE,
    method: Method = "affine",
    bracket: tuple[float, float] = (0.0, 10.0),
) -> FeeSolution:
    """Fee rate giving a null premium against quoted option prices."""

    def premium(s: EpsSpec) -> float:
        return premium_from_quotes(s, board, price_side, tolerance).premium

    # The rate being solved for may be zero in ``spec``, which drops its call
    # from the hedge; probe coverage with a nonzero rate first.
    premium_from_quotes(spec.with_fee_rate(_fee_index(spec, index), 1.0), board, price_side, tolerance)
    return _solve(spec, index, premium, method, bracket)


def basic_eps_fee(p: float, r: float, T: float, atm_call_unit_price: float) -> float:
    """Fair fee of the proportional EPS with protection rate ``p``.

    ``atm_call_unit_price`` is the at-the-money call price per unit of spot.
    Solves ``(f - p) * C + p * (1 - exp(-r T)) = 0``.
    """
    if not atm_call_unit_price > 0:
        raise ValidationError(f"call price must be positive, got {atm_call_unit_price}", "atm_call_unit_price")
    return p - p * (-math.expm1(-r * T)) / atm_call_unit_price
