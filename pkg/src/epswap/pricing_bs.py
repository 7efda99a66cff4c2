"""Black-Scholes prices of vanilla options and of a generic EPS, and GBM paths.

The normal CDF is evaluated as ``erfc(-x / sqrt(2)) / 2`` with the C library's
``erfc``, which keeps full double precision in both tails (no cancellation
against 1 for large negative arguments).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from epswap.errors import DomainError, ValidationError
from epswap.instrument import EpsSpec

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

Pricer = Callable[[str, float], float]


@dataclass(frozen=True)
class BsParams:
    """Market parameters: rate ``r``, dividend yield ``kappa``, volatility ``sigma``, horizon ``T``."""

    r: float = 0.015
    kappa: float = 0.0
    sigma: float = 0.2
    T: float = 1.0

    def __post_init__(self) -> None:
        for name in ("r", "kappa", "sigma", "T"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(f"must be finite, got {value}", name)
            object.__setattr__(self, name, value)
        if self.sigma <= 0:
            raise ValidationError(f"volatility must be positive, got {self.sigma}", "sigma")
        if self.T <= 0:
            raise ValidationError(f"maturity must be positive, got {self.T}", "T")


def norm_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x * _INV_SQRT2)


def _d_pm(s: float, k: float, p: BsParams) -> tuple[float, float]:
    if not s > 0:
        raise DomainError(f"spot must be positive, got {s}")
    if not k > 0:
        raise DomainError(f"strike must be positive, got {k}")
    vol = p.sigma * math.sqrt(p.T)
    drift = math.log(s / k) + (p.r - p.kappa) * p.T
    half = 0.5 * vol * vol
    return (drift + half) / vol, (drift - half) / vol


def bs_call(s: float, k: float, p: BsParams) -> float:
    d_plus, d_minus = _d_pm(s, k, p)
    return math.exp(-p.kappa * p.T) * s * norm_cdf(d_plus) - math.exp(-p.r * p.T) * k * norm_cdf(d_minus)


def bs_put(s: float, k: float, p: BsParams) -> float:
    d_plus, d_minus = _d_pm(s, k, p)
    return math.exp(-p.r * p.T) * k * norm_cdf(-d_minus) - math.exp(-p.kappa * p.T) * s * norm_cdf(-d_plus)


def bs_pricer(s0: float, p: BsParams) -> Pricer:
    """Pricer closure ``(kind, strike) -> price`` at spot ``s0``, for use with the hedge module."""

    def price(kind: str, strike: float) -> float:
        if kind == "call":
            return bs_call(s0, strike, p)
        if kind == "put":
            return bs_put(s0, strike, p)
        raise ValidationError(f"unknown option kind {kind!r}", "kind")

    return price


def _h_pm(x: float, p: BsParams) -> tuple[float, float]:
    vol = p.sigma * math.sqrt(p.T)
    drift = -math.log1p(x) + (p.r - p.kappa) * p.T
    half = 0.5 * vol * vol
    return (drift + half) / vol, (drift - half) / vol


def eps_premium_closed_form(spec: EpsSpec, p: BsParams) -> float:
    """Fair premium per unit notional, written directly in terms of return levels.

    Independent of the spot level: every strike is ``S0 * (1 + level)`` and
    every option price is homogeneous of degree one in ``(S0, K)``.
    """
    if abs(spec.maturity - p.T) > 1e-12:
        raise ValidationError(f"spec maturity {spec.maturity} differs from market horizon {p.T}", "maturity")
    disc_r = math.exp(-p.r * p.T)
    disc_k = math.exp(-p.kappa * p.T)

    total = 0.0
    levels = (0.0,) + spec.loss_thresholds
    prev = 0.0
    for level, rate in zip(levels, spec.protection_rates):
        weight = rate - prev
        prev = rate
        if weight:
            h_plus, h_minus = _h_pm(level, p)
            total += weight * (disc_r * (1.0 + level) * norm_cdf(-h_minus) - disc_k * norm_cdf(-h_plus))

    levels = (0.0,) + spec.gain_thresholds
    prev = 0.0
    for level, rate in zip(levels, spec.fee_rates):
        weight = rate - prev
        prev = rate
        if weight:
            h_plus, h_minus = _h_pm(level, p)
            total -= weight * (disc_k * norm_cdf(h_plus) - disc_r * (1.0 + level) * norm_cdf(h_minus))
    return total


def path_rng(seed: int, path: int) -> np.random.Generator:
    """Random stream of one path; depends only on ``(seed, path)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(path,))))


def gbm_paths(
    s0: float,
    p: BsParams,
    steps: int,
    n_paths: int,
    seed: int = 0,
    jumps: Sequence[tuple[int, float]] = (),
    threads: int = 1,
) -> np.ndarray:
    """Risk-neutral GBM paths over ``[0, p.T]`` on an even grid.

    Returns an array of shape ``(n_paths, steps + 1)`` whose column 0 is ``s0``.
    Each ``(step, factor)`` jump multiplies every path at grid index ``step``
    after that step's diffusion increment, so the jump persists afterwards.
    Output is bitwise identical for any ``threads`` value.
    """
    if steps < 1 or n_paths < 1:
        raise ValidationError(f"steps and n_paths must be >= 1, got {steps}, {n_paths}", "steps")
    if not s0 > 0:
        raise DomainError(f"initial price must be positive, got {s0}")
    log_jumps = np.zeros(steps)
    for step, factor in jumps:
        if not factor > 0:
            raise ValidationError(f"jump factor must be positive, got {factor}", "jumps")
        if not 1 <= step <= steps:
            raise ValidationError(f"jump step {step} outside 1..{steps}", "jumps")
        log_jumps[step - 1] += math.log(factor)

    dt = p.T / steps
    drift = (p.r - p.kappa - 0.5 * p.sigma**2) * dt
    scale = p.sigma * math.sqrt(dt)
    out = np.empty((n_paths, steps + 1))
    out[:, 0] = s0

    def fill(rows: range) -> None:
        for i in rows:
            z = path_rng(seed, i).standard_normal(steps)
            out[i, 1:] = s0 * np.exp(np.cumsum(drift + scale * z + log_jumps))

    if threads <= 1:
        fill(range(n_paths))
    else:
        bounds = np.linspace(0, n_paths, threads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill, [range(a, b) for a, b in zip(bounds[:-1], bounds[1:])]))
    return out
