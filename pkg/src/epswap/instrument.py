"""Term sheets of equity protection swaps and their adjusted-return payoff.

An EPS exchanges, at maturity, the amount ``notional * psi(R)`` where ``R`` is
the simple return of a reference portfolio and ``psi`` is a continuous,
nondecreasing, piecewise-linear function with ``psi(0) = 0``.  Positive values
are paid by the holder to the provider (fee leg), negative values by the
provider to the holder (protection leg).

Loss thresholds are labelled outward from zero, ``0 = l_0 > l_1 > ... > l_n >
l_{n+1} = -1``, and protection rate ``p_k`` is the slope of ``psi`` on
``(l_k, l_{k-1})``.  Gain thresholds mirror this, ``0 = g_0 < g_1 < ... < g_m <
g_{m+1} = inf``, with fee rate ``f_k`` the slope on ``(g_{k-1}, g_k)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from epswap.errors import DomainError, ValidationError

FEE_ABOVE_ONE = "fee_rate_above_one"


def _as_floats(values: Sequence[float], name: str) -> tuple[float, ...]:
    try:
        out = tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"expected a list of numbers ({exc})", name) from None
    if not all(math.isfinite(v) for v in out):
        raise ValidationError("values must be finite", name)
    return out


@dataclass(frozen=True)
class EpsSpec:
    """Full term sheet of an EPS.

    Rate lists are one longer than the matching threshold lists.  Fee rates
    above 1 are accepted but reported through :attr:`warnings`.
    """

    loss_thresholds: tuple[float, ...] = ()
    gain_thresholds: tuple[float, ...] = ()
    protection_rates: tuple[float, ...] = (0.0,)
    fee_rates: tuple[float, ...] = (0.0,)
    maturity: float = 1.0
    notional: float = 1.0
    warnings: tuple[str, ...] = field(init=False, default=(), compare=False)

    def __post_init__(self) -> None:
        loss = _as_floats(self.loss_thresholds, "loss_thresholds")
        gain = _as_floats(self.gain_thresholds, "gain_thresholds")
        prot = _as_floats(self.protection_rates, "protection_rates")
        fee = _as_floats(self.fee_rates, "fee_rates")

        for i, l in enumerate(loss):
            if l >= 0:
                raise ValidationError(f"loss threshold must be negative, got l{i + 1}={l}", "loss_thresholds")
            if l <= -1:
                raise ValidationError(f"loss threshold must exceed -1, got l{i + 1}={l}", "loss_thresholds")
        if any(b >= a for a, b in zip(loss, loss[1:])):
            raise ValidationError("loss thresholds must be strictly decreasing", "loss_thresholds")
        for j, g in enumerate(gain):
            if g <= 0:
                raise ValidationError(f"gain threshold must be positive, got g{j + 1}={g}", "gain_thresholds")
        if any(b <= a for a, b in zip(gain, gain[1:])):
            raise ValidationError("gain thresholds must be strictly increasing", "gain_thresholds")

        if len(prot) != len(loss) + 1:
            raise ValidationError(
                f"expected {len(loss) + 1} protection rates for {len(loss)} loss thresholds, got {len(prot)}",
                "protection_rates",
            )
        if len(fee) != len(gain) + 1:
            raise ValidationError(
                f"expected {len(gain) + 1} fee rates for {len(gain)} gain thresholds, got {len(fee)}",
                "fee_rates",
            )
        for i, p in enumerate(prot):
            if p < 0:
                raise ValidationError(f"protection rate p{i + 1}={p} is negative", "protection_rates")
            if p > 1:
                raise ValidationError(f"protection rate exceeds 1 (p{i + 1}={p})", "protection_rates")
        for j, f in enumerate(fee):
            if f < 0:
                raise ValidationError(f"fee rate f{j + 1}={f} is negative", "fee_rates")

        maturity = float(self.maturity)
        if not (math.isfinite(maturity) and maturity > 0):
            raise ValidationError(f"maturity must be positive, got {self.maturity}", "maturity")
        notional = float(self.notional)
        if not (math.isfinite(notional) and notional > 0):
            raise ValidationError(f"notional must be positive, got {self.notional}", "notional")

        flags = tuple(f"{FEE_ABOVE_ONE}:f{j + 1}" for j, f in enumerate(fee) if f > 1)
        object.__setattr__(self, "loss_thresholds", loss)
        object.__setattr__(self, "gain_thresholds", gain)
        object.__setattr__(self, "protection_rates", prot)
        object.__setattr__(self, "fee_rates", fee)
        object.__setattr__(self, "maturity", maturity)
        object.__setattr__(self, "notional", notional)
        object.__setattr__(self, "warnings", flags)

    @property
    def max_rate(self) -> float:
        return max(self.protection_rates + self.fee_rates)

    @property
    def rates_at_most_one(self) -> bool:
        """True when the holder's net return ``R - psi(R)`` is nondecreasing."""
        return self.max_rate <= 1.0

    def breakpoints(self) -> tuple[float, ...]:
        return tuple(sorted(self.loss_thresholds + (0.0,) + self.gain_thresholds))

    def with_fee_rate(self, index: int, value: float) -> "EpsSpec":
        fee = list(self.fee_rates)
        fee[index] = value
        return EpsSpec(
            self.loss_thresholds, self.gain_thresholds, self.protection_rates, tuple(fee),
            self.maturity, self.notional,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "loss_thresholds": list(self.loss_thresholds),
            "gain_thresholds": list(self.gain_thresholds),
            "protection_rates": list(self.protection_rates),
            "fee_rates": list(self.fee_rates),
            "maturity_years": self.maturity,
            "notional": self.notional,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "EpsSpec":
        known = {"loss_thresholds", "gain_thresholds", "protection_rates", "fee_rates", "maturity_years", "notional"}
        unknown = set(data) - known
        if unknown:
            raise ValidationError(f"unknown keys {sorted(unknown)}", "spec")
        return cls(
            loss_thresholds=data.get("loss_thresholds", ()),
            gain_thresholds=data.get("gain_thresholds", ()),
            protection_rates=data.get("protection_rates", (0.0,)),
            fee_rates=data.get("fee_rates", (0.0,)),
            maturity=data.get("maturity_years", 1.0),
            notional=data.get("notional", 1.0),
        )

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "EpsSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON ({exc})", "spec") from None
        if not isinstance(data, dict):
            raise ValidationError("expected a JSON object", "spec")
        return cls.from_dict(data)


@dataclass(frozen=True)
class LegValues:
    """Split of ``psi(R)`` into the provider's protection payout and fee income."""

    protection: float
    fee: float

    @property
    def total(self) -> float:
        return self.protection + self.fee


def _check_thresholds(l1: float, g1: float) -> None:
    if l1 >= 0:
        raise ValidationError(f"loss threshold must be negative, got {l1}", "l1")
    if l1 <= -1:
        raise ValidationError(f"loss threshold must exceed -1, got {l1}", "l1")
    if g1 <= 0:
        raise ValidationError(f"gain threshold must be positive, got {g1}", "g1")


def _check_rate(value: float, name: str, upper: float | None = 1.0) -> None:
    if not value > 0:
        raise ValidationError(f"rate must be positive, got {value}", name)
    if upper is not None and value > upper:
        raise ValidationError(f"protection rate exceeds 1, got {value}", name)


def build_buffer(l1: float, g1: float, p2: float, f2: float, maturity: float = 1.0, notional: float = 1.0) -> EpsSpec:
    """Buffer EPS: protection with slope ``p2`` below ``l1``, fee with slope ``f2`` above ``g1``."""
    _check_thresholds(l1, g1)
    _check_rate(p2, "p2")
    _check_rate(f2, "f2", upper=None)
    return EpsSpec((l1,), (g1,), (0.0, p2), (0.0, f2), maturity, notional)


def build_floor(l1: float, g1: float, p1: float, f2: float, maturity: float = 1.0, notional: float = 1.0) -> EpsSpec:
    """Floor EPS: protection with slope ``p1`` on ``(l1, 0)``, capped at ``p1 * l1`` below ``l1``."""
    _check_thresholds(l1, g1)
    _check_rate(p1, "p1")
    _check_rate(f2, "f2", upper=None)
    return EpsSpec((l1,), (g1,), (p1, 0.0), (0.0, f2), maturity, notional)


def build_generic(
    loss_thresholds: Sequence[float] = (),
    gain_thresholds: Sequence[float] = (),
    protection_rates: Sequence[float] = (0.0,),
    fee_rates: Sequence[float] = (0.0,),
    maturity: float = 1.0,
    notional: float = 1.0,
) -> EpsSpec:
    return EpsSpec(
        tuple(loss_thresholds), tuple(gain_thresholds), tuple(protection_rates), tuple(fee_rates),
        maturity, notional,
    )


def _returns_array(r) -> np.ndarray:
    arr = np.asarray(r, dtype=float)
    if np.isnan(arr).any():
        raise DomainError("return is NaN")
    if (arr < -1).any():
        bad = arr[arr < -1].flat[0]
        raise DomainError(f"return must be >= -1, got {bad}")
    return arr


def _psi(spec: EpsSpec, r: np.ndarray) -> np.ndarray:
    # Sum of clipped segment contributions; exact and unambiguous at breakpoints.
    out = np.zeros_like(r)
    upper = (0.0,) + spec.loss_thresholds
    lower = spec.loss_thresholds + (-1.0,)
    for p, hi, lo in zip(spec.protection_rates, upper, lower):
        if p:
            out += p * (np.clip(r, lo, hi) - hi)
    lower = (0.0,) + spec.gain_thresholds
    upper = spec.gain_thresholds + (math.inf,)
    for f, lo, hi in zip(spec.fee_rates, lower, upper):
        if f:
            out += f * (np.clip(r, lo, hi) - lo)
    return out


def adjusted_return(spec: EpsSpec, r):
    """Provider's adjusted return ``psi(r)``.  Accepts a scalar or an array."""
    arr = _returns_array(r)
    out = _psi(spec, arr)
    return float(out) if out.ndim == 0 else out


def leg_values(spec: EpsSpec, r: float) -> LegValues:
    value = float(adjusted_return(spec, r))
    if r < 0:
        return LegValues(protection=value, fee=0.0)
    if r > 0:
        return LegValues(protection=0.0, fee=value)
    return LegValues(protection=0.0, fee=0.0)


def net_return(spec: EpsSpec, r):
    """Holder's return after settling the swap, ``r - psi(r)``."""
    arr = _returns_array(r)
    out = arr - _psi(spec, arr)
    return float(out) if out.ndim == 0 else out


def settlement_cashflow(spec: EpsSpec, r: float) -> float:
    """Terminal cash amount; positive means the holder pays the provider."""
    return spec.notional * float(adjusted_return(spec, r))
