"""Static option hedge of a generic EPS and its fair premium.

The provider neutralises ``psi(R_T)`` by holding, per unit notional,

* ``(p_{i+1} - p_i) / S0`` puts struck at ``S0 * (1 + l_i)``, ``i = 0..n``
* ``-(f_{j+1} - f_j) / S0`` calls struck at ``S0 * (1 + g_j)``, ``j = 0..m``

with ``p_0 = f_0 = 0`` and ``l_0 = g_0 = 0``.  The fair premium is the cost of
that portfolio; a positive premium is paid by the holder at inception.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass
from typing import Any, Callable, Literal

from epswap.errors import CoverageError, DomainError, EpsError, ValidationError
from epswap.instrument import EpsSpec

Kind = Literal["call", "put"]
PriceSide = Literal["mid", "bid", "ask"]

DEFAULT_SNAP_TOLERANCE = 0.02


@dataclass(frozen=True)
class OptionPosition:
    kind: Kind
    strike: float
    quantity: float

    def __post_init__(self) -> None:
        if self.kind not in ("call", "put"):
            raise ValidationError(f"unknown option kind {self.kind!r}", "kind")
        if not self.strike > 0:
            raise ValidationError(f"strike must be positive, got {self.strike}", "strike")
        if not math.isfinite(self.quantity) or self.quantity == 0:
            raise ValidationError(f"quantity must be finite and nonzero, got {self.quantity}", "quantity")

    def payoff(self, sT: float) -> float:
        if self.kind == "call":
            return self.quantity * max(sT - self.strike, 0.0)
        return self.quantity * max(self.strike - sT, 0.0)

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "strike": self.strike, "quantity": self.quantity}


@dataclass(frozen=True)
class HedgePortfolio:
    spot: float
    positions: tuple[OptionPosition, ...]
    maturity: float

    def tickets(self) -> list[dict[str, Any]]:
        return [pos.to_dict() for pos in self.positions]


def synthesize_hedge(spec: EpsSpec, s0: float) -> HedgePortfolio:
    if not s0 > 0:
        raise DomainError(f"initial price must be positive, got {s0}")
    positions: list[OptionPosition] = []
    prev = 0.0
    for level, rate in zip((0.0,) + spec.loss_thresholds, spec.protection_rates):
        qty = (rate - prev) / s0
        if qty:
            positions.append(OptionPosition("put", s0 * (1.0 + level), qty))
        prev = rate
    prev = 0.0
    for level, rate in zip((0.0,) + spec.gain_thresholds, spec.fee_rates):
        qty = -(rate - prev) / s0
        if qty:
            positions.append(OptionPosition("call", s0 * (1.0 + level), qty))
        prev = rate
    return HedgePortfolio(spot=s0, positions=tuple(positions), maturity=spec.maturity)


def hedge_payoff(h: HedgePortfolio, sT: float) -> float:
    if sT < 0:
        raise DomainError(f"terminal price must be nonnegative, got {sT}")
    return math.fsum(pos.payoff(sT) for pos in h.positions)


def premium_from_pricer(h: HedgePortfolio, pricer: Callable[[str, float], float]) -> float:
    """Cost of the hedge under any ``(kind, strike) -> price`` source."""
    total = 0.0
    for pos in h.positions:
        try:
            price = pricer(pos.kind, pos.strike)
        except EpsError as exc:
            raise type(exc)(f"pricing {pos.kind} at strike {pos.strike:g} failed: {exc}") from exc
        total += pos.quantity * price
    return total


@dataclass(frozen=True)
class OptionQuote:
    quote_date: dt.date
    expiration: dt.date
    strike: float
    kind: Kind
    bid: float
    ask: float
    spot: float

    def __post_init__(self) -> None:
        if self.kind not in ("call", "put"):
            raise ValidationError(f"unknown option type {self.kind!r}", "type")
        if not self.strike > 0:
            raise ValidationError(f"strike must be positive, got {self.strike}", "strike")
        if not self.spot > 0:
            raise ValidationError(f"spot must be positive, got {self.spot}", "spot")
        if self.bid < 0 or self.ask < 0:
            raise ValidationError(f"negative price (bid={self.bid}, ask={self.ask})", "bid")
        if self.bid > self.ask:
            raise ValidationError(f"bid {self.bid} exceeds ask {self.ask}", "bid")

    @property
    def moneyness(self) -> float:
        return self.strike / self.spot

    def price(self, side: PriceSide = "mid") -> float:
        if side == "mid":
            return 0.5 * (self.bid + self.ask)
        if side == "bid":
            return self.bid
        if side == "ask":
            return self.ask
        raise ValidationError(f"price side must be mid, bid or ask, got {side!r}", "side")


@dataclass(frozen=True)
class QuoteBoard:
    """Option chain for one quote date and one expiration."""

    quotes: tuple[OptionQuote, ...]

    def __post_init__(self) -> None:
        quotes = tuple(self.quotes)
        if not quotes:
            raise ValidationError("quote board is empty", "quotes")
        first = quotes[0]
        for q in quotes[1:]:
            if q.quote_date != first.quote_date:
                raise ValidationError(f"mixed quote dates {first.quote_date} and {q.quote_date}", "quote_date")
            if q.expiration != first.expiration:
                raise ValidationError(f"mixed expirations {first.expiration} and {q.expiration}", "expiration")
            if abs(q.spot - first.spot) > 1e-9 * first.spot:
                raise ValidationError(f"inconsistent spot {first.spot} and {q.spot}", "spot")
        object.__setattr__(self, "quotes", quotes)

    @property
    def spot(self) -> float:
        return self.quotes[0].spot

    @property
    def quote_date(self) -> dt.date:
        return self.quotes[0].quote_date

    @property
    def expiration(self) -> dt.date:
        return self.quotes[0].expiration

    def __len__(self) -> int:
        return len(self.quotes)

    def nearest(self, kind: str, moneyness: float) -> OptionQuote | None:
        """Quote of the given kind with the closest moneyness; ties go to the lower strike."""
        candidates = [q for q in self.quotes if q.kind == kind]
        if not candidates:
            return None
        return min(candidates, key=lambda q: (abs(q.moneyness - moneyness), q.strike))


@dataclass(frozen=True)
class QuotedLeg:
    kind: Kind
    quantity: float
    target_strike: float
    quote: OptionQuote
    price: float

    @property
    def target_moneyness(self) -> float:
        return self.target_strike / self.quote.spot

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "quantity": self.quantity,
            "target_strike": self.target_strike,
            "target_moneyness": self.target_moneyness,
            "snapped_strike": self.quote.strike,
            "snapped_moneyness": self.quote.moneyness,
            "bid": self.quote.bid,
            "ask": self.quote.ask,
            "price": self.price,
        }


@dataclass(frozen=True)
class QuotePremium:
    premium: float
    legs: tuple[QuotedLeg, ...]


def snap_hedge(
    h: HedgePortfolio,
    board: QuoteBoard,
    side: PriceSide = "mid",
    tolerance: float = DEFAULT_SNAP_TOLERANCE,
) -> tuple[QuotedLeg, ...]:
    """Match each hedge strike to the quote of the same kind with the nearest moneyness."""
    legs = []
    missing: list[tuple[str, float]] = []
    for pos in h.positions:
        target = pos.strike / board.spot
        quote = board.nearest(pos.kind, target)
        if quote is None or abs(quote.moneyness - target) > tolerance:
            missing.append((pos.kind, target))
            continue
        legs.append(QuotedLeg(pos.kind, pos.quantity, pos.strike, quote, quote.price(side)))
    if missing:
        listing = ", ".join(f"{kind} at moneyness {m:.1%}" for kind, m in missing)
        raise CoverageError(f"no quote within {tolerance:.1%} moneyness for: {listing}", missing)
    return tuple(legs)


def premium_from_quotes(
    spec: EpsSpec,
    board: QuoteBoard,
    price_side: PriceSide = "mid",
    tolerance: float = DEFAULT_SNAP_TOLERANCE,
) -> QuotePremium:
    """Model-free fair premium per unit notional from an option chain."""
    h = synthesize_hedge(spec, board.spot)
    legs = snap_hedge(h, board, price_side, tolerance)
    return QuotePremium(sum(leg.quantity * leg.price for leg in legs), legs)
