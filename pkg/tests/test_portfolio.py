import datetime as dt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from epswap.errors import DomainError, ValidationError
from epswap.portfolio import (
    Component,
    PortfolioSpec,
    PriceSeries,
    basket_leg_bounds,
    basket_leg_payoff,
    bespoke_return,
    cross_currency_return,
    simple_return,
    trailing_returns,
)


def business_days(n, start=dt.date(2020, 1, 2)):
    days, d = [], start
    while len(days) < n:
        if d.weekday() < 5:
            days.append(d)
        d += dt.timedelta(days=1)
    return tuple(days)


def test_simple_return_examples():
    assert simple_return(4576.8, 4576.8) == 0.0
    assert simple_return(100, 95) == pytest.approx(-0.05)
    assert simple_return(100, 0) == -1.0
    with pytest.raises(DomainError):
        simple_return(0, 10)
    with pytest.raises(DomainError):
        simple_return(10, -1)


def test_price_series_validation():
    days = business_days(3)
    with pytest.raises(ValidationError, match="nonpositive close"):
        PriceSeries(days, (1.0, 0.0, 2.0))
    with pytest.raises(ValidationError, match="strictly increasing"):
        PriceSeries(days[::-1], (1.0, 2.0, 3.0))
    with pytest.raises(ValidationError):
        PriceSeries(days, (1.0, 2.0))
    assert len(PriceSeries.from_pairs(list(zip(days, (1, 2, 3))))) == 3


def test_trailing_returns_constant_series():
    s = PriceSeries(business_days(300), (50.0,) * 300)
    out = trailing_returns(s, 252)
    assert len(out) == 48
    assert all(tr.value == 0.0 for tr in out)


def test_trailing_returns_small_window():
    days = business_days(3)
    out = trailing_returns(PriceSeries(days, (100.0, 110.0, 121.0)), window=1)
    assert [tr.value for tr in out] == pytest.approx([0.10, 0.10])
    assert [tr.end for tr in out] == list(days[1:])
    assert [tr.start for tr in out] == list(days[:-1])


def test_trailing_returns_too_short():
    with pytest.raises(ValidationError, match="too short"):
        trailing_returns(PriceSeries(business_days(252), (1.0,) * 252), 252)
    with pytest.raises(ValidationError):
        trailing_returns(PriceSeries(business_days(5), (1.0,) * 5), 0)


@given(st.lists(st.floats(1, 1e4), min_size=3, max_size=60), st.integers(1, 2))
def test_trailing_returns_compose_with_simple_return(closes, window):
    s = PriceSeries(business_days(len(closes)), tuple(closes))
    out = trailing_returns(s, window)
    assert len(out) == len(closes) - window
    for t, tr in enumerate(out, start=window):
        assert tr.value == pytest.approx(simple_return(closes[t - window], closes[t]), rel=1e-14, abs=1e-15)


def test_bespoke_examples():
    assert bespoke_return(PortfolioSpec.from_weights([0.5, 0.5]), [0.10, -0.05]) == pytest.approx(0.025)
    assert bespoke_return(PortfolioSpec.from_weights([1.0]), [0.07]) == pytest.approx(0.07)
    assert bespoke_return(PortfolioSpec.from_weights([0.3, 0.7]), [0, 0]) == 0.0
    with pytest.raises(ValidationError):
        bespoke_return(PortfolioSpec.from_weights([0.3, 0.7]), [0.1])


def test_portfolio_spec_validation():
    with pytest.raises(ValidationError, match="sum"):
        PortfolioSpec.from_weights([0.5, 0.6])
    with pytest.raises(ValidationError):
        PortfolioSpec.from_weights([1.5, -0.5])
    with pytest.raises(ValidationError):
        PortfolioSpec(())
    with pytest.raises(ValidationError):
        PortfolioSpec((Component(1.0, market="offshore"),))


@given(st.lists(st.tuples(st.floats(0.01, 1), st.floats(-1, 2)), min_size=1, max_size=6), st.randoms())
def test_bespoke_permutation_invariant(pairs, rnd):
    w = np.array([p[0] for p in pairs])
    w = w / w.sum()
    r = [p[1] for p in pairs]
    spec = PortfolioSpec(tuple(Component(x) for x in w[:-1]) + (Component(1 - w[:-1].sum()),))
    perm = list(range(len(r)))
    rnd.shuffle(perm)
    weights = [spec.weights[i] for i in perm]
    shuffled = PortfolioSpec(tuple(Component(x) for x in weights[:-1]) + (Component(1 - sum(weights[:-1])),))
    a = bespoke_return(spec, r)
    b = bespoke_return(shuffled, [r[i] for i in perm])
    assert a == pytest.approx(b, abs=1e-12)


def test_cross_currency_examples():
    assert cross_currency_return(1, 1, 100, 110) == pytest.approx(0.10)
    assert cross_currency_return(1.5, 1.5, 100, 100) == 0.0
    assert cross_currency_return(1.0, 1.1, 100, 100) == pytest.approx(0.10)
    with pytest.raises(DomainError):
        cross_currency_return(0, 1, 100, 100)


@given(st.floats(0.01, 1e4), st.floats(0, 1e4))
def test_unit_fx_reduces_to_local_return(s0, sT):
    assert cross_currency_return(1, 1, s0, sT) == pytest.approx(simple_return(s0, sT), rel=1e-12, abs=1e-15)


def test_basket_bound_examples():
    spec = PortfolioSpec.from_weights([0.5, 0.5])
    assert basket_leg_bounds(spec, -0.05, "loss", [-0.10, -0.10]) == pytest.approx(0.05)
    assert basket_leg_payoff(spec, -0.05, "loss", [-0.10, -0.10]) == pytest.approx(0.05)
    # Offsetting moves: the basket itself is flat, so its put finishes worthless.
    assert basket_leg_bounds(spec, -0.05, "loss", [-0.20, 0.20]) == pytest.approx(0.075)
    assert basket_leg_payoff(spec, -0.05, "loss", [-0.20, 0.20]) == 0.0
    single = PortfolioSpec.from_weights([1.0])
    for lvl in (-0.3, -0.05, 0.0):
        assert basket_leg_bounds(single, lvl, "loss", [-0.12]) == basket_leg_payoff(single, lvl, "loss", [-0.12])


def test_basket_side_checks():
    spec = PortfolioSpec.from_weights([0.5, 0.5])
    with pytest.raises(ValidationError):
        basket_leg_bounds(spec, 0.05, "loss", [0, 0])
    with pytest.raises(ValidationError):
        basket_leg_bounds(spec, -0.05, "gain", [0, 0])
    with pytest.raises(ValidationError):
        basket_leg_bounds(spec, -0.05, "both", [0, 0])


def test_basket_super_replication_random_draws(rng):
    for _ in range(10_000):
        k = int(rng.integers(1, 6))
        w = rng.dirichlet(np.ones(k))
        w[-1] = 1.0 - w[:-1].sum()
        spec = PortfolioSpec.from_weights(w)
        r = rng.uniform(-1, 1.5, k)
        side = "loss" if rng.random() < 0.5 else "gain"
        level = -rng.uniform(0, 1) if side == "loss" else rng.uniform(0, 1)
        assert basket_leg_bounds(spec, level, side, r) >= basket_leg_payoff(spec, level, side, r) - 1e-15


def test_basket_equality_when_components_share_a_side(rng):
    for _ in range(2_000):
        k = int(rng.integers(1, 6))
        spec = PortfolioSpec.from_weights(rng.dirichlet(np.ones(k)))
        level = -rng.uniform(0, 0.5)
        below = level - rng.uniform(0, 0.4, k)
        above = level + rng.uniform(0, 1.0, k)
        for r, side in ((below, "loss"), (above, "loss"), (above - level + 0.1, "gain")):
            lvl = level if side == "loss" else 0.1
            assert basket_leg_bounds(spec, lvl, side, r) == pytest.approx(
                basket_leg_payoff(spec, lvl, side, r), abs=1e-14
            )
