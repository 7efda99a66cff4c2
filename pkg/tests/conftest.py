from __future__ import annotations

import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from epswap.instrument import EpsSpec

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


def random_spec(rng: np.random.Generator, max_levels: int = 3, fee_cap: float = 2.0,
                maturity: float = 1.0) -> EpsSpec:
    """Generic spec with up to ``max_levels`` thresholds per side and arbitrary rate patterns."""
    n = int(rng.integers(0, max_levels + 1))
    m = int(rng.integers(0, max_levels + 1))
    loss = -np.sort(rng.choice(np.arange(1, 90), size=n, replace=False)) / 100.0
    gain = np.sort(rng.choice(np.arange(1, 150), size=m, replace=False)) / 100.0
    prot = rng.uniform(0, 1, n + 1) * (rng.random(n + 1) < 0.8)
    fee = rng.uniform(0, fee_cap, m + 1) * (rng.random(m + 1) < 0.8)
    return EpsSpec(tuple(-np.sort(-loss)), tuple(gain), tuple(prot), tuple(fee), maturity)


@st.composite
def eps_specs(draw, max_levels: int = 3, max_fee: float = 2.0, max_protection: float = 1.0):
    n = draw(st.integers(0, max_levels))
    m = draw(st.integers(0, max_levels))
    loss = draw(st.lists(st.integers(1, 95), min_size=n, max_size=n, unique=True))
    gain = draw(st.lists(st.integers(1, 200), min_size=m, max_size=m, unique=True))
    rate = st.one_of(st.just(0.0), st.floats(0, 1))
    prot = draw(st.lists(rate.map(lambda x: x * max_protection), min_size=n + 1, max_size=n + 1))
    fee = draw(st.lists(st.one_of(st.just(0.0), st.floats(0, max_fee)), min_size=m + 1, max_size=m + 1))
    maturity = draw(st.sampled_from([0.25, 0.5, 1.0, 2.0, 3.0]))
    return EpsSpec(
        tuple(-x / 100 for x in sorted(loss)),
        tuple(x / 100 for x in sorted(gain)),
        tuple(prot),
        tuple(fee),
        maturity,
    )


returns = st.floats(-1.0, 3.0, allow_nan=False)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20220202)
