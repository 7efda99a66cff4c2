"""Model-free historical evaluation of EPS products on trailing index returns."""

from __future__ import annotations

import csv
import datetime as dt
import io
import json
from dataclasses import dataclass
from typing import Iterator, Literal, Mapping, Sequence

import numpy as np
from scipy.stats import gaussian_kde

from epswap.errors import DomainError, ValidationError
from epswap.instrument import EpsSpec, build_buffer, build_floor, net_return
from epswap.portfolio import TRADING_DAYS_PER_YEAR, PriceSeries, TrailingReturn, trailing_returns

DEFAULT_PROBS = (0.0, 0.05, 0.10, 0.25, 0.50, 0.75, 0.90, 1.0)


def prob_label(p: float) -> str:
    if p == 0.0:
        return "Min"
    if p == 1.0:
        return "Max"
    return f"{p * 100:g}%"


@dataclass(frozen=True)
class ProductSet:
    """Ordered, uniquely named collection of EPS term sheets."""

    items: tuple[tuple[str, EpsSpec], ...]

    def __post_init__(self) -> None:
        items = tuple((str(name), spec) for name, spec in self.items)
        names = [name for name, _ in items]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise ValidationError(f"duplicate product names {dupes}", "products")
        if "Original" in names:
            raise ValidationError("'Original' is reserved for the unhedged row", "products")
        object.__setattr__(self, "items", items)

    @classmethod
    def from_mapping(cls, products: Mapping[str, EpsSpec]) -> "ProductSet":
        return cls(tuple(products.items()))

    def __iter__(self) -> Iterator[tuple[str, EpsSpec]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, name: str) -> EpsSpec:
        for key, spec in self.items:
            if key == name:
                return spec
        raise KeyError(name)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.items)


def default_products() -> ProductSet:
    """The three buffer and three floor products fitted to the 2022-02-02 S&P 500 chain."""
    return ProductSet(
        (
            ("Buffer1", build_buffer(-0.05, 0.05, 0.5, 0.63)),
            ("Buffer2", build_buffer(-0.05, 0.10, 0.7, 1.51)),
            ("Buffer3", build_buffer(-0.10, 0.10, 0.7, 1.21)),
            ("Floor1", build_floor(-0.10, 0.10, 0.5, 0.52)),
            ("Floor2", build_floor(-0.10, 0.10, 0.7, 0.73)),
            ("Floor3", build_floor(-0.15, 0.10, 0.7, 0.98)),
        )
    )


def apply_product_set(returns: Sequence[float], products: ProductSet) -> dict[str, np.ndarray]:
    r = np.asarray(returns, dtype=float)
    bad = np.flatnonzero(~(r >= -1))
    if bad.size:
        raise DomainError(f"return at index {bad[0]} is {r[bad[0]]}, must be >= -1")
    return {name: np.asarray(net_return(spec, r), dtype=float) for name, spec in products}


def empirical_quantiles(sample: Sequence[float], probs: Sequence[float] = DEFAULT_PROBS) -> np.ndarray:
    """Linear interpolation between order statistics at position ``(n - 1) * p``."""
    x = np.asarray(sample, dtype=float)
    if x.size == 0:
        raise ValidationError("cannot take quantiles of an empty sample", "sample")
    q = np.asarray(probs, dtype=float)
    if ((q < 0) | (q > 1)).any():
        raise ValidationError(f"probabilities must lie in [0, 1], got {list(probs)}", "probs")
    return np.quantile(x, q, method="linear")


@dataclass(frozen=True)
class DateRange:
    """Keeps trailing returns whose window ``anchor`` date lies in ``[start, end]``."""

    start: dt.date
    end: dt.date
    anchor: Literal["start", "end"] = "start"

    def __post_init__(self) -> None:
        if self.end < self.start:
            raise ValidationError(f"range end {self.end} precedes start {self.start}", "subset")
        if self.anchor not in ("start", "end"):
            raise ValidationError(f"anchor must be 'start' or 'end', got {self.anchor!r}", "subset")

    def keep(self, tr: TrailingReturn) -> bool:
        day = tr.start if self.anchor == "start" else tr.end
        return self.start <= day <= self.end

    def __str__(self) -> str:
        return f"window {self.anchor} dates in [{self.start}, {self.end}]"


# Window start dates of the predominantly negative trailing returns (2021-05-03 .. 2022-12-23 end dates).
DOWNTURN_RULE = DateRange(dt.date(2021, 5, 3), dt.date(2021, 12, 23), "start")


@dataclass(frozen=True)
class QuantileReport:
    columns: tuple[str, ...]
    rows: tuple[tuple[str, tuple[float, ...]], ...]

    def row(self, name: str) -> tuple[float, ...]:
        for key, values in self.rows:
            if key == name:
                return values
        raise KeyError(name)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["Case", *self.columns])
        for name, values in self.rows:
            writer.writerow([name, *(repr(v) for v in values)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"columns": list(self.columns), "rows": {name: list(values) for name, values in self.rows}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class BacktestResult:
    report: QuantileReport
    trailing: tuple[TrailingReturn, ...]
    original: np.ndarray
    net: dict[str, np.ndarray]

    def samples(self) -> dict[str, np.ndarray]:
        return {"Original": self.original, **self.net}


def quantile_report(
    original: Sequence[float], products: ProductSet, probs: Sequence[float] = DEFAULT_PROBS
) -> tuple[QuantileReport, dict[str, np.ndarray]]:
    original = np.asarray(original, dtype=float)
    net = apply_product_set(original, products)
    rows = [("Original", tuple(float(v) for v in empirical_quantiles(original, probs)))]
    rows += [(name, tuple(float(v) for v in empirical_quantiles(net[name], probs))) for name in products.names]
    return QuantileReport(tuple(prob_label(p) for p in probs), tuple(rows)), net


def build_report(
    series: PriceSeries,
    window: int = TRADING_DAYS_PER_YEAR,
    subset: DateRange | None = None,
    products: ProductSet | None = None,
    probs: Sequence[float] = DEFAULT_PROBS,
) -> BacktestResult:
    products = default_products() if products is None else products
    trailing = trailing_returns(series, window)
    if subset is not None:
        trailing = [tr for tr in trailing if subset.keep(tr)]
        if not trailing:
            raise ValidationError(f"no trailing returns satisfy the subset rule ({subset})", "subset")
    original = np.array([tr.value for tr in trailing])
    report, net = quantile_report(original, products, probs)
    return BacktestResult(report, tuple(trailing), original, net)


def density_csv(
    samples: Mapping[str, Sequence[float]],
    method: Literal["kde", "hist"] = "kde",
    points: int = 200,
    bins: int = 30,
) -> str:
    """Density rows ``series,x,density`` on a grid shared by all series.

    ``kde`` uses a Gaussian kernel with Silverman's bandwidth; a sample with no
    spread falls back to a histogram.  ``hist`` reports bin centres.
    """
    arrays = {name: np.asarray(v, dtype=float) for name, v in samples.items()}
    lo = min(a.min() for a in arrays.values())
    hi = max(a.max() for a in arrays.values())
    span = hi - lo if hi > lo else 1e-3
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["series", "x", "density"])
    for name, a in arrays.items():
        if method == "kde" and a.size > 1 and np.ptp(a) > 0:
            pad = 0.1 * span
            grid = np.linspace(lo - pad, hi + pad, points)
            dens = gaussian_kde(a, bw_method="silverman")(grid)
        elif method in ("kde", "hist"):
            edges = np.linspace(lo, lo + span, bins + 1)
            dens, _ = np.histogram(a, bins=edges, density=True)
            grid = 0.5 * (edges[:-1] + edges[1:])
        else:
            raise ValidationError(f"unknown density method {method!r}", "density")
        for x, d in zip(grid, dens):
            writer.writerow([name, repr(float(x)), repr(float(d))])
    return buf.getvalue()
