"""Command-line front end.

    epswap price-bs --spec buffer.json --r 0.015 --sigma 0.2
    epswap solve-fee --kind buffer --l1=-5% --g1 10% --p 0.8 --r 0.015 --sigma 0.2
    epswap premium-market --spec floor1.json --quotes chain.csv --side mid
    epswap simulate --kind buffer --l1=-10% --g1 10% --p 0.8 --f 0.53 --jump 80:0.8 --out sim.json
    epswap backtest --prices spx.csv --out report.csv --format csv

Every command prints a one-line summary on stdout and, with ``--out``, writes
a JSON or CSV artifact.  Failures print ``error[<category>]: <message>`` on
stderr and exit with a category-specific code.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import io
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from epswap.backtest import DOWNTURN_RULE, DateRange, ProductSet, build_report, default_products, density_csv
from epswap.errors import DataError, EpsError, ValidationError
from epswap.fairsolve import solve_fee_bs, solve_fee_market
from epswap.hedge import DEFAULT_SNAP_TOLERANCE, OptionQuote, QuoteBoard, premium_from_quotes, synthesize_hedge
from epswap.instrument import EpsSpec, build_buffer, build_floor
from epswap.portfolio import TRADING_DAYS_PER_YEAR, PriceSeries
from epswap.pricing_bs import BsParams, eps_premium_closed_form
from epswap.simulate import SimConfig, run_forward_simulation

EXIT_CODES = {
    "validation": 3,
    "domain": 4,
    "coverage": 5,
    "no-solution": 6,
    "data": 7,
    "error": 1,
}

QUOTE_COLUMNS = ("quote_date", "expiration", "strike", "type", "bid", "ask", "spot")


def parse_fraction(text: str | float) -> float:
    """Decimal or percent notation: ``-0.05`` and ``-5%`` both give -0.05."""
    if isinstance(text, (int, float)):
        return float(text)
    s = str(text).strip()
    try:
        if s.endswith("%"):
            return float(s[:-1]) / 100.0
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_date(text: str) -> dt.date:
    s = text.strip()
    for fmt in ("%Y-%m-%d", "%Y/%m/%d"):
        try:
            return dt.datetime.strptime(s, fmt).date()
        except ValueError:
            pass
    raise ValueError(f"unrecognised date {text!r}")


def _read_rows(path: str | Path, required: Sequence[str]) -> list[tuple[int, dict[str, str]]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise DataError(f"{path} is empty")
    header = [h.strip().lower() for h in reader.fieldnames]
    missing = [c for c in required if c not in header]
    if missing:
        raise DataError(f"{path}: missing columns {missing}", line=1)
    rows = []
    for i, raw in enumerate(reader, start=2):
        row = {k.strip().lower(): (v or "").strip() for k, v in raw.items() if k is not None}
        if not any(row.values()):
            continue
        rows.append((i, row))
    if not rows:
        raise DataError(f"{path} has no data rows")
    return rows


def load_price_csv(path: str | Path) -> PriceSeries:
    """Read a ``date,close`` file into a validated :class:`PriceSeries`."""
    dates, closes = [], []
    for line, row in _read_rows(path, ("date", "close")):
        try:
            day = parse_date(row["date"])
            close = float(row["close"])
        except ValueError as exc:
            raise DataError(str(exc), line=line) from None
        if not close > 0:
            raise DataError(f"nonpositive close {row['close']}", line=line)
        if dates and day <= dates[-1]:
            raise DataError(f"dates not strictly increasing ({day} after {dates[-1]})", line=line)
        dates.append(day)
        closes.append(close)
    return PriceSeries(tuple(dates), tuple(closes))


def load_quote_csv(path: str | Path) -> QuoteBoard:
    quotes = []
    for line, row in _read_rows(path, QUOTE_COLUMNS):
        kind = row["type"].lower()
        if kind not in ("call", "put"):
            raise DataError(f"option type must be Call or Put, got {row['type']!r}", line=line)
        try:
            quote = OptionQuote(
                quote_date=parse_date(row["quote_date"]),
                expiration=parse_date(row["expiration"]),
                strike=float(row["strike"]),
                kind=kind,
                bid=float(row["bid"]),
                ask=float(row["ask"]),
                spot=float(row["spot"]),
            )
        except ValueError as exc:
            raise DataError(str(exc), line=line) from None
        quotes.append(quote)
    try:
        return QuoteBoard(tuple(quotes))
    except ValidationError as exc:
        raise DataError(f"{path}: {exc}") from None


# -- argument handling -------------------------------------------------------


def _spec_from_args(args: argparse.Namespace, open_fee: bool = False) -> EpsSpec:
    if args.spec is not None:
        if isinstance(args.spec, dict):
            data = dict(args.spec)
        else:
            try:
                data = json.loads(Path(args.spec).read_text())
            except OSError as exc:
                raise DataError(f"cannot read {args.spec}: {exc.strerror}") from None
            except json.JSONDecodeError as exc:
                raise DataError(f"{args.spec}: invalid JSON ({exc})") from None
        if not isinstance(data, dict):
            raise ValidationError("expected a JSON object", "spec")
        if open_fee and data.get("fee_rates"):
            # ``null`` marks the fee rate to be solved for.
            data["fee_rates"] = [0.0 if f is None else f for f in data["fee_rates"]]
        return EpsSpec.from_dict(data)

    if args.kind is None:
        raise ValidationError("give --spec FILE or an inline --kind buffer|floor term sheet", "spec")
    for name in ("l1", "g1", "p"):
        if getattr(args, name) is None:
            raise ValidationError(f"--{name} is required with --kind", name)
    fee = args.f
    if fee is None:
        if not open_fee:
            raise ValidationError("--f is required with --kind", "f")
        fee = 1.0
    build = build_buffer if args.kind == "buffer" else build_floor
    return build(args.l1, args.g1, args.p, fee, args.maturity, args.notional)


def _params(args: argparse.Namespace, spec: EpsSpec) -> BsParams:
    T = spec.maturity if args.T is None else args.T
    return BsParams(r=args.r, kappa=args.kappa, sigma=args.sigma, T=T)


def _params_dict(p: BsParams) -> dict[str, float]:
    return {"r": p.r, "kappa": p.kappa, "sigma": p.sigma, "T": p.T}


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _write(args: argparse.Namespace, payload: dict[str, Any], csv_text: str | None = None) -> None:
    if args.out is None:
        return
    if args.format == "csv":
        if csv_text is None:
            raise ValidationError(f"{args.command} has no CSV form; use --format json", "format")
        text = csv_text
    else:
        text = json.dumps(payload, indent=2) + "\n"
    Path(args.out).write_text(text)


# -- commands ------------------------------------------------------------------


def cmd_price_bs(args: argparse.Namespace) -> None:
    spec = _spec_from_args(args)
    params = _params(args, spec)
    premium = eps_premium_closed_form(spec, params)
    print(_fmt(premium))
    payload = {"command": "price-bs", "premium": premium, "spec": spec.to_dict(), "params": _params_dict(params)}
    _write(args, payload, _csv_text(["premium"], [[repr(premium)]]))


def cmd_solve_fee(args: argparse.Namespace) -> None:
    spec = _spec_from_args(args, open_fee=True)
    if args.quotes is not None:
        board = load_quote_csv(args.quotes)
        sol = solve_fee_market(spec, board, args.side, args.index, args.tolerance)
        source: dict[str, Any] = {"quotes": str(args.quotes), "side": args.side}
    else:
        params = _params(args, spec)
        sol = solve_fee_bs(spec, params, args.index)
        source = {"params": _params_dict(params)}
    note = f"  warnings={','.join(sol.warnings)}" if sol.warnings else ""
    print(f"{_fmt(sol.rate)}{note}")
    payload = {
        "command": "solve-fee",
        "fee_rate": sol.rate,
        "residual_premium": sol.premium,
        "warnings": list(sol.warnings),
        "spec": sol.spec.to_dict(),
        **source,
    }
    _write(args, payload, _csv_text(["fee_rate", "residual_premium"], [[repr(sol.rate), repr(sol.premium)]]))


def cmd_hedge(args: argparse.Namespace) -> None:
    spec = _spec_from_args(args)
    h = synthesize_hedge(spec, args.s0)
    tickets = h.tickets()
    print(f"{len(tickets)} positions at spot {args.s0:g}")
    for t in tickets:
        print(f"  {t['kind']:<4} strike {t['strike']:.6g} quantity {t['quantity']:+.6g}")
    if args.out is not None and args.format == "json":
        Path(args.out).write_text(json.dumps(tickets, indent=2) + "\n")
    else:
        rows = [[t["kind"], repr(t["strike"]), repr(t["quantity"])] for t in tickets]
        _write(args, {}, _csv_text(["kind", "strike", "quantity"], rows))


def cmd_premium_market(args: argparse.Namespace) -> None:
    spec = _spec_from_args(args)
    board = load_quote_csv(args.quotes)
    result = premium_from_quotes(spec, board, args.side, args.tolerance)
    print(_fmt(result.premium))
    for leg in result.legs:
        print(
            f"  {leg.kind:<4} qty {leg.quantity:+.6g} target {leg.target_moneyness:.2%}"
            f" -> strike {leg.quote.strike:g} ({leg.quote.moneyness:.2%}) {args.side} {leg.price:g}"
        )
    legs = [leg.to_dict() for leg in result.legs]
    payload = {"command": "premium-market", "premium": result.premium, "side": args.side, "legs": legs,
               "spec": spec.to_dict()}
    header = list(legs[0]) if legs else ["kind"]
    _write(args, payload, _csv_text(header, [[repr(v) if isinstance(v, float) else v for v in leg.values()]
                                             for leg in legs]))


def cmd_simulate(args: argparse.Namespace) -> None:
    spec = _spec_from_args(args)
    cfg = SimConfig(
        n_paths=args.paths,
        years=args.years,
        steps_per_year=args.steps_per_year,
        seed=args.seed,
        jumps=tuple(args.jump or ()),
        aggregation=args.aggregation,
        s0=args.s0,
        threads=args.threads,
    )
    params = BsParams(r=args.r, kappa=args.kappa, sigma=args.sigma, T=float(cfg.years))
    result = run_forward_simulation(spec, cfg, params)
    last = result.summaries[-1]
    print(
        f"year {last.year}: mean original {_fmt(last.cumulative_original.mean)}"
        f" net {_fmt(last.cumulative_net.mean)}"
    )
    payload = {"command": "simulate", "spec": spec.to_dict(), "params": _params_dict(params),
               **result.summary_dict()}
    rows = []
    for s in result.summaries:
        for series, st in (("original", s.original), ("net", s.net),
                           ("cumulative_original", s.cumulative_original), ("cumulative_net", s.cumulative_net)):
            rows.append([s.year, series, repr(st.mean), repr(st.std), repr(st.min), repr(st.max)])
    _write(args, payload, _csv_text(["year", "series", "mean", "std", "min", "max"], rows))
    if args.density_out is not None:
        Path(args.density_out).write_text(result.density_csv(bins=args.bins))


def _load_products(path: str | None) -> ProductSet:
    if path is None:
        return default_products()
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ValidationError("products file must map names to spec objects", "products")
    return ProductSet(tuple((name, EpsSpec.from_dict(spec)) for name, spec in data.items()))


def cmd_backtest(args: argparse.Namespace) -> None:
    series = load_price_csv(args.prices)
    subset = None
    if args.downturn:
        subset = DOWNTURN_RULE
    if args.subset_start is not None or args.subset_end is not None:
        if args.subset_start is None or args.subset_end is None:
            raise ValidationError("give both --subset-start and --subset-end", "subset")
        subset = DateRange(parse_date(args.subset_start), parse_date(args.subset_end), args.subset_anchor)
    result = build_report(series, args.window, subset, _load_products(args.products))
    orig = result.report.row("Original")
    print(f"{len(result.original)} trailing returns; Original min {orig[0]:.4f} median {orig[4]:.4f} max {orig[-1]:.4f}")
    payload = {"command": "backtest", "count": len(result.original), **result.report.to_dict()}
    _write(args, payload, result.report.to_csv())
    if args.density_out is not None:
        Path(args.density_out).write_text(density_csv(result.samples(), method=args.density_method))


# -- parser --------------------------------------------------------------------


def _jump(text: str) -> tuple[int, float]:
    try:
        step, factor = text.split(":")
        return int(step), float(factor)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected STEP:FACTOR, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of option defaults (keys are option names)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", help="artifact path")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    spec = argparse.ArgumentParser(add_help=False)
    spec.add_argument("--spec", help="EPS term sheet JSON")
    spec.add_argument("--kind", choices=("buffer", "floor"), help="inline term sheet type")
    spec.add_argument("--l1", type=parse_fraction, help="loss threshold, e.g. --l1=-5%%")
    spec.add_argument("--g1", type=parse_fraction, help="gain threshold")
    spec.add_argument("--p", type=parse_fraction, help="protection rate (p2 buffer, p1 floor)")
    spec.add_argument("--f", type=parse_fraction, help="fee rate f2")
    spec.add_argument("--maturity", type=float, default=1.0)
    spec.add_argument("--notional", type=float, default=1.0)

    market = argparse.ArgumentParser(add_help=False)
    market.add_argument("--r", type=parse_fraction, default=0.015)
    market.add_argument("--kappa", type=parse_fraction, default=0.0)
    market.add_argument("--sigma", type=parse_fraction, default=0.2)
    market.add_argument("--T", type=float, default=None, help="defaults to the spec maturity")

    quotes = argparse.ArgumentParser(add_help=False)
    quotes.add_argument("--side", choices=("mid", "bid", "ask"), default="mid")
    quotes.add_argument("--tolerance", type=parse_fraction, default=DEFAULT_SNAP_TOLERANCE,
                        help="max moneyness distance when snapping strikes")

    parser = argparse.ArgumentParser(prog="epswap", description="Equity protection swap toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("price-bs", parents=[common, spec, market], help="Black-Scholes fair premium")
    p.set_defaults(func=cmd_price_bs)

    p = sub.add_parser("solve-fee", parents=[common, spec, market, quotes], help="fee rate with null premium")
    p.add_argument("--quotes", help="option chain CSV; solve against market prices instead of Black-Scholes")
    p.add_argument("--index", type=int, default=None, help="fee rate position to solve (default: last)")
    p.set_defaults(func=cmd_solve_fee)

    p = sub.add_parser("hedge", parents=[common, spec], help="static option hedge tickets")
    p.add_argument("--s0", type=float, default=100.0)
    p.set_defaults(func=cmd_hedge)

    p = sub.add_parser("premium-market", parents=[common, spec, quotes], help="premium from quoted options")
    p.add_argument("--quotes", help="option chain CSV")
    p.set_defaults(func=cmd_premium_market)

    p = sub.add_parser("simulate", parents=[common, spec, market], help="forward simulation of rolled EPSs")
    p.add_argument("--paths", type=int, default=200)
    p.add_argument("--years", type=int, default=5)
    p.add_argument("--steps-per-year", type=int, default=52)
    p.add_argument("--s0", type=float, default=100.0)
    p.add_argument("--jump", type=_jump, action="append", help="STEP:FACTOR, repeatable")
    p.add_argument("--aggregation", choices=("additive", "compounded"), default="additive")
    p.add_argument("--density-out")
    p.add_argument("--bins", type=int, default=40)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("backtest", parents=[common], help="trailing-return quantile report")
    p.add_argument("--prices", help="date,close CSV")
    p.add_argument("--window", type=int, default=TRADING_DAYS_PER_YEAR)
    p.add_argument("--products", help="JSON object mapping product names to specs (default: six reference products)")
    p.add_argument("--downturn", action="store_true", help="keep windows starting 2021-05-03..2021-12-23")
    p.add_argument("--subset-start")
    p.add_argument("--subset-end")
    p.add_argument("--subset-anchor", choices=("start", "end"), default="start")
    p.add_argument("--density-out")
    p.add_argument("--density-method", choices=("kde", "hist"), default="kde")
    p.set_defaults(func=cmd_backtest)
    return parser


def _config_defaults(argv: Sequence[str]) -> dict[str, Any]:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return {}
    try:
        data = json.loads(Path(known.config).read_text())
    except OSError as exc:
        raise DataError(f"cannot read {known.config}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DataError(f"{known.config}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise DataError(f"{known.config}: expected a JSON object")
    out = {}
    for key, value in data.items():
        dest = key.lstrip("-").replace("-", "_")
        if dest in ("l1", "g1", "p", "f", "r", "kappa", "sigma", "tolerance"):
            value = parse_fraction(value)
        out[dest] = value
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        defaults = _config_defaults(argv)
        if defaults:
            for action in parser._subparsers._group_actions:  # type: ignore[union-attr]
                for sp in action.choices.values():
                    sp.set_defaults(**defaults)
        args = parser.parse_args(argv)
        # Not argparse-required so that a --config file can supply them.
        required = {"premium-market": "quotes", "backtest": "prices"}.get(args.command)
        if required and getattr(args, required) is None:
            raise ValidationError(f"--{required} is required", required)
        args.func(args)
    except EpsError as exc:
        print(f"error[{exc.category}]: {' '.join(str(exc).split())}", file=sys.stderr)
        return EXIT_CODES.get(exc.category, 1)
    except argparse.ArgumentTypeError as exc:
        print(f"error[validation]: {exc}", file=sys.stderr)
        return EXIT_CODES["validation"]
    return 0


if __name__ == "__main__":
    sys.exit(main())
