"""The `gam` command line: generate, mi-sweep, gap-table, papr-sweep, plot.

Exit codes: 0 success, 2 usage error, 3 runtime error or infeasibility.
All flags can also be supplied through a plain key=value config file
(--config); explicit flags win over config values.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import constellations as cst
from .errors import InfeasibleError, SchemaError
from .sweep import (EstimatorConfig, GAP_COLUMNS, MI_COLUMNS, PAPR_COLUMNS,
                    canonical_scheme, gap_table, mi_sweep, papr_sweep,
                    parse_snr_grid, write_csv)

_DEFAULTS = {
    "seed": 0,
    "samples": 2048,
    "quad-order": 48,
    "workers": 1,
    "mean-power": 1.0,
    "grid-choice": "right",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gam",
        description="Golden-angle modulation toolkit: constellations, AWGN "
                    "mutual information, PAPR, and shaping sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True):
        p.add_argument("--config", help="key=value file; flags take precedence")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--samples", type=int, default=None,
                       help="Monte Carlo noise draws for large constellations")
        p.add_argument("--quad-order", type=int, default=None,
                       help="Gauss-Hermite order per noise dimension")
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--out", required=out_required)

    g = sub.add_parser("generate", help="write a constellation JSON")
    g.add_argument("--scheme", required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--snr-db", type=float, default=None)
    g.add_argument("--rho-i", type=float, default=None)
    g.add_argument("--rho-o", type=float, default=None)
    g.add_argument("--papr-cap-db", type=float, default=None)
    g.add_argument("--mean-power", type=float, default=None)
    g.add_argument("--grid-choice", choices=("right", "midpoint"), default=None)
    g.add_argument("--optimize-rho-i", action="store_true",
                   help="search the inner radius too (tgb-gam-opt)")
    common(g)

    s = sub.add_parser("mi-sweep", help="MI vs SNR curves as CSV")
    s.add_argument("--scheme", action="append", required=True,
                   help="repeatable or comma separated")
    s.add_argument("--m", required=True, help="comma-separated sizes")
    s.add_argument("--snr-grid", required=True, help="start:stop:step in dB")
    s.add_argument("--rho-i", type=float, default=None)
    s.add_argument("--rho-o", type=float, default=None)
    s.add_argument("--papr-cap-db", type=float, default=None)
    s.add_argument("--optimize-rho-i", action="store_true")
    common(s)

    t = sub.add_parser("gap-table", help="SNR gap to capacity at a rate")
    t.add_argument("--scheme", action="append", required=True)
    t.add_argument("--m", required=True)
    t.add_argument("--rate", type=float, required=True)
    t.add_argument("--rho-i", type=float, default=None)
    t.add_argument("--rho-o", type=float, default=None)
    t.add_argument("--optimize-rho-i", action="store_true")
    common(t)

    p = sub.add_parser("papr-sweep", help="PAPR vs SNR as CSV")
    p.add_argument("--variant", choices=("snr-form", "optimized"),
                   default="snr-form")
    p.add_argument("--m", required=True)
    p.add_argument("--snr-grid", required=True)
    p.add_argument("--papr-cap-db", type=float, default=None)
    p.add_argument("--optimize-rho-i", action="store_true")
    common(p)

    pl = sub.add_parser("plot", help="render a CSV or constellation JSON as SVG")
    pl.add_argument("input", help="CSV (curves) or JSON (scatter) path")
    pl.add_argument("--kind", required=True,
                    choices=("mi-curves", "papr-curves", "constellation-scatter"))
    common(pl)
    return parser


def _read_config(path) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"bad config line {line!r}; expected key=value")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


def _resolve(args, name: str, cast=None):
    """Flag value, else config value, else built-in default."""
    attr = name.replace("-", "_")
    val = getattr(args, attr, None)
    if val is not None:
        return val
    if getattr(args, "config", None):
        cfg = _read_config(args.config)
        if name in cfg:
            raw = cfg[name]
            return cast(raw) if cast else raw
    return _DEFAULTS.get(name)


def _parse_m_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError as exc:
        raise ValueError(f"bad size list {text!r}") from exc


def _parse_schemes(chunks: list[str]) -> list[str]:
    names = []
    for chunk in chunks:
        names.extend(tok for tok in chunk.split(",") if tok)
    return [canonical_scheme(n) for n in names]


def _estimator(args) -> EstimatorConfig:
    return EstimatorConfig(quad_order=int(_resolve(args, "quad-order", int)),
                           n_samples=int(_resolve(args, "samples", int)),
                           seed=int(_resolve(args, "seed", int)))


def _meta(args, extra: dict | None = None) -> dict:
    meta = {
        "noise": "total complex variance sigma^2 = mean_power/snr",
        "sampling_grid": "t_m = m/M",
    }
    meta.update(extra or {})
    return meta


def _cmd_generate(args, parser) -> int:
    scheme = canonical_scheme(args.scheme)
    mean_power = float(_resolve(args, "mean-power", float))
    grid = _resolve(args, "grid-choice")
    seed = int(_resolve(args, "seed", int))
    meta = {"sampling_grid": f"t_m = m/M ({grid})", "seed": seed}

    if scheme == "capacity":
        parser.error("capacity is a pseudo-scheme; it has no constellation")
    if scheme == "tgb-gam" and (args.rho_i is None or args.rho_o is None):
        parser.error("tgb-gam requires --rho-i and --rho-o")
    if scheme in ("tgb-gam-snr", "tgb-gam-opt") and args.snr_db is None:
        parser.error(f"{scheme} requires --snr-db")

    if scheme == "tgb-gam-opt":
        from .mi import ChannelSpec
        from .shaping import optimize_tgb
        s = 10.0 ** (args.snr_db / 10.0)
        res = optimize_tgb(args.m, ChannelSpec(s, mean_power),
                           papr_cap_db=args.papr_cap_db,
                           fix_rho_i_zero=not args.optimize_rho_i)
        c = cst.gen_tgb_gam(args.m, res.params, mean_power, grid=grid)
        meta.update(snr_db=args.snr_db, rho_i=res.params.rho_i,
                    rho_o=res.params.rho_o,
                    fix_rho_i_zero=not args.optimize_rho_i)
    else:
        snr_linear = None if args.snr_db is None else 10.0 ** (args.snr_db / 10.0)
        c = cst.make_constellation(scheme, args.m, snr_linear=snr_linear,
                                   rho_i=args.rho_i, rho_o=args.rho_o,
                                   mean_power=mean_power, grid=grid)
        if args.snr_db is not None:
            meta["snr_db"] = args.snr_db
        if args.rho_i is not None:
            meta.update(rho_i=args.rho_i, rho_o=args.rho_o)

    cst.write_json(c, args.out, meta=meta)
    print(f"scheme={c.scheme_tag} M={c.M} H={math.log2(c.M):.6g} bits "
          f"PAPR={cst.papr_db(c):.6g} dB -> {args.out}")
    return 0


def _cmd_mi_sweep(args, parser) -> int:
    schemes = _parse_schemes(args.scheme)
    if "tgb-gam" in schemes and (args.rho_i is None or args.rho_o is None):
        parser.error("scheme tgb-gam requires --rho-i and --rho-o")
    m_list = _parse_m_list(args.m)
    snr_dbs = parse_snr_grid(args.snr_grid)
    est = _estimator(args)
    rows = mi_sweep(schemes, m_list, snr_dbs, est, rho_i=args.rho_i,
                    rho_o=args.rho_o, papr_cap_db=args.papr_cap_db,
                    fix_rho_i_zero=not args.optimize_rho_i,
                    workers=int(_resolve(args, "workers", int)))
    write_csv(args.out, MI_COLUMNS, rows,
              meta=_meta(args, {"snr_grid": args.snr_grid, "seed": est.seed,
                                "quad_order": est.quad_order,
                                "n_samples": est.n_samples}))
    print(f"{len(rows)} rows -> {args.out}")
    return 0


def _cmd_gap_table(args, parser) -> int:
    schemes = _parse_schemes(args.scheme)
    if "tgb-gam" in schemes and (args.rho_i is None or args.rho_o is None):
        parser.error("scheme tgb-gam requires --rho-i and --rho-o")
    m_list = _parse_m_list(args.m)
    est = _estimator(args)
    rows = gap_table(schemes, m_list, args.rate, est,
                     rho_i=args.rho_i, rho_o=args.rho_o,
                     fix_rho_i_zero=not args.optimize_rho_i)
    write_csv(args.out, GAP_COLUMNS, rows,
              meta=_meta(args, {"rate_bits": args.rate, "seed": est.seed,
                                "quad_order": est.quad_order,
                                "n_samples": est.n_samples}))
    for r in rows:
        tag = f"{r.gap_db:.4f} dB" if r.gap_db is not None else f"error: {r.error}"
        print(f"{r.scheme} M={r.M}: {tag}")
    return 0


def _cmd_papr_sweep(args) -> int:
    m_list = _parse_m_list(args.m)
    snr_dbs = parse_snr_grid(args.snr_grid)
    rows = papr_sweep(args.variant, m_list, snr_dbs,
                      fix_rho_i_zero=not args.optimize_rho_i,
                      papr_cap_db=args.papr_cap_db)
    write_csv(args.out, PAPR_COLUMNS, rows,
              meta=_meta(args, {"variant": args.variant,
                                "snr_grid": args.snr_grid}))
    print(f"{len(rows)} rows -> {args.out}")
    return 0


def _cmd_plot(args) -> int:
    from .plotting import render
    render(args.kind, args.input, args.out)
    print(f"{args.kind} -> {args.out}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            return _cmd_generate(args, parser)
        if args.command == "mi-sweep":
            return _cmd_mi_sweep(args, parser)
        if args.command == "gap-table":
            return _cmd_gap_table(args, parser)
        if args.command == "papr-sweep":
            return _cmd_papr_sweep(args)
        if args.command == "plot":
            return _cmd_plot(args)
        parser.error(f"unknown command {args.command!r}")
    except (InfeasibleError, SchemaError, ValueError, OSError) as exc:
        print(f"gam {args.command}: error: {exc}", file=sys.stderr)
        return 3
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
