"""Sweep drivers: MI-vs-SNR curves, SNR-gap tables, and PAPR-vs-SNR curves.

Rows are plain records with one line per (scheme, M, SNR) evaluation and are
written as diffable CSV.  Comparisons are sharpened with common random
numbers: every scheme at a given SNR grid point reuses the same noise draws.
A fixed command line and seed reproduce a byte-identical CSV.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import constellations as cst
from .errors import InfeasibleError, SchemaError
from .mi import ChannelSpec, awgn_capacity, estimate_mi_ghq, estimate_mi_mc, snr_gap_db
from .shaping import OptConfig, optimize_tgb

#: CSV schema for MI sweeps (field order is the wire format).
MI_COLUMNS = ("scheme", "M", "snr_db", "mi_bits", "std_error", "papr_db",
              "rho_i", "rho_o", "method", "budget", "seed")
GAP_COLUMNS = ("scheme", "M", "gap_db", "error")
PAPR_COLUMNS = ("scheme", "M", "snr_db", "papr_db", "rho_i", "rho_o")

#: Scheme tags accepted by sweeps; 'qam' is an input alias for square-qam.
SWEEP_SCHEMES = ("gb-gam", "disc-gam", "tgb-gam", "tgb-gam-snr", "tgb-gam-opt",
                 "square-qam", "capacity")
_ALIASES = {"qam": "square-qam", "optimized": "tgb-gam-opt"}


def canonical_scheme(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in SWEEP_SCHEMES:
        raise ValueError(f"unknown scheme {name!r}; expected one of {SWEEP_SCHEMES}")
    return name


@dataclass(frozen=True)
class SweepRow:
    """One MI evaluation; fields mirror the CSV columns exactly."""

    scheme: str
    M: int
    snr_db: float
    mi_bits: float | None
    std_error: float | None
    papr_db: float | None
    rho_i: float | None
    rho_o: float | None
    method: str
    budget: int
    seed: int

    def sort_key(self):
        return (self.scheme, self.M, self.snr_db)


@dataclass(frozen=True)
class EstimatorConfig:
    """Estimator budgets for sweeps.

    Quadrature of order quad_order is used up to mc_min_m - 1 points;
    larger constellations fall back to Monte Carlo with n_samples draws
    (per-point seeds derive from `seed` plus the SNR grid index, so schemes
    share draws at each grid point).
    """

    quad_order: int = 48
    n_samples: int = 2048
    mc_min_m: int = 512
    seed: int = 0


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to evaluate one sweep grid point."""

    scheme: str
    M: int
    snr_db: float
    point_seed: int
    est: EstimatorConfig
    rho_i: float | None = None
    rho_o: float | None = None
    papr_cap_db: float | None = None
    fix_rho_i_zero: bool = True
    opt: OptConfig = field(default_factory=OptConfig)


def parse_snr_grid(spec: str) -> list[float]:
    """Parse 'start:stop:step' (dB, inclusive of stop up to rounding)."""
    try:
        start, stop, step = (float(tok) for tok in spec.split(":"))
    except ValueError as exc:
        raise ValueError(f"bad SNR grid {spec!r}; expected start:stop:step") from exc
    if step <= 0 or stop < start:
        raise ValueError(f"bad SNR grid {spec!r}; need step > 0 and stop >= start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(n)]


def _point_seed(base_seed: int, snr_index: int) -> int:
    # shared across schemes and sizes at a grid point (common random numbers)
    return base_seed * 100003 + snr_index


def eval_mi_point(spec: SweepSpec) -> SweepRow:
    """Evaluate one (scheme, M, snr_db) grid point into a SweepRow."""
    s = 10.0 ** (spec.snr_db / 10.0)
    est = spec.est

    if spec.scheme == "capacity":
        return SweepRow(scheme="capacity", M=0, snr_db=spec.snr_db,
                        mi_bits=awgn_capacity(s), std_error=0.0, papr_db=0.0,
                        rho_i=None, rho_o=None, method="exact", budget=0,
                        seed=est.seed)

    rho_i = rho_o = None
    if spec.scheme == "tgb-gam-opt":
        ch = ChannelSpec(s)
        try:
            opt = optimize_tgb(spec.M, ch, papr_cap_db=spec.papr_cap_db,
                               fix_rho_i_zero=spec.fix_rho_i_zero,
                               config=spec.opt)
        except InfeasibleError:
            return SweepRow(scheme=spec.scheme, M=spec.M, snr_db=spec.snr_db,
                            mi_bits=None, std_error=None, papr_db=None,
                            rho_i=None, rho_o=None, method="error", budget=0,
                            seed=est.seed)
        rho_i, rho_o = opt.params.rho_i, opt.params.rho_o
        c = cst.gen_tgb_gam(spec.M, opt.params, 1.0)
    elif spec.scheme == "tgb-gam":
        rho_i, rho_o = spec.rho_i, spec.rho_o
        c = cst.make_constellation("tgb-gam", spec.M, rho_i=rho_i, rho_o=rho_o)
    elif spec.scheme == "tgb-gam-snr":
        rho_i, rho_o = 0.0, cst.snr_equivalent_rho_o(spec.M, s)
        c = cst.gen_tgb_gam_snr(spec.M, s)
    else:
        c = cst.make_constellation(spec.scheme, spec.M)

    ch = ChannelSpec(s, c.mean_power)
    if spec.M >= est.mc_min_m:
        e = estimate_mi_mc(c, ch, est.n_samples, seed=spec.point_seed)
    else:
        e = estimate_mi_ghq(c, ch, est.quad_order)
    return SweepRow(scheme=spec.scheme, M=spec.M, snr_db=spec.snr_db,
                    mi_bits=e.mi_bits, std_error=e.std_error,
                    papr_db=cst.papr_db(c), rho_i=rho_i, rho_o=rho_o,
                    method=e.method, budget=e.budget,
                    seed=spec.point_seed if e.method == "monte-carlo" else est.seed)


def _run_points(specs: list[SweepSpec], workers: int) -> list[SweepRow]:
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(eval_mi_point, specs, chunksize=1))
    else:
        rows = [eval_mi_point(sp) for sp in specs]
    return sorted(rows, key=SweepRow.sort_key)


def mi_sweep(schemes: list[str], m_list: list[int], snr_dbs: list[float],
             est: EstimatorConfig | None = None, *,
             rho_i: float | None = None, rho_o: float | None = None,
             papr_cap_db: float | None = None, fix_rho_i_zero: bool = True,
             opt: OptConfig | None = None, workers: int = 1) -> list[SweepRow]:
    """MI of every (scheme, M, SNR) combination, sorted by (scheme, M, SNR).

    SNR-dependent and optimized schemes are rebuilt at every SNR point;
    infeasible optimizer points become rows with method='error' and the run
    continues.  The capacity pseudo-scheme contributes one exact row per SNR
    with M = 0.
    """
    est = est or EstimatorConfig()
    opt = opt or OptConfig()
    schemes = [canonical_scheme(s) for s in schemes]
    specs = []
    for scheme in schemes:
        sizes = [0] if scheme == "capacity" else m_list
        for m in sizes:
            for idx, snr_db in enumerate(snr_dbs):
                specs.append(SweepSpec(
                    scheme=scheme, M=m, snr_db=snr_db,
                    point_seed=_point_seed(est.seed, idx), est=est,
                    rho_i=rho_i, rho_o=rho_o, papr_cap_db=papr_cap_db,
                    fix_rho_i_zero=fix_rho_i_zero, opt=opt))
    return _run_points(specs, workers)


@dataclass(frozen=True)
class GapRow:
    scheme: str
    M: int
    gap_db: float | None
    error: str = ""


def gap_table(schemes: list[str], m_list: list[int], rate_target: float,
              est: EstimatorConfig | None = None, *,
              rho_i: float | None = None, rho_o: float | None = None,
              fix_rho_i_zero: bool = True,
              opt: OptConfig | None = None) -> list[GapRow]:
    """SNR gap to capacity at rate_target for every (scheme, M).

    Infeasible targets (rate >= log2 M) produce error rows rather than
    aborting the table.
    """
    est = est or EstimatorConfig()
    opt = opt or OptConfig()
    rows = []
    for scheme in (canonical_scheme(s) for s in schemes):
        for m in ([0] if scheme == "capacity" else m_list):
            try:
                gap = _gap_for(scheme, m, rate_target, est, rho_i=rho_i,
                               rho_o=rho_o, fix_rho_i_zero=fix_rho_i_zero,
                               opt=opt)
                rows.append(GapRow(scheme=scheme, M=m, gap_db=gap))
            except (InfeasibleError, ValueError) as exc:
                rows.append(GapRow(scheme=scheme, M=m, gap_db=None,
                                   error=str(exc)))
    return sorted(rows, key=lambda r: (r.scheme, r.M))


def _gap_for(scheme: str, m: int, rate: float, est: EstimatorConfig, *,
             rho_i: float | None, rho_o: float | None,
             fix_rho_i_zero: bool, opt: OptConfig) -> float:
    if scheme == "tgb-gam-opt":
        if not rate < math.log2(m):
            raise InfeasibleError(
                f"rate target {rate} is not below log2(M) = {math.log2(m)}")

        def build(s):
            res = optimize_tgb(m, ChannelSpec(s),
                               fix_rho_i_zero=fix_rho_i_zero, config=opt)
            return cst.gen_tgb_gam(m, res.params, 1.0)

        return snr_gap_db(build, m, rate, quad_order=est.quad_order,
                          n_samples=est.n_samples, mc_min_m=est.mc_min_m,
                          seed=est.seed,
                          estimator="mc" if m >= est.mc_min_m else "ghq")
    return snr_gap_db(scheme, m, rate, rho_i=rho_i, rho_o=rho_o,
                      quad_order=est.quad_order, n_samples=est.n_samples,
                      mc_min_m=est.mc_min_m, seed=est.seed)


@dataclass(frozen=True)
class PaprRow:
    scheme: str
    M: int
    snr_db: float
    papr_db: float | None
    rho_i: float | None
    rho_o: float | None


def papr_sweep(variant: str, m_list: list[int], snr_dbs: list[float], *,
               fix_rho_i_zero: bool = True, papr_cap_db: float | None = None,
               opt: OptConfig | None = None) -> list[PaprRow]:
    """PAPR per (M, SNR) for the SNR-parametric or the optimized shaping.

    variant is 'snr-form' (closed-form `gen_tgb_gam_snr`) or 'optimized'
    (shaping optimizer rerun at every SNR).
    """
    if variant not in ("snr-form", "optimized"):
        raise ValueError(f"variant must be 'snr-form' or 'optimized', got {variant!r}")
    opt = opt or OptConfig()
    rows = []
    for m in m_list:
        for snr_db in snr_dbs:
            s = 10.0 ** (snr_db / 10.0)
            if variant == "snr-form":
                c = cst.gen_tgb_gam_snr(m, s)
                rows.append(PaprRow("tgb-gam-snr", m, snr_db, cst.papr_db(c),
                                    0.0, cst.snr_equivalent_rho_o(m, s)))
            else:
                try:
                    res = optimize_tgb(m, ChannelSpec(s),
                                       papr_cap_db=papr_cap_db,
                                       fix_rho_i_zero=fix_rho_i_zero,
                                       config=opt)
                except InfeasibleError:
                    rows.append(PaprRow("tgb-gam-opt", m, snr_db, None, None, None))
                    continue
                rows.append(PaprRow("tgb-gam-opt", m, snr_db, res.papr_db,
                                    res.params.rho_i, res.params.rho_o))
    return sorted(rows, key=lambda r: (r.scheme, r.M, r.snr_db))


# -- CSV I/O ------------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def write_csv(path, columns: tuple[str, ...], rows, meta: dict | None = None) -> None:
    """Write rows (dataclasses with fields matching `columns`) as CSV.

    Metadata is emitted as leading '# key=value' comment lines; the header
    row matches `columns` exactly.  Output depends only on the inputs, so
    identical runs produce byte-identical files.
    """
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for key in sorted(meta or {}):
            fh.write(f"# {key}={meta[key]}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(getattr(row, col)) for col in columns])


def read_csv(path, expected_columns: tuple[str, ...] | None = None):
    """Read a sweep CSV back as (header, list-of-dict rows), checking schema."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError(f"{path}: empty CSV, no header row") from None
    if expected_columns is not None:
        missing = [c for c in expected_columns if c not in header]
        extra = [c for c in header if c not in expected_columns]
        if missing:
            raise SchemaError(f"{path}: missing column {missing[0]!r}")
        if extra:
            raise SchemaError(f"{path}: unexpected column {extra[0]!r}")
        if list(header) != list(expected_columns):
            raise SchemaError(f"{path}: column order must be {expected_columns}")
    rows = [dict(zip(header, rec)) for rec in reader if rec]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return header, rows
