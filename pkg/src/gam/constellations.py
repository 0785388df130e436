"""Constellation generators for the golden-angle modulation (GAM) family.

A GAM constellation places point m (m = 1..M) at phase 2*pi*phi*m, where
phi = (3 - sqrt(5))/2, so consecutive points are separated by the golden
angle.  The radial law is free; this module provides the bell-shaped law
(`gen_gb_gam`), the uniform-disc law (`gen_disc_gam`), the truncated-Gaussian
inverse-sampling law (`gen_tgb_gam`), an SNR-parametric variant
(`gen_tgb_gam_snr`), and a square-QAM baseline (`gen_square_qam`).

All generators normalize to a requested mean power and return immutable
`Constellation` objects.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass, field

import numpy as np

# Fractional part of the golden ratio conjugate; 2*pi times this is the
# golden angle in radians.
GOLDEN_FRACTION = (3.0 - math.sqrt(5.0)) / 2.0
GOLDEN_ANGLE = 2.0 * math.pi * GOLDEN_FRACTION

GAM_SCHEMES = ("gb-gam", "disc-gam", "tgb-gam", "tgb-gam-snr")
SCHEME_TAGS = GAM_SCHEMES + ("square-qam",)

# Floor for the cdf argument fed to log(); keeps the top-point magnitude
# finite when the outer truncation radius saturates double precision.
_CDF_ARG_FLOOR = 1e-300

_TWO_PI = 2.0 * math.pi


def golden_phase(m: int) -> float:
    """Phase of the m-th GAM point, (2*pi*phi*m) mod 2*pi, in [0, 2*pi).

    m is the 1-based point index; m < 1 is rejected.
    """
    m = operator.index(m)
    if m < 1:
        raise ValueError(f"point index must be >= 1, got {m}")
    return math.fmod(GOLDEN_ANGLE * m, _TWO_PI)


def _golden_phases(M: int) -> np.ndarray:
    """Phases for m = 1..M (same arithmetic as `golden_phase`)."""
    return np.fmod(GOLDEN_ANGLE * np.arange(1, M + 1, dtype=float), _TWO_PI)


@dataclass(frozen=True)
class Constellation:
    """An ordered, equiprobable complex signal constellation.

    points holds the M complex amplitudes (index m = 1..M maps to
    points[m-1]); mean_power is the normalization target satisfied to
    1e-12 relative.  GAM schemes additionally satisfy the golden-angle
    phase law and have nondecreasing magnitudes.
    """

    points: np.ndarray
    M: int
    scheme_tag: str
    mean_power: float
    prob_per_point: float = field(init=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.complex128)
        if pts.ndim != 1 or pts.size == 0:
            raise ValueError("points must be a nonempty 1-d complex array")
        if self.M != pts.size:
            raise ValueError(f"M={self.M} does not match {pts.size} points")
        if self.scheme_tag not in SCHEME_TAGS:
            raise ValueError(f"unknown scheme_tag {self.scheme_tag!r}")
        if not (self.mean_power > 0.0 and math.isfinite(self.mean_power)):
            raise ValueError("mean_power must be positive and finite")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "prob_per_point", 1.0 / self.M)

        power = float(np.mean(np.abs(pts) ** 2))
        if abs(power - self.mean_power) > 1e-12 * self.mean_power:
            raise ValueError(
                f"mean power {power!r} deviates from target {self.mean_power!r} "
                "by more than 1e-12 relative"
            )
        if self.scheme_tag in GAM_SCHEMES:
            self._check_gam_laws(pts)

    def _check_gam_laws(self, pts: np.ndarray) -> None:
        mags = np.abs(pts)
        if np.any(np.diff(mags) < -1e-15 * mags.max()):
            raise ValueError("GAM magnitudes must be nondecreasing in m")
        expected = _golden_phases(self.M)
        nonzero = mags > 0.0
        # arg is undefined at the origin (gb-gam places r_1 = 0 there)
        delta = np.angle(pts[nonzero] * np.exp(-1j * expected[nonzero]))
        if np.any(np.abs(delta) > 1e-12):
            raise ValueError("GAM phases must follow the golden-angle law")

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.points)


def _from_magnitudes(raw_sq: np.ndarray, M: int, scheme: str,
                     mean_power: float) -> Constellation:
    """Build a GAM constellation from unnormalized squared magnitudes."""
    scale_sq = mean_power * M / float(np.sum(raw_sq))
    r = np.sqrt(raw_sq * scale_sq)
    pts = r * np.exp(1j * _golden_phases(M))
    return Constellation(points=pts, M=M, scheme_tag=scheme,
                         mean_power=mean_power)


def _check_m(M: int) -> int:
    M = operator.index(M)
    if M < 1:
        raise ValueError(f"constellation size must be >= 1, got {M}")
    return M


def gen_gb_gam(M: int, mean_power: float = 1.0, *,
               shift_index: bool = False) -> Constellation:
    """Bell-shaped GAM: r_m proportional to sqrt(ln(M/(M+1-m))).

    The default indexing m = 1..M places r_1 exactly at the origin.  With
    shift_index=True the law is evaluated on the shifted grid m = 0..M-1
    written as r_m = sqrt(-ln(1 - m/M)), m = 1..M, whose top term is capped
    by the cdf-argument floor; this variant is the outer-radius limit of
    `gen_tgb_gam` and exists for limit comparisons.
    """
    M = _check_m(M)
    if mean_power <= 0:
        raise ValueError("mean_power must be positive")
    if M == 1:
        # ln(M) - ln(M!)/M = 0: the printed normalization degenerates.
        raise ValueError("gb-gam is undefined for M=1 (normalization is 0/0)")
    m = np.arange(1, M + 1, dtype=float)
    if shift_index:
        raw_sq = -np.log(np.maximum(1.0 - m / M, _CDF_ARG_FLOOR))
    else:
        raw_sq = np.log(M / (M + 1.0 - m))
    return _from_magnitudes(raw_sq, M, "gb-gam", mean_power)


def gen_disc_gam(M: int, mean_power: float = 1.0) -> Constellation:
    """Disc-shaped GAM: r_m = sqrt(2*mean_power/(M+1)) * sqrt(m)."""
    M = _check_m(M)
    if mean_power <= 0:
        raise ValueError("mean_power must be positive")
    raw_sq = np.arange(1, M + 1, dtype=float)
    return _from_magnitudes(raw_sq, M, "disc-gam", mean_power)


@dataclass(frozen=True)
class ShapingParams:
    """Truncation radii of the radially shaped Gaussian target density.

    rho_i and rho_o are the inner/outer truncation radii in units of the
    unit-variance target density (pre-normalization).  Requires
    0 <= rho_i < rho_o; the degenerate ring rho_i == rho_o > 0 must be
    opted into with allow_ring=True.
    """

    rho_i: float
    rho_o: float
    allow_ring: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.rho_i) and math.isfinite(self.rho_o)):
            raise ValueError("truncation radii must be finite")
        if self.rho_i < 0:
            raise ValueError(f"inner radius must be >= 0, got {self.rho_i}")
        if self.rho_i == self.rho_o:
            if not (self.allow_ring and self.rho_o > 0):
                raise ValueError(
                    "rho_i == rho_o is a degenerate ring; construct with "
                    "allow_ring=True (and rho_o > 0) to permit it"
                )
        elif self.rho_o < self.rho_i:
            raise ValueError(
                f"outer radius {self.rho_o} must exceed inner radius {self.rho_i}"
            )

    @property
    def is_ring(self) -> bool:
        return self.rho_i == self.rho_o


def trunc_gauss_cdf(rho, params: ShapingParams):
    """Radial cdf of the truncated unit-variance Gaussian on [rho_i, rho_o]."""
    if params.is_ring:
        raise ValueError("cdf is undefined for the degenerate ring")
    rho = np.asarray(rho, dtype=float)
    ei = math.exp(-params.rho_i ** 2)
    eo = math.exp(-params.rho_o ** 2)
    out = (ei - np.exp(-np.square(rho))) / (ei - eo)
    return out if out.ndim else float(out)


def trunc_gauss_quantile(t, params: ShapingParams):
    """Inverse of `trunc_gauss_cdf` at probability t in (0, 1].

    Returns sqrt(-ln(e^{-rho_i^2} - t*(e^{-rho_i^2} - e^{-rho_o^2}))),
    clipped into [rho_i, rho_o].  The log argument is floored at 1e-300,
    which caps the returned radius when rho_o is large enough that
    e^{-rho_o^2} underflows.
    """
    if params.is_ring:
        raise ValueError("quantile is undefined for the degenerate ring")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0.0) or np.any(t_arr > 1.0):
        raise ValueError("quantile argument must lie in (0, 1]")
    ei = math.exp(-params.rho_i ** 2)
    eo = math.exp(-params.rho_o ** 2)
    arg = np.maximum(ei - t_arr * (ei - eo), _CDF_ARG_FLOOR)
    out = np.clip(np.sqrt(-np.log(arg)), params.rho_i, params.rho_o)
    return out if out.ndim else float(out)


def gen_tgb_gam(M: int, params: ShapingParams, mean_power: float = 1.0, *,
                grid: str = "right") -> Constellation:
    """Truncated bell-shaped GAM via inverse sampling of the radial cdf.

    Magnitudes are quantiles of the truncated-Gaussian radial law at
    t_m = m/M (grid="right", the default) or t_m = (m-1/2)/M
    (grid="midpoint"), then rescaled to the requested mean power.  A ring
    ShapingParams (rho_i == rho_o) yields M equal magnitudes sqrt(mean_power).
    """
    M = _check_m(M)
    if mean_power <= 0:
        raise ValueError("mean_power must be positive")
    if grid not in ("right", "midpoint"):
        raise ValueError(f"grid must be 'right' or 'midpoint', got {grid!r}")
    if params.is_ring:
        raw_sq = np.ones(M)
    else:
        offset = 0.0 if grid == "right" else 0.5
        t = (np.arange(1, M + 1, dtype=float) - offset) / M
        raw_sq = np.square(trunc_gauss_quantile(t, params))
    return _from_magnitudes(raw_sq, M, "tgb-gam", mean_power)


def gen_tgb_gam_snr(M: int, snr_linear: float,
                    mean_power: float = 1.0) -> Constellation:
    """SNR-parametric GAM: r_m^2 proportional to ln(1 - m/(S+M)).

    Equivalent to `gen_tgb_gam` with rho_i = 0 and
    rho_o = sqrt(ln(1 + M/S)); interpolates from the bell shape at low SNR
    to the disc shape at high SNR.
    """
    M = _check_m(M)
    if mean_power <= 0:
        raise ValueError("mean_power must be positive")
    if not (snr_linear > 0 and math.isfinite(snr_linear)):
        raise ValueError(
            f"snr_linear must be > 0, got {snr_linear}: the top term "
            "ln(1 - M/(S+M)) is singular at S = 0"
        )
    m = np.arange(1, M + 1, dtype=float)
    raw_sq = -np.log1p(-m / (snr_linear + M))
    return _from_magnitudes(raw_sq, M, "tgb-gam-snr", mean_power)


def snr_equivalent_rho_o(M: int, snr_linear: float) -> float:
    """Outer radius for which `gen_tgb_gam` (rho_i=0) equals `gen_tgb_gam_snr`."""
    if snr_linear <= 0:
        raise ValueError("snr_linear must be > 0")
    return math.sqrt(math.log1p(M / snr_linear))


def gen_square_qam(M: int, mean_power: float = 1.0) -> Constellation:
    """Square QAM on the odd-integer grid, scaled to mean_power.

    M must be an even power of two (4, 16, 64, 256, 1024, ...).  Points are
    sorted by (magnitude, phase) so magnitudes are nondecreasing; no bit
    labeling is implied.
    """
    M = _check_m(M)
    if mean_power <= 0:
        raise ValueError("mean_power must be positive")
    side = math.isqrt(M)
    if side * side != M or M < 4 or (M & (M - 1)) != 0:
        raise ValueError(
            f"square-qam needs M an even power of 2 (4, 16, 64, ...), got {M}"
        )
    levels = np.arange(-(side - 1), side, 2, dtype=float)
    re, im = np.meshgrid(levels, levels)
    pts = (re + 1j * im).ravel()
    pts *= math.sqrt(mean_power / float(np.mean(np.abs(pts) ** 2)))
    order = np.lexsort((np.angle(pts), np.round(np.abs(pts), 12)))
    return Constellation(points=pts[order], M=M, scheme_tag="square-qam",
                         mean_power=mean_power)


def papr_db(c: Constellation) -> float:
    """Peak-to-average power ratio, 10*log10(max|x|^2 / mean_power), in dB."""
    if len(c.points) == 0:
        raise ValueError("PAPR is undefined for an empty constellation")
    peak = float(np.max(np.abs(c.points) ** 2))
    return 10.0 * math.log10(peak / c.mean_power)


def make_constellation(scheme: str, M: int, *, snr_linear: float | None = None,
                       rho_i: float | None = None, rho_o: float | None = None,
                       mean_power: float = 1.0, grid: str = "right") -> Constellation:
    """Dispatch a scheme tag (or the 'qam' alias) to its generator.

    tgb-gam requires both radii; tgb-gam-snr requires snr_linear.
    """
    if scheme == "gb-gam":
        return gen_gb_gam(M, mean_power)
    if scheme == "disc-gam":
        return gen_disc_gam(M, mean_power)
    if scheme == "tgb-gam":
        if rho_i is None or rho_o is None:
            raise ValueError("tgb-gam requires rho_i and rho_o")
        return gen_tgb_gam(M, ShapingParams(rho_i, rho_o), mean_power, grid=grid)
    if scheme == "tgb-gam-snr":
        if snr_linear is None:
            raise ValueError("tgb-gam-snr requires snr_linear")
        return gen_tgb_gam_snr(M, snr_linear, mean_power)
    if scheme in ("square-qam", "qam"):
        return gen_square_qam(M, mean_power)
    raise ValueError(f"unknown scheme {scheme!r}")


def to_json_dict(c: Constellation, meta: dict | None = None) -> dict:
    """JSON-ready dict {scheme, M, mean_power, points:[{re, im, p}]}.

    re/im are emitted as 17-significant-digit strings, which round-trip
    float64 exactly.
    """
    doc = {
        "scheme": c.scheme_tag,
        "M": c.M,
        "mean_power": c.mean_power,
        "points": [
            {"re": format(p.real, ".17g"), "im": format(p.imag, ".17g"),
             "p": c.prob_per_point}
            for p in c.points
        ],
    }
    if meta:
        doc["meta"] = meta
    return doc


def write_json(c: Constellation, path, meta: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_dict(c, meta), fh, indent=1)
        fh.write("\n")


def from_json_dict(doc: dict) -> Constellation:
    pts = np.array([float(p["re"]) + 1j * float(p["im"]) for p in doc["points"]],
                   dtype=np.complex128)
    return Constellation(points=pts, M=int(doc["M"]), scheme_tag=doc["scheme"],
                         mean_power=float(doc["mean_power"]))


def read_json(path) -> Constellation:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))
