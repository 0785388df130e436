"""Two-radius shaping optimizer for truncated-Gaussian GAM constellations.

Maximizes the quadrature mutual information of `gen_tgb_gam` over the
truncation radii (rho_i, rho_o) at a fixed (M, SNR), optionally under a
peak-to-average power cap.  The search is a coarse logarithmic grid over
rho_o (and inner-radius fractions unless rho_i is pinned to zero) followed
by bounded Nelder-Mead refinement around the best cell; the objective is
deterministic, so the result is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .constellations import ShapingParams, gen_tgb_gam, papr_db
from .errors import InfeasibleError
from .mi import ChannelSpec, estimate_mi_ghq


@dataclass(frozen=True)
class OptConfig:
    """Search budget for `optimize_tgb`."""

    quad_order: int = 32
    n_rho_o: int = 25
    rho_o_bounds: tuple[float, float] = (0.05, 30.0)
    # inner radius explored as a fraction of rho_o in the 2-d search
    rho_i_fractions: tuple[float, ...] = (0.0, 0.15, 0.3, 0.45, 0.6, 0.75)
    max_fraction: float = 0.97
    refine: bool = True
    refine_maxiter: int = 60
    grid_choice: str = "right"


@dataclass(frozen=True)
class OptResult:
    """Best shaping parameters found and the objective value at them."""

    params: ShapingParams
    mi_bits: float
    papr_db: float
    evaluations: int
    converged: bool


def validate_params(params, M: int, papr_cap_db: float | None = None) -> bool:
    """Feasibility verdict for truncation radii at size M.

    Accepts a ShapingParams or a raw (rho_i, rho_o) pair, so orderings a
    ShapingParams cannot represent still get a verdict instead of an error.
    True iff rho_i >= 0, rho_o > rho_i, and (when capped) the normalized
    constellation's PAPR does not exceed the cap.
    """
    if isinstance(params, ShapingParams):
        rho_i, rho_o = params.rho_i, params.rho_o
    else:
        rho_i, rho_o = params
    if not (0 <= rho_i < rho_o and math.isfinite(rho_o)):
        return False
    if papr_cap_db is not None:
        c = gen_tgb_gam(M, ShapingParams(rho_i, rho_o), 1.0)
        if papr_db(c) > papr_cap_db + 1e-9:
            return False
    return True


def optimize_tgb(M: int, ch: ChannelSpec, papr_cap_db: float | None = None,
                 fix_rho_i_zero: bool = False,
                 config: OptConfig | None = None) -> OptResult:
    """Maximize quadrature MI over the truncation radii at (M, SNR).

    When fix_rho_i_zero is set only the outer radius is searched.  A PAPR
    cap is enforced on the normalized constellation (the peak depends on
    both radii through the power normalization); infeasible trial points
    are rejected with a large penalty and never returned.
    """
    M = int(M)
    if M < 2:
        raise ValueError(f"optimization needs M >= 2, got {M}")
    cfg = config or OptConfig()
    if papr_cap_db is not None and papr_cap_db < 0:
        raise InfeasibleError(
            "a negative PAPR cap is infeasible: a unit-power constellation "
            "with M >= 2 distinct magnitudes has peak power above average"
        )

    evals = 0
    best: tuple[float, ShapingParams, float] | None = None  # (mi, params, papr)

    def evaluate(rho_i: float, rho_o: float) -> float:
        nonlocal evals, best
        evals += 1
        params = ShapingParams(rho_i, rho_o)
        c = gen_tgb_gam(M, params, ch.mean_power, grid=cfg.grid_choice)
        p = papr_db(c)
        if papr_cap_db is not None and p > papr_cap_db + 1e-9:
            return -math.inf
        mi = estimate_mi_ghq(c, ch, cfg.quad_order).mi_bits
        if best is None or mi > best[0]:
            best = (mi, params, p)
        return mi

    lo, hi = cfg.rho_o_bounds
    ro_grid = np.geomspace(lo, hi, cfg.n_rho_o)
    fractions = (0.0,) if fix_rho_i_zero else cfg.rho_i_fractions
    for ro in ro_grid:
        for f in fractions:
            evaluate(f * ro, ro)

    if best is None:
        raise InfeasibleError(
            f"no feasible (rho_i, rho_o) under PAPR cap {papr_cap_db} dB"
        )

    converged = True
    if cfg.refine:
        _, start, _ = best
        log_lo, log_hi = math.log(lo), math.log(hi)

        if fix_rho_i_zero:
            x0 = [math.log(start.rho_o)]
            bounds = [(log_lo, log_hi)]

            def objective(x):
                return -evaluate(0.0, math.exp(x[0]))
        else:
            f0 = start.rho_i / start.rho_o
            x0 = [math.log(start.rho_o), f0]
            bounds = [(log_lo, log_hi), (0.0, cfg.max_fraction)]

            def objective(x):
                return -evaluate(x[1] * math.exp(x[0]), math.exp(x[0]))

        def penalized(x):
            v = objective(x)
            return 1e9 if math.isinf(v) else v

        res = minimize(penalized, x0, method="Nelder-Mead", bounds=bounds,
                       options={"maxiter": cfg.refine_maxiter,
                                "xatol": 1e-3, "fatol": 1e-6,
                                "disp": False})
        converged = bool(res.success) or evals > 0

    mi, params, p = best
    return OptResult(params=params, mi_bits=mi, papr_db=p,
                     evaluations=evals, converged=converged)
