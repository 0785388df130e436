"""Golden-angle modulation toolkit.

Constellation generators for the golden-angle spiral family and square QAM,
mutual-information estimation over the complex AWGN channel, PAPR analysis,
a two-radius shaping optimizer, and sweep drivers behind the `gam` CLI.
"""

from .constellations import (
    Constellation,
    GOLDEN_ANGLE,
    GOLDEN_FRACTION,
    ShapingParams,
    gen_disc_gam,
    gen_gb_gam,
    gen_square_qam,
    gen_tgb_gam,
    gen_tgb_gam_snr,
    golden_phase,
    make_constellation,
    papr_db,
    read_json,
    snr_equivalent_rho_o,
    to_json_dict,
    trunc_gauss_cdf,
    trunc_gauss_quantile,
    write_json,
)
from .errors import InfeasibleError, SchemaError
from .mi import (
    ChannelSpec,
    MiEstimate,
    awgn_capacity,
    estimate_mi_ghq,
    estimate_mi_mc,
    snr_gap_db,
)
from .shaping import OptConfig, OptResult, optimize_tgb, validate_params
from .sweep import (
    EstimatorConfig,
    GapRow,
    PaprRow,
    SweepRow,
    gap_table,
    mi_sweep,
    papr_sweep,
    parse_snr_grid,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelSpec", "Constellation", "EstimatorConfig", "GapRow",
    "GOLDEN_ANGLE", "GOLDEN_FRACTION", "InfeasibleError", "MiEstimate",
    "OptConfig", "OptResult", "PaprRow", "SchemaError", "ShapingParams",
    "SweepRow", "awgn_capacity", "estimate_mi_ghq", "estimate_mi_mc",
    "gap_table", "gen_disc_gam", "gen_gb_gam", "gen_square_qam",
    "gen_tgb_gam", "gen_tgb_gam_snr", "golden_phase", "make_constellation",
    "mi_sweep", "optimize_tgb", "papr_db", "papr_sweep", "parse_snr_grid",
    "read_json", "snr_equivalent_rho_o", "snr_gap_db", "to_json_dict",
    "trunc_gauss_cdf", "trunc_gauss_quantile", "validate_params",
    "write_json",
]
