import math

import numpy as np
import pytest

from gam.constellations import (
    ShapingParams,
    gen_disc_gam,
    gen_gb_gam,
    gen_tgb_gam,
    papr_db,
)
from gam.errors import InfeasibleError
from gam.mi import ChannelSpec, estimate_mi_ghq
from gam.shaping import OptConfig, optimize_tgb, validate_params

FAST = OptConfig(quad_order=24, n_rho_o=15)


class TestValidateParams:
    def test_plain_feasible(self):
        assert validate_params((0.0, 2.0), 16)
        assert validate_params(ShapingParams(0.1, 1.5), 16)

    def test_ordering_violations(self):
        assert not validate_params((2.0, 1.0), 16)
        assert not validate_params((-0.5, 1.0), 16)
        assert not validate_params((1.0, 1.0), 16)
        assert not validate_params((0.0, math.inf), 16)

    def test_papr_cap(self):
        # the wide-truncation shape concentrates power in the top point,
        # blowing the PAPR far past 3 dB
        assert not validate_params((0.0, 30.0), 256, papr_cap_db=3.0)
        assert papr_db(gen_tgb_gam(256, ShapingParams(0.0, 30.0))) > 3.0
        # a disc-like shape stays under a roomy cap
        assert validate_params((0.0, 0.1), 256, papr_cap_db=3.5)


class TestOptimizeTgb:
    def test_dominates_both_closed_forms(self):
        ch = ChannelSpec(10.0)
        res = optimize_tgb(16, ch, fix_rho_i_zero=True, config=FAST)
        order = 48
        mi_opt = estimate_mi_ghq(gen_tgb_gam(16, res.params), ch, order).mi_bits
        mi_gb = estimate_mi_ghq(gen_gb_gam(16), ch, order).mi_bits
        mi_disc = estimate_mi_ghq(gen_disc_gam(16), ch, order).mi_bits
        assert mi_opt >= max(mi_gb, mi_disc) - 1e-3

    def test_papr_cap_respected(self):
        cap = 10 * math.log10(2 * 64 / 65) - 1.0  # below the disc floor
        res = optimize_tgb(64, ChannelSpec(10.0), papr_cap_db=cap,
                           fix_rho_i_zero=False, config=FAST)
        assert res.papr_db <= cap + 1e-9
        assert res.params.rho_i > 0.0  # cap below disc needs an inner hole

    def test_negative_cap_infeasible(self):
        with pytest.raises(InfeasibleError):
            optimize_tgb(16, ChannelSpec(10.0), papr_cap_db=-1.0)

    def test_impossible_cap_with_fixed_inner_radius(self):
        # with rho_i = 0 the family cannot beat the disc PAPR floor
        cap = 10 * math.log10(2 * 64 / 65) - 1.0
        with pytest.raises(InfeasibleError):
            optimize_tgb(64, ChannelSpec(10.0), papr_cap_db=cap,
                         fix_rho_i_zero=True, config=FAST)

    def test_deterministic(self):
        a = optimize_tgb(16, ChannelSpec(5.0), fix_rho_i_zero=True, config=FAST)
        b = optimize_tgb(16, ChannelSpec(5.0), fix_rho_i_zero=True, config=FAST)
        assert a == b

    def test_high_snr_shape_is_disc_like(self):
        # quoted behavior at M=256, 35 dB: the optimum approaches the disc
        res = optimize_tgb(256, ChannelSpec(10 ** 3.5), fix_rho_i_zero=True,
                           config=OptConfig(quad_order=24))
        r_opt = np.abs(gen_tgb_gam(256, res.params).points)
        r_disc = np.abs(gen_disc_gam(256).points)
        assert np.max(np.abs(r_opt - r_disc) / r_disc) <= 0.05

    def test_result_metadata(self):
        res = optimize_tgb(16, ChannelSpec(5.0), fix_rho_i_zero=True, config=FAST)
        assert res.evaluations > 0
        assert res.converged
        assert res.papr_db == pytest.approx(
            papr_db(gen_tgb_gam(16, res.params)), abs=1e-12)

    def test_rejects_tiny_m(self):
        with pytest.raises(ValueError):
            optimize_tgb(1, ChannelSpec(5.0))
