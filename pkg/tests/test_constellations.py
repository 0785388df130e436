import math

import numpy as np
import numpy.testing as npt
import pytest

from gam.constellations import (
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

ALL_M = [2, 3, 4, 7, 16, 64, 256, 1024]


def quantile_by_bisection(t, rho_i, rho_o, iters=200):
    """Independent quantile oracle: bisect the cdf on [rho_i, rho_o]."""
    params = ShapingParams(rho_i, rho_o)
    lo, hi = rho_i, rho_o
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if trunc_gauss_cdf(mid, params) < t:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def generator_zoo(M):
    """One constellation per generator at size M (skipping invalid combos)."""
    out = [gen_disc_gam(M), gen_tgb_gam(M, ShapingParams(0.0, 2.0)),
           gen_tgb_gam_snr(M, 10.0)]
    if M >= 2:
        out.append(gen_gb_gam(M))
    side = math.isqrt(M)
    if side * side == M and M >= 4 and (M & (M - 1)) == 0:
        out.append(gen_square_qam(M))
    return out


class TestGoldenPhase:
    def test_first_point(self):
        assert golden_phase(1) == pytest.approx(2.399963229728653, abs=1e-12)

    def test_fraction_constant(self):
        assert GOLDEN_FRACTION == pytest.approx(0.3819660112501051, abs=1e-15)
        # quoted to three decimals as ~0.381
        assert abs(GOLDEN_FRACTION - 0.381) < 1e-3

    @pytest.mark.parametrize("m", [1, 2, 5, 13, 144, 10**6])
    def test_matches_scalar_reduction(self, m):
        expected = math.fmod(GOLDEN_ANGLE * m, 2 * math.pi)
        assert golden_phase(m) == pytest.approx(expected, abs=1e-12)
        assert 0.0 <= golden_phase(m) < 2 * math.pi

    @pytest.mark.parametrize("m", [0, -1, -5])
    def test_rejects_nonpositive(self, m):
        with pytest.raises(ValueError):
            golden_phase(m)

    def test_rejects_float_index(self):
        with pytest.raises(TypeError):
            golden_phase(1.5)


class TestGbGam:
    def test_m4_magnitudes(self):
        # frozen from direct evaluation of the magnitude law at M=4, P=1
        expected = [0.0, 0.6972297762871362, 1.0822616194892665,
                    1.5305490603175909]
        npt.assert_allclose(np.abs(gen_gb_gam(4).points), expected, atol=1e-4)

    def test_origin_point(self):
        for M in (2, 4, 16):
            assert abs(gen_gb_gam(M).points[0]) == 0.0

    @pytest.mark.parametrize("M", [2, 4, 16, 64, 256, 1024])
    def test_unit_power(self, M):
        c = gen_gb_gam(M)
        assert np.mean(np.abs(c.points) ** 2) == pytest.approx(1.0, rel=1e-12)

    def test_degenerate_sizes(self):
        with pytest.raises(ValueError):
            gen_gb_gam(1)
        with pytest.raises(ValueError):
            gen_gb_gam(0)

    def test_shift_index_matches_wide_truncation(self):
        # the shifted law is the rho_o -> inf member of the truncated family
        for M in (4, 16, 256):
            shifted = np.abs(gen_gb_gam(M, shift_index=True).points)
            wide = np.abs(gen_tgb_gam(M, ShapingParams(0.0, 30.0)).points)
            npt.assert_allclose(shifted, wide, rtol=1e-12)


class TestDiscGam:
    def test_single_point(self):
        c = gen_disc_gam(1)
        assert c.M == 1
        assert abs(c.points[0]) == pytest.approx(1.0, rel=1e-12)
        assert papr_db(c) == pytest.approx(0.0, abs=1e-12)

    def test_m4_peak(self):
        c = gen_disc_gam(4)
        assert abs(c.points[-1]) == pytest.approx(math.sqrt(8 / 5), rel=1e-12)
        assert papr_db(c) == pytest.approx(10 * math.log10(8 / 5), abs=1e-12)

    @pytest.mark.parametrize("M", ALL_M)
    def test_papr_closed_form(self, M):
        assert papr_db(gen_disc_gam(M)) == pytest.approx(
            10 * math.log10(2 * M / (M + 1)), abs=1e-12)

    def test_papr_large_m_limit(self):
        assert papr_db(gen_disc_gam(10**6)) == pytest.approx(
            10 * math.log10(2), abs=1e-5)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            gen_disc_gam(0)


class TestTruncGaussQuantile:
    def test_endpoint(self):
        params = ShapingParams(0.0, 3.0)
        assert trunc_gauss_quantile(1.0, params) == pytest.approx(3.0, abs=1e-10)
        params = ShapingParams(0.5, 2.5)
        assert trunc_gauss_quantile(1.0, params) == pytest.approx(2.5, abs=1e-10)

    @pytest.mark.parametrize("rho_i,rho_o", [(0.0, 3.0), (0.0, 0.7),
                                             (0.5, 2.5), (1.5, 1.8)])
    def test_cdf_inverse_pair(self, rho_i, rho_o):
        params = ShapingParams(rho_i, rho_o)
        t = np.linspace(1e-6, 1.0, 257)
        rho = trunc_gauss_quantile(t, params)
        npt.assert_allclose(trunc_gauss_cdf(rho, params), t, atol=1e-10)
        assert np.all(rho >= rho_i) and np.all(rho <= rho_o)

    @pytest.mark.parametrize("t", [0.05, 0.3141, 0.5, 0.9, 0.999])
    def test_against_bisection_oracle(self, t):
        params = ShapingParams(0.0, 3.0)
        assert trunc_gauss_quantile(t, params) == pytest.approx(
            quantile_by_bisection(t, 0.0, 3.0), abs=1e-9)

    def test_median_of_wide_truncation(self):
        # with rho_o effectively infinite, quantile(1 - 1/e) = 1 exactly
        params = ShapingParams(0.0, 30.0)
        t = 1 - 1 / math.e
        assert trunc_gauss_quantile(t, params) == pytest.approx(1.0, abs=1e-12)
        assert trunc_gauss_quantile(t, params) == pytest.approx(
            quantile_by_bisection(t, 0.0, 30.0), abs=1e-9)

    @pytest.mark.parametrize("t", [0.0, -0.1, 1.0000001, 2.0])
    def test_domain(self, t):
        with pytest.raises(ValueError):
            trunc_gauss_quantile(t, ShapingParams(0.0, 3.0))


class TestShapingParams:
    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            ShapingParams(2.0, 1.0)
        with pytest.raises(ValueError):
            ShapingParams(-0.5, 1.0)
        with pytest.raises(ValueError):
            ShapingParams(math.inf, math.inf)

    def test_ring_needs_opt_in(self):
        with pytest.raises(ValueError):
            ShapingParams(1.0, 1.0)
        p = ShapingParams(1.0, 1.0, allow_ring=True)
        assert p.is_ring


class TestTgbGam:
    def test_m2_magnitudes(self):
        # frozen from direct evaluation at rho_i=0, rho_o=1, t_m = m/M
        c = gen_tgb_gam(2, ShapingParams(0.0, 1.0))
        npt.assert_allclose(np.abs(c.points),
                            [0.7420272047218769, 1.2039084796830024], atol=1e-4)

    def test_midpoint_grid(self):
        # frozen from direct evaluation at t_m = (m - 1/2)/M
        c = gen_tgb_gam(2, ShapingParams(0.0, 1.0), grid="midpoint")
        ei, eo = 1.0, math.exp(-1.0)
        rho = [math.sqrt(-math.log(ei - t * (ei - eo))) for t in (0.25, 0.75)]
        scale = math.sqrt(2 / sum(r * r for r in rho))
        npt.assert_allclose(np.abs(c.points), [scale * r for r in rho], rtol=1e-12)

    def test_bad_grid_name(self):
        with pytest.raises(ValueError):
            gen_tgb_gam(4, ShapingParams(0.0, 1.0), grid="left")

    @pytest.mark.parametrize("M", [1, 2, 16, 256])
    def test_unit_power(self, M):
        c = gen_tgb_gam(M, ShapingParams(0.3, 2.2))
        assert np.mean(np.abs(c.points) ** 2) == pytest.approx(1.0, rel=1e-12)

    def test_ring_limit(self):
        c = gen_tgb_gam(8, ShapingParams(1.3, 1.3, allow_ring=True),
                        mean_power=2.0)
        npt.assert_allclose(np.abs(c.points), math.sqrt(2.0), rtol=1e-12)

    @pytest.mark.parametrize("M,snr", [(4, 4.0), (16, 1.0), (64, 300.0)])
    def test_snr_form_is_a_family_member(self, M, snr):
        params = ShapingParams(0.0, snr_equivalent_rho_o(M, snr))
        via_tgb = np.abs(gen_tgb_gam(M, params).points)
        direct = np.abs(gen_tgb_gam_snr(M, snr).points)
        npt.assert_allclose(via_tgb, direct, rtol=1e-10)


class TestTgbGamSnr:
    def test_m4_s4_magnitudes(self):
        # frozen from direct evaluation of the SNR-parametric law
        c = gen_tgb_gam_snr(4, 4.0)
        npt.assert_allclose(
            np.abs(c.points),
            [0.5806229049458471, 0.8522340353217157,
             1.0893139888421406, 1.3228640236261378], atol=1e-4)
        assert np.mean(np.abs(c.points) ** 2) == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("M", [4, 16, 64, 256, 1024])
    def test_high_snr_disc_limit(self, M):
        r = np.abs(gen_tgb_gam_snr(M, 1e6).points)
        d = np.abs(gen_disc_gam(M).points)
        assert np.max(np.abs(r - d) / d) <= 1e-3

    @pytest.mark.parametrize("M", [16, 64])
    def test_low_snr_bell_limit(self, M):
        # the top point diverges as S -> 0 and dominates the power
        # normalization, so compare shapes over m < M after renormalizing
        r = np.abs(gen_tgb_gam_snr(M, 1e-6).points)[:-1]
        g = np.abs(gen_gb_gam(M, shift_index=True).points)[:-1]
        r = r / math.sqrt(np.mean(r ** 2))
        g = g / math.sqrt(np.mean(g ** 2))
        assert np.max(np.abs(r - g) / g) <= 1e-3

    @pytest.mark.parametrize("snr", [0.0, -1.0])
    def test_rejects_nonpositive_snr(self, snr):
        with pytest.raises(ValueError, match="singular"):
            gen_tgb_gam_snr(16, snr)


class TestSquareQam:
    def test_qpsk(self):
        c = gen_square_qam(4)
        expected = {(s1 + 1j * s2) / math.sqrt(2)
                    for s1 in (-1, 1) for s2 in (-1, 1)}
        for p in c.points:
            assert min(abs(p - q) for q in expected) < 1e-12
        assert papr_db(c) == pytest.approx(0.0, abs=1e-12)

    def test_m16_papr_from_grid_oracle(self):
        # independent oracle: enumerate the odd-integer grid directly
        pts = [complex(a, b) for a in (-3, -1, 1, 3) for b in (-3, -1, 1, 3)]
        mean_p = sum(abs(p) ** 2 for p in pts) / 16
        peak = max(abs(p) ** 2 for p in pts)
        assert papr_db(gen_square_qam(16)) == pytest.approx(
            10 * math.log10(peak / mean_p), abs=1e-12)

    @pytest.mark.parametrize("M", [1, 2, 8, 32, 100, 512])
    def test_rejects_non_square_powers(self, M):
        with pytest.raises(ValueError):
            gen_square_qam(M)

    @pytest.mark.parametrize("M", [4, 16, 64, 256, 1024])
    def test_unit_power_and_sorted(self, M):
        c = gen_square_qam(M)
        assert np.mean(np.abs(c.points) ** 2) == pytest.approx(1.0, rel=1e-12)
        mags = np.abs(c.points)
        assert np.all(np.diff(mags) >= -1e-12)


class TestInvariants:
    @pytest.mark.parametrize("M", [2, 5, 16, 64])
    def test_phase_law(self, M):
        for c in generator_zoo(M):
            if c.scheme_tag == "square-qam":
                continue
            mags = np.abs(c.points)
            expected = np.array([golden_phase(m) for m in range(1, M + 1)])
            delta = np.angle(c.points * np.exp(-1j * expected))
            assert np.max(np.abs(delta[mags > 0])) <= 1e-12

    @pytest.mark.parametrize("M", [2, 5, 16, 64])
    def test_monotone_magnitudes(self, M):
        for c in generator_zoo(M):
            mags = np.abs(c.points)
            assert np.all(np.diff(mags) >= -1e-12 * mags.max())

    @pytest.mark.parametrize("M", [2, 16, 64])
    def test_papr_identity_unit_power_gam(self, M):
        for c in generator_zoo(M):
            if c.scheme_tag == "square-qam":
                continue
            r_top = np.abs(c.points).max()
            assert papr_db(c) == pytest.approx(20 * math.log10(r_top), abs=1e-12)

    @pytest.mark.parametrize("power", [0.25, 1.0, 7.5])
    def test_scale_equivariance(self, power):
        base = gen_tgb_gam_snr(16, 5.0, mean_power=1.0)
        scaled = gen_tgb_gam_snr(16, 5.0, mean_power=power)
        npt.assert_allclose(scaled.points, base.points * math.sqrt(power),
                            rtol=1e-12)

    def test_points_immutable(self):
        c = gen_disc_gam(8)
        with pytest.raises(ValueError):
            c.points[0] = 0.0

    def test_constructor_validates_power(self):
        pts = gen_disc_gam(8).points * 1.001
        with pytest.raises(ValueError, match="mean power"):
            Constellation(points=pts, M=8, scheme_tag="disc-gam", mean_power=1.0)

    def test_constructor_validates_phases(self):
        pts = gen_disc_gam(8).points * np.exp(0.25j)
        with pytest.raises(ValueError, match="phase"):
            Constellation(points=pts, M=8, scheme_tag="disc-gam", mean_power=1.0)


class TestJsonRoundTrip:
    def test_exact_round_trip(self, tmp_path):
        c = gen_tgb_gam(16, ShapingParams(0.2, 2.7), mean_power=1.0)
        path = tmp_path / "c.json"
        write_json(c, path, meta={"note": "test"})
        back = read_json(path)
        npt.assert_array_equal(back.points, c.points)
        assert back.scheme_tag == c.scheme_tag
        assert papr_db(back) == papr_db(c)

    def test_17_digits_round_trip(self):
        c = gen_gb_gam(16)
        doc = to_json_dict(c)
        for rec, p in zip(doc["points"], c.points):
            assert float(rec["re"]) == p.real
            assert float(rec["im"]) == p.imag
            assert rec["p"] == pytest.approx(1 / 16)


class TestMakeConstellation:
    def test_dispatch(self):
        assert make_constellation("qam", 16).scheme_tag == "square-qam"
        assert make_constellation("tgb-gam", 8, rho_i=0.0, rho_o=2.0).M == 8

    def test_missing_parameters(self):
        with pytest.raises(ValueError):
            make_constellation("tgb-gam", 8)
        with pytest.raises(ValueError):
            make_constellation("tgb-gam-snr", 8)
        with pytest.raises(ValueError):
            make_constellation("star-qam", 8)
