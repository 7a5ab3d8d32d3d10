import math

import numpy as np
import pytest

from atmc.energy import (ANCHOR_ENERGY, DROPOFF_ENERGY, LOAD_ENERGY,
                         SSDNA_SEQUENCES, BaseCounts, Energy, EnergyBreakdown,
                         base_counts_of, hybridization_energy,
                         intra_transport_energy, mt_motion_energy, power,
                         total_energy, vesicle_synthesis_energy)

from conftest import make_config

# Hand-evaluated oracle values (zJ):
#   synthesis(125 nm) = 5 * 4*pi*125^2 * 83 = 81_485_059.45248526
#   synthesis(500 nm) = 5 * 4*pi*500^2 * 83 = 1_303_760_951.2397642
#   intra(5000 nm)    = ceil(2500/8) * 83  = 313 * 83 = 25_979
#   motion(1 s, 10 um, 100/um^2)   = 100*1*10*10*83   = 830_000
#   motion(250 s, 10 um, 100/um^2) = 100*250*10*10*83 = 207_500_000
SYNTH_125 = 81_485_059.45248526
SYNTH_500 = 1_303_760_951.2397642


class TestBaseCounts:
    def test_loading_site_sequence(self):
        c = base_counts_of(SSDNA_SEQUENCES["loading_site"])
        assert (c.n_a + c.n_t, c.n_c + c.n_g) == (6, 4)
        assert c.length == 10

    def test_mt_sequence(self):
        c = base_counts_of(SSDNA_SEQUENCES["mt"])
        assert (c.n_a + c.n_t, c.n_c + c.n_g) == (9, 6)
        assert c.length == 15

    def test_unloading_site_sequence(self):
        c = base_counts_of(SSDNA_SEQUENCES["unloading_site"])
        assert (c.n_a + c.n_t, c.n_c + c.n_g) == (13, 10)
        assert c.length == 23

    def test_cargo_tail_sequence(self):
        c = base_counts_of(SSDNA_SEQUENCES["cargo_tail"])
        assert (c.n_a + c.n_t, c.n_c + c.n_g) == (13, 10)
        assert c.length == 23

    def test_whitespace_ignored(self):
        assert base_counts_of("TTC GCT\nGATT") == base_counts_of("TTCGCTGATT")

    def test_bad_character_reports_position(self):
        with pytest.raises(ValueError, match="position 4"):
            base_counts_of("TTCGXTGATT")

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            base_counts_of("  ")

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            BaseCounts(n_a=-1, n_t=0, n_g=0, n_c=0)


class TestHybridization:
    def test_anchor_840(self):
        e = hybridization_energy(base_counts_of(SSDNA_SEQUENCES["loading_site"]))
        assert e.zj == 840

    def test_load_1260(self):
        e = hybridization_energy(base_counts_of(SSDNA_SEQUENCES["mt"]))
        assert e.zj == 1260

    def test_dropoff_1960(self):
        e = hybridization_energy(base_counts_of(SSDNA_SEQUENCES["unloading_site"]))
        assert e.zj == 1960

    def test_zero_counts(self):
        assert hybridization_energy(BaseCounts(0, 0, 0, 0)).zj == 0

    def test_cargo_tail_matches_unloading_site(self):
        # complementary strands: identical bond totals
        tail = hybridization_energy(base_counts_of(SSDNA_SEQUENCES["cargo_tail"]))
        site = hybridization_energy(base_counts_of(SSDNA_SEQUENCES["unloading_site"]))
        assert tail.zj == site.zj == 1960

    def test_module_constants(self):
        assert (ANCHOR_ENERGY.zj, LOAD_ENERGY.zj, DROPOFF_ENERGY.zj) == \
            (840, 1260, 1960)


class TestVesicleSynthesis:
    def test_zero_radius(self):
        assert vesicle_synthesis_energy(0.0).zj == 0.0

    def test_quarter_micron_diameter(self):
        assert vesicle_synthesis_energy(125.0).zj == pytest.approx(
            SYNTH_125, rel=1e-12)

    def test_one_micron_diameter(self):
        assert vesicle_synthesis_energy(500.0).zj == pytest.approx(
            SYNTH_500, rel=1e-12)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            vesicle_synthesis_energy(-1.0)

    def test_doubling_radius_quadruples_cost(self):
        for r in (31.25, 125.0, 487.3, 1000.0):
            assert vesicle_synthesis_energy(2 * r).zj == \
                4.0 * vesicle_synthesis_energy(r).zj


class TestIntraTransport:
    def test_single_step(self):
        assert intra_transport_energy(16.0).zj == 83.0

    def test_default_transmitter(self):
        assert intra_transport_energy(5000.0).zj == 313 * 83 == 25_979

    def test_zero(self):
        assert intra_transport_energy(0.0).zj == 0.0

    def test_ceiling_rounds_partial_steps_up(self):
        assert intra_transport_energy(17.0).zj == 2 * 83

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            intra_transport_energy(-5.0)


class TestMtMotion:
    def test_zero_time(self):
        assert mt_motion_energy(0.0, 10.0, 100.0).zj == 0.0

    def test_one_second(self):
        assert mt_motion_energy(1.0, 10.0, 100.0).zj == 830_000.0

    def test_full_symbol(self):
        assert mt_motion_energy(250.0, 10.0, 100.0).zj == 207_500_000.0

    def test_kinesin_count_uses_real_sqrt(self):
        e = mt_motion_energy(1.0, 1.0, 50.0)
        assert e.zj == pytest.approx(100 * math.sqrt(50.0) * 83, rel=1e-12)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            mt_motion_energy(-1.0, 10.0, 100.0)


class TestTotalEnergy:
    def test_no_vesicles_leaves_only_mt_motion(self):
        cfg = make_config()
        b = total_energy(cfg, 0.0, 0.0)
        assert b.total.zj == b.mt_motion.zj
        assert b.mt_motion.zj == 207_500_000.0 * 15

    def test_reference_point_against_spreadsheet(self):
        # independent arithmetic: per released vesicle 1_303_760_951.2397642
        # + 25_979 + 840, times 20; motion 207_500_000 * 15; per delivered
        # (1260 + 1960) * 10
        cfg = make_config()  # r_v=500 nm, r_TN=5 um, L_m=10, sigma=100, M=15
        b = total_energy(cfg, 20.0, 10.0)
        expected = (SYNTH_500 + 25_979 + 840) * 20 \
            + 207_500_000.0 * 15 + (1260 + 1960) * 10
        assert b.total.zj == pytest.approx(expected, rel=1e-12)
        assert b.total.zj == pytest.approx(2.919e10, rel=1e-3)
        assert b.total.pj == pytest.approx(29.2, rel=1e-2)

    def test_linear_in_delivered_count(self):
        cfg = make_config()
        with_delivery = total_energy(cfg, 20.0, 10.0).total.zj
        without = total_energy(cfg, 20.0, 0.0).total.zj
        assert with_delivery - without == pytest.approx(32_200, abs=1e-3)

    def test_affine_slopes(self):
        cfg = make_config(vesicle_radius=125.0)
        released_slope = SYNTH_125 + 25_979 + 840
        delivered_slope = 1260 + 1960
        for mx, my in [(1.0, 0.0), (17.3, 4.2), (40.0, 40.0)]:
            b = total_energy(cfg, mx, my)
            base = total_energy(cfg, 0.0, 0.0)
            assert b.total.zj - base.total.zj == pytest.approx(
                released_slope * mx + delivered_slope * my, rel=1e-9)

    def test_total_is_sum_of_components(self):
        b = total_energy(make_config(), 13.7, 2.2)
        assert b.total.zj == pytest.approx(
            sum(e.zj for e in b.components().values()), rel=0, abs=0)

    def test_precondition_enforced(self):
        cfg = make_config()
        with pytest.raises(ValueError):
            total_energy(cfg, 10.0, 11.0)  # mean_y > mean_x
        with pytest.raises(ValueError):
            total_energy(cfg, 41.0, 0.0)   # mean_x > x_max - 1
        with pytest.raises(ValueError):
            total_energy(cfg, -1.0, -1.0)

    def test_monotone_in_means(self):
        cfg = make_config()
        rng = np.random.default_rng(3)
        for _ in range(20):
            mx = rng.uniform(0, 40)
            my = rng.uniform(0, mx)
            bigger = total_energy(cfg, min(mx * 1.1, 40.0), my).total.zj
            assert bigger >= total_energy(cfg, mx, my).total.zj


class TestPower:
    def test_reference_point(self):
        cfg = make_config()
        b = total_energy(cfg, 20.0, 10.0)
        w = power(b.total, 250.0)
        assert w == pytest.approx(1.17e-13, rel=1e-2)

    def test_zero_energy(self):
        assert power(Energy(0.0), 250.0) == 0.0

    def test_nonpositive_tau_rejected(self):
        with pytest.raises(ValueError):
            power(Energy(1.0), 0.0)

    def test_power_falls_when_symbol_stretches(self):
        # with the means held, the vesicle cost amortizes while the motion
        # cost per second is constant
        for tau in (50.0, 125.0, 250.0):
            cfg_short = make_config(symbol_duration=tau)
            cfg_long = make_config(symbol_duration=2 * tau)
            p_short = power(total_energy(cfg_short, 20.0, 10.0).total, tau)
            p_long = power(total_energy(cfg_long, 20.0, 10.0).total, 2 * tau)
            assert p_long < p_short


class TestEnergyType:
    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            Energy(-0.1)

    def test_unit_conversions_are_power_of_ten_scalings(self):
        e = Energy(2.919e10)
        assert e.pj == 2.919e10 / 1e9
        assert e.fj == 2.919e10 / 1e6
        assert e.joules == 2.919e10 / 1e21


def test_breakdown_round_trip():
    b = total_energy(make_config(), 12.5, 3.25)
    d = b.to_dict()
    assert EnergyBreakdown.from_dict(d) == b
    assert d["total_pj"] == b.total.zj / 1e9
    assert set(d) == {f"{n}_{u}" for u in ("zj", "pj")
                      for n in ("synthesis", "intra_transport", "anchor",
                                "mt_motion", "load", "dropoff", "total")}
