import random

import numpy as np
import pytest

from risdof.harness import (ConfigError, ScenarioConfig, apply_sweep_value,
                            build_channels, parse_scenario_file,
                            records_to_csv_bytes, read_records_csv,
                            run_scenario, summarize, summary_to_csv_bytes,
                            trial_seed, validate_scenario, write_atomic)
from risdof.presets import (fig4_scenarios, fig5_scenarios, fig6a_scenarios,
                            fig6b_scenarios, preset_baseline, preset_scenarios)


def small_scenario(**overrides):
    defaults = dict(scenario_id="test", m=16, n=32, k=2, j=1,
                    direct_tag="los", bs_ris_tag="rayleigh",
                    ris_user_tag="rayleigh", design="eigen_wf",
                    sweep_axis="n", sweep_values=(16, 32), trials=3, seed=42)
    defaults.update(overrides)
    return ScenarioConfig(**defaults)


class TestValidation:
    def test_valid_passes(self):
        validate_scenario(small_scenario())

    @pytest.mark.parametrize("overrides", [
        dict(direct_tag="rician"),
        dict(design="mmse"),
        dict(sweep_axis="frequency"),
        dict(trials=0),
        dict(k=32),
        dict(j=1, design="nullspace_zf_wf", k=2, m=1),
        dict(j=3),  # exceeds k=2
        dict(power_sum=0.0),
    ])
    def test_invalid_rejected(self, overrides):
        with pytest.raises(ConfigError):
            validate_scenario(small_scenario(**overrides))

    def test_nullspace_needs_surface(self):
        with pytest.raises(ConfigError):
            validate_scenario(small_scenario(j=0, design="nullspace_zf_wf"))


class TestDeterminism:
    def test_record_count(self):
        cfg = small_scenario(sweep_values=(16, 24, 32), trials=1)
        records = run_scenario(cfg)
        assert len(records) == 3

    def test_identical_bytes_across_runs_and_workers(self):
        cfg = small_scenario()
        first = records_to_csv_bytes(run_scenario(cfg, workers=1))
        second = records_to_csv_bytes(run_scenario(cfg, workers=1))
        parallel = records_to_csv_bytes(run_scenario(cfg, workers=4))
        assert first == second == parallel

    def test_channel_regeneration(self):
        cfg = small_scenario()
        seed = trial_seed(cfg, 0, 0)
        a = build_channels(cfg, seed)
        b = build_channels(cfg, seed)
        np.testing.assert_array_equal(a.direct, b.direct)
        for ca, cb in zip(a.cascades, b.cascades):
            np.testing.assert_array_equal(ca.g_br, cb.g_br)
            np.testing.assert_array_equal(ca.g_ru, cb.g_ru)

    def test_trial_seeds_unique(self):
        cfg = small_scenario(trials=50)
        seeds = {trial_seed(cfg, si, ti) for si in range(2) for ti in range(50)}
        assert len(seeds) == 100


class TestSweepApplication:
    def test_axes(self):
        cfg = small_scenario()
        assert apply_sweep_value(cfg, 64).n == 64
        cfg_m = small_scenario(sweep_axis="m")
        assert apply_sweep_value(cfg_m, 24).m == 24
        cfg_rn = small_scenario(sweep_axis="ris_noise_dbm")
        assert apply_sweep_value(cfg_rn, -80.0).ris_noise_dbm == -80.0
        cfg_un = small_scenario(sweep_axis="user_noise_dbm")
        assert apply_sweep_value(cfg_un, -60.0).user_noise_dbm == -60.0


class TestSummarize:
    def test_self_ratio_is_one(self):
        cfg = small_scenario(trials=2)
        records = run_scenario(cfg)
        rows = summarize(records, "test")
        assert all(row.ratio_vs_baseline == 1.0 for row in rows)

    def test_zero_baseline_marks_infinite(self):
        scenarios = fig5_scenarios()
        blocked = scenarios[0]
        los = scenarios[1]
        records = run_scenario(blocked) + run_scenario(los)
        rows = summarize(records, "fig5-noris")
        ris_rows = [r for r in rows if r.scenario_id == "fig5-los-ris"]
        assert all(np.isinf(r.ratio_vs_baseline) for r in ris_rows)

    def test_missing_baseline(self):
        records = run_scenario(small_scenario(trials=1))
        with pytest.raises(ValueError, match="baseline"):
            summarize(records, "nope")

    def test_mismatched_sweeps_rejected(self):
        a = run_scenario(small_scenario(trials=1))
        b = run_scenario(small_scenario(scenario_id="other",
                                        sweep_values=(16, 64), trials=1))
        with pytest.raises(ValueError, match="sweep"):
            summarize(a + b, "test")

    def test_mean_permutation_invariant(self):
        cfg = small_scenario(trials=6)
        records = run_scenario(cfg)
        shuffled = records[:]
        random.Random(0).shuffle(shuffled)
        base = summarize(records, "test")
        perm = summarize(shuffled, "test")
        for r1, r2 in zip(base, perm):
            assert abs(r1.mean_rate - r2.mean_rate) < 1e-12

    def test_doubling_trials_stays_within_three_standard_errors(self):
        cfg = small_scenario(sweep_values=(32,), trials=40)
        records = run_scenario(cfg, workers=4)
        rates = np.array([r.rate for r in records])
        cfg2 = small_scenario(sweep_values=(32,), trials=80)
        rates2 = np.array([r.rate for r in run_scenario(cfg2, workers=4)])
        se = rates.std(ddof=1) / np.sqrt(rates.size)
        assert abs(rates2.mean() - rates.mean()) < 3 * se


class TestCsv:
    def test_round_trip(self, tmp_path):
        cfg = small_scenario(trials=2)
        records = run_scenario(cfg)
        path = tmp_path / "records.csv"
        payload = records_to_csv_bytes(records)
        write_atomic(str(path), payload)
        loaded = read_records_csv(str(path))
        # floats are emitted at 12 significant digits, so byte-level stability
        # is the contract rather than ulp-exact equality
        assert records_to_csv_bytes(loaded) == payload
        assert [(r.scenario_id, r.trial_index, r.seed) for r in loaded] == \
               [(r.scenario_id, r.trial_index, r.seed) for r in records]

    def test_missing_column_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("scenario_id,rate\na,1.0\n")
        with pytest.raises(ValueError, match="missing columns"):
            read_records_csv(str(path))

    def test_summary_infinite_marker(self):
        scenarios = fig5_scenarios()
        records = run_scenario(scenarios[0]) + run_scenario(scenarios[1])
        payload = summary_to_csv_bytes(summarize(records, "fig5-noris"))
        assert b"inf" in payload

    def test_atomic_write_leaves_no_temp(self, tmp_path):
        path = tmp_path / "out.csv"
        write_atomic(str(path), b"hello\n")
        assert path.read_bytes() == b"hello\n"
        assert list(tmp_path.iterdir()) == [path]


SCENARIO_FILE = """
[scenario]
id = demo
bs_antennas = 16
user_antennas = 2
surfaces = 1
elements_per_surface = 32
direct = los
bs_ris = rayleigh
ris_user = rayleigh
design = eigen_wf
trials = 2
seed = 7

[distances]
bs_ris = 82
ris_user = 28
bs_user = 100

[noise]
user_dbm = -70
ris_dbm = -90

[sweep]
axis = n
values = 16, 32
"""


class TestScenarioFile:
    def test_parse(self, tmp_path):
        path = tmp_path / "demo.ini"
        path.write_text(SCENARIO_FILE)
        cfg = parse_scenario_file(str(path))
        assert cfg.scenario_id == "demo"
        assert cfg.m == 16 and cfg.k == 2 and cfg.j == 1
        assert cfg.sweep_axis == "n"
        assert cfg.sweep_values == (16.0, 32.0)
        assert cfg.trials == 2 and cfg.seed == 7

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "demo.ini"
        path.write_text("[scenario]\nid = x\nfrequency = 28\n")
        with pytest.raises(ConfigError, match="frequency"):
            parse_scenario_file(str(path))

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            parse_scenario_file("/nonexistent/scenario.ini")

    def test_bad_sweep_values(self, tmp_path):
        path = tmp_path / "demo.ini"
        path.write_text("[scenario]\nid = x\n\n[sweep]\naxis = n\nvalues = a, b\n")
        with pytest.raises(ConfigError, match="sweep"):
            parse_scenario_file(str(path))


class TestPresets:
    def test_names_and_baselines(self):
        for name in ("fig4", "fig5", "fig6a", "fig6b"):
            scenarios = preset_scenarios(name)
            ids = {cfg.scenario_id for cfg in scenarios}
            assert preset_baseline(name) in ids
            for cfg in scenarios:
                validate_scenario(cfg)

    def test_unknown_preset(self):
        with pytest.raises(KeyError):
            preset_scenarios("fig9")

    def test_preset_parameters_pinned(self):
        for cfg in fig4_scenarios():
            assert (cfg.bs_ris_distance, cfg.ris_user_distance,
                    cfg.bs_user_distance) == (82.0, 28.0, 100.0)
            assert cfg.k == 4
            assert cfg.n == 1024
            assert cfg.sweep_values == (64, 128)
            assert cfg.user_noise_dbm == -70.0 and cfg.ris_noise_dbm == -90.0
        for cfg in fig6a_scenarios() + fig6b_scenarios():
            assert cfg.m == 128 and cfg.k == 4
            assert cfg.n * 4 == 600  # four identical sites at the largest sweep
            assert (cfg.bs_ris_distance, cfg.ris_user_distance,
                    cfg.bs_user_distance) == (82.0, 28.0, 100.0)
            assert cfg.user_noise_dbm == -70.0 and cfg.ris_noise_dbm == -90.0
        for cfg in fig5_scenarios():
            assert cfg.direct_tag == "blocked"
            assert cfg.k == 4
            assert cfg.user_noise_dbm == -70.0 and cfg.ris_noise_dbm == -90.0

    def test_fig5_no_ris_rates_all_zero(self):
        records = run_scenario(fig5_scenarios()[0])
        assert all(r.rate == 0.0 for r in records)
        assert all(r.effective_rank == 0 for r in records)

    def test_seed_override(self):
        custom = preset_scenarios("fig4", seed=99)
        assert all(cfg.seed == 99 for cfg in custom)


def test_single_stream_all_los_rate_nondecreasing_in_elements():
    cfg = fig5_scenarios()[1]  # blocked direct, one all-LoS surface
    records = run_scenario(cfg)
    rates = [r.rate for r in sorted(records, key=lambda r: r.sweep_value)]
    assert all(b >= a for a, b in zip(rates, rates[1:]))


def test_distributed_rate_grows_with_site_count():
    recs = {}
    for cfg in fig6a_scenarios():
        recs[cfg.scenario_id] = {r.sweep_value: r.rate for r in run_scenario(cfg)}
    at_90 = [recs[f"fig6a-j{j}"][-90.0] for j in range(5)]
    assert all(b > a for a, b in zip(at_90, at_90[1:]))
