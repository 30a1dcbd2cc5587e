import numpy as np
import pytest

from risdof_plots.render import PlotSpec, collect_series, main, render

HEADER = "scenario_id,sweep_value,trial_index,rate,effective_rank,seed,design_labels\n"


def write_csv(path, rows):
    path.write_text(HEADER + "".join(rows))
    return str(path)


def fig5_like_csv(tmp_path):
    rows = []
    for n in (256, 512):
        rows.append(f"demo-noris,{n},0,0,0,1,eigen_wf\n")
        for trial, rate in enumerate((12.5, 13.1, 12.8)):
            rows.append(f"demo-ris,{n},{trial},{rate + n / 512},4,1,eigen_wf\n")
    return write_csv(tmp_path / "fig5_like.csv", rows)


class TestCollectSeries:
    def test_mean_and_standard_error(self, tmp_path):
        path = fig5_like_csv(tmp_path)
        series = collect_series(PlotSpec(csv_paths=(path,)))
        by_label = {s.label: s for s in series}
        ris = by_label["demo-ris"]
        expected_mean = np.mean([12.5, 13.1, 12.8]) + 0.5
        np.testing.assert_allclose(ris.mean[0], expected_mean)
        expected_se = np.std([12.5, 13.1, 12.8], ddof=1) / np.sqrt(3)
        np.testing.assert_allclose(ris.std_error[0], expected_se)
        noris = by_label["demo-noris"]
        np.testing.assert_allclose(noris.mean, 0.0)
        np.testing.assert_allclose(noris.std_error, 0.0)

    def test_missing_column_lists_available(self, tmp_path):
        path = fig5_like_csv(tmp_path)
        spec = PlotSpec(csv_paths=(path,), value_column="throughput")
        with pytest.raises(ValueError, match="available columns.*rate"):
            collect_series(spec)

    def test_empty_csv_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(HEADER)
        with pytest.raises(ValueError, match="no data rows"):
            collect_series(PlotSpec(csv_paths=(str(path),)))

    def test_multiple_csv_inputs_merge(self, tmp_path):
        a = write_csv(tmp_path / "a.csv", ["s1,1,0,2.0,1,1,x\n"])
        b = write_csv(tmp_path / "b.csv", ["s2,1,0,3.0,1,1,x\n"])
        series = collect_series(PlotSpec(csv_paths=(a, b)))
        assert [s.label for s in series] == ["s1", "s2"]


class TestRender:
    def test_writes_nonempty_image(self, tmp_path):
        path = fig5_like_csv(tmp_path)
        out = tmp_path / "fig.png"
        spec = PlotSpec(csv_paths=(path,), output_path=str(out))
        series = render(spec)
        assert out.stat().st_size > 0
        assert len(series) == 2

    def test_zero_series_preserved_in_figure_data(self, tmp_path):
        path = fig5_like_csv(tmp_path)
        out = tmp_path / "fig.png"
        series = render(PlotSpec(csv_paths=(path,), output_path=str(out)))
        noris = next(s for s in series if s.label == "demo-noris")
        assert np.all(noris.mean == 0.0)

    def test_single_sweep_value_no_crash(self, tmp_path):
        path = write_csv(tmp_path / "single.csv", ["only,64,0,5.5,1,1,x\n"])
        out = tmp_path / "single.png"
        series = render(PlotSpec(csv_paths=(path,), output_path=str(out)))
        assert out.stat().st_size > 0
        assert series[0].x.size == 1

    def test_deterministic_bytes(self, tmp_path):
        path = fig5_like_csv(tmp_path)
        out1 = tmp_path / "one.png"
        out2 = tmp_path / "two.png"
        render(PlotSpec(csv_paths=(path,), output_path=str(out1)))
        render(PlotSpec(csv_paths=(path,), output_path=str(out2)))
        assert out1.read_bytes() == out2.read_bytes()

    def test_error_leaves_no_image(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(HEADER)
        out = tmp_path / "never.png"
        with pytest.raises(ValueError):
            render(PlotSpec(csv_paths=(str(path),), output_path=str(out)))
        assert not out.exists()

    def test_log_axes(self, tmp_path):
        path = fig5_like_csv(tmp_path)
        out = tmp_path / "log.png"
        render(PlotSpec(csv_paths=(path,), output_path=str(out), log_x=True))
        assert out.stat().st_size > 0


class TestCli:
    def test_main_success(self, tmp_path, capsys):
        path = fig5_like_csv(tmp_path)
        out = tmp_path / "cli.png"
        assert main(["--csv", path, "--out", str(out)]) == 0
        assert "2 series" in capsys.readouterr().out
        assert out.stat().st_size > 0

    def test_main_reports_errors(self, tmp_path, capsys):
        path = fig5_like_csv(tmp_path)
        code = main(["--csv", path, "--x-column", "bogus", "--out",
                     str(tmp_path / "x.png")])
        assert code == 1
        assert "available columns" in capsys.readouterr().err
