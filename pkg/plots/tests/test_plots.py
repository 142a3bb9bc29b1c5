import shutil
import subprocess

import pytest

from lteu_plots.coverage import plot_coverage
from lteu_plots.throughput import plot_throughput

TABLE_ROWS = [
    ("ca", "fixed", "2.5", 173), ("dcsa", "fixed", "2.5", 208),
    ("ca", "flexible", "2.5", 175), ("dcsa", "flexible", "2.5", 236),
    ("ca", "fixed", "10", 136), ("dcsa", "fixed", "10", 155),
    ("ca", "flexible", "10", 136), ("dcsa", "flexible", "10", 163),
]


def _throughput_csv(tmp_path, rows=TABLE_ROWS, seeds=(1,), name="throughput.csv"):
    lines = ["case,policy,lambda,seed,mean_user_tput_mbps,completed_files"]
    for case, pol, lam, mean in rows:
        for seed in seeds:
            lines.append(f"{case},{pol},{lam},{seed},{mean},250")
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n")
    return path


def _coverage_csvs(tmp_path):
    cov = ["ratio,band_ghz,metric,sample_value"]
    for ratio in ("4:4", "4:8", "4:16"):
        for band, offset in (("2.6", 0.0), ("5.8", -7.0)):
            for k in range(40):
                cov.append(f"{ratio},{band},rsrp_dbm,{-70.0 + offset + 0.5 * k}")
                cov.append(f"{ratio},{band},sinr_db,{5.0 + 0.25 * k}")
    cov_path = tmp_path / "coverage_cdf.csv"
    cov_path.write_text("\n".join(cov) + "\n")
    gaps_path = tmp_path / "gaps.csv"
    gaps_path.write_text(
        "ratio,percentile,gap_db\n"
        "4:4,0.05,6.92012\n4:4,0.5,6.97032\n"
        "4:8,0.05,3.70905\n4:8,0.5,4.25237\n"
        "4:16,0.05,1.19903\n4:16,0.5,1.75659\n")
    return cov_path, gaps_path


def test_acceptance_7_table_gains_and_six_curves(tmp_path):
    tput = _throughput_csv(tmp_path)
    result = plot_throughput(tput, tmp_path / "tput.png")
    expected = {("fixed", "2.5"): "20.2%", ("flexible", "2.5"): "34.9%",
                ("fixed", "10"): "14.0%", ("flexible", "10"): "19.9%"}
    gains_ok = result["gains"] == expected

    cov, gaps = _coverage_csvs(tmp_path)
    drawn = plot_coverage(cov, gaps, tmp_path / "cov.png")
    curves_ok = len(drawn["labels"]) == 6

    files_ok = (tmp_path / "tput.png").stat().st_size > 0 \
        and (tmp_path / "cov.png").stat().st_size > 0
    ok = gains_ok and curves_ok and files_ok
    print(f"\nACCEPTANCE 7: {'PASS' if ok else 'FAIL'} - gains {result['gains']}, "
          f"{len(drawn['labels'])} coverage curves")
    assert ok, (result["gains"], drawn["labels"])


class TestThroughputFigure:
    def test_equal_means_print_zero_gain(self, tmp_path):
        rows = [("ca", "fixed", "2.5", 100), ("dcsa", "fixed", "2.5", 100)]
        csv = _throughput_csv(tmp_path, rows)
        result = plot_throughput(csv, tmp_path / "flat.png")
        assert result["gains"] == {("fixed", "2.5"): "0.0%"}

    def test_single_seed_draws_no_error_bars(self, tmp_path):
        csv = _throughput_csv(tmp_path, seeds=(1,))
        assert plot_throughput(csv, tmp_path / "one.png")["error_bars"] is False

    def test_multi_seed_draws_error_bars(self, tmp_path):
        csv = _throughput_csv(tmp_path, seeds=(1, 2, 3))
        assert plot_throughput(csv, tmp_path / "many.png")["error_bars"] is True

    def test_seed_averaging_is_a_plain_mean(self, tmp_path):
        lines = ["case,policy,lambda,seed,mean_user_tput_mbps,completed_files",
                 "ca,fixed,2.5,1,100,10", "ca,fixed,2.5,2,120,10",
                 "dcsa,fixed,2.5,1,150,10", "dcsa,fixed,2.5,2,170,10"]
        path = tmp_path / "t.csv"
        path.write_text("\n".join(lines) + "\n")
        result = plot_throughput(path, tmp_path / "avg.png")
        assert result["means"][("ca", "fixed", "2.5")] == 110.0
        assert result["means"][("dcsa", "fixed", "2.5")] == 160.0
        assert result["gains"][("fixed", "2.5")] == f"{50 / 110 * 100:.1f}%"

    def test_missing_column_is_named(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("case,policy,lambda,seed,mean_user_tput_mbps\n"
                        "ca,fixed,2.5,1,100\n")
        with pytest.raises(ValueError, match="completed_files"):
            plot_throughput(path, tmp_path / "x.png")
        assert not (tmp_path / "x.png").exists()

    def test_extra_column_is_named(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("case,policy,lambda,seed,mean_user_tput_mbps,"
                        "completed_files,bonus\nca,fixed,2.5,1,100,10,1\n")
        with pytest.raises(ValueError, match="bonus"):
            plot_throughput(path, tmp_path / "x.png")

    def test_missing_case_rows_rejected(self, tmp_path):
        rows = [("ca", "fixed", "2.5", 100)]  # no dcsa rows to compare against
        csv = _throughput_csv(tmp_path, rows)
        with pytest.raises(ValueError, match="dcsa"):
            plot_throughput(csv, tmp_path / "x.png")


class TestCoverageFigure:
    def test_legend_labels(self, tmp_path):
        cov, gaps = _coverage_csvs(tmp_path)
        drawn = plot_coverage(cov, gaps, tmp_path / "cov.png")
        assert "4:4 2.6GHz" in drawn["labels"]
        assert "4:16 5.8GHz" in drawn["labels"]

    def test_gap_annotation_is_verbatim(self, tmp_path):
        cov, gaps = _coverage_csvs(tmp_path)
        drawn = plot_coverage(cov, gaps, tmp_path / "cov.png")
        assert any("6.97032" in a for a in drawn["annotations"])
        # and not reformatted
        assert not any("6.97032000" in a for a in drawn["annotations"])

    def test_empty_csv_writes_no_image(self, tmp_path):
        empty = tmp_path / "cov.csv"
        empty.write_text("ratio,band_ghz,metric,sample_value\n")
        _, gaps = _coverage_csvs(tmp_path)
        with pytest.raises(ValueError, match="no data rows"):
            plot_coverage(empty, gaps, tmp_path / "none.png")
        assert not (tmp_path / "none.png").exists()

    def test_headerless_file_rejected(self, tmp_path):
        bad = tmp_path / "cov.csv"
        bad.write_text("")
        _, gaps = _coverage_csvs(tmp_path)
        with pytest.raises(ValueError):
            plot_coverage(bad, gaps, tmp_path / "none.png")

    def test_sinr_metric_selectable(self, tmp_path):
        cov, gaps = _coverage_csvs(tmp_path)
        drawn = plot_coverage(cov, gaps, tmp_path / "sinr.png", metric="sinr_db")
        assert len(drawn["labels"]) == 6


@pytest.mark.skipif(shutil.which("lteusim") is None,
                    reason="simulator CLI not installed")
def test_end_to_end_from_simulator_output(tmp_path):
    run = subprocess.run(
        ["lteusim", "coverage", "--ratios", "4:4,4:8,4:16", "--samples", "300",
         "--seed", "3", "--out", str(tmp_path)], capture_output=True, text=True)
    assert run.returncode == 0, run.stderr
    drawn = plot_coverage(tmp_path / "coverage_cdf.csv", tmp_path / "gaps.csv",
                          tmp_path / "fig.png")
    assert len(drawn["labels"]) == 6

    cfg = tmp_path / "short.cfg"
    cfg.write_text("engine.duration_s = 2\n")
    run = subprocess.run(
        ["lteusim", "throughput", "--config", str(cfg), "--seed", "1",
         "--seeds", "2", "--out", str(tmp_path)], capture_output=True, text=True)
    assert run.returncode == 0, run.stderr
    result = plot_throughput(tmp_path / "throughput.csv", tmp_path / "bars.png")
    assert result["error_bars"] is True
    assert set(result["gains"]) == {("fixed", "2.5"), ("fixed", "10"),
                                    ("flexible", "2.5"), ("flexible", "10")}
