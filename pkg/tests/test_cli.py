from lteusim.cli import main
from lteusim.config import SimConfig, parse_config


def _lines(path):
    return path.read_text().splitlines()


def _run(tmp_path, *argv):
    return main([*argv, "--out", str(tmp_path)])


class TestCoverageCommand:
    def test_outputs_and_cardinality(self, tmp_path):
        rc = _run(tmp_path, "coverage", "--ratios", "4:4,4:8,4:16",
                  "--samples", "200", "--seed", "7")
        assert rc == 0
        cdf = _lines(tmp_path / "coverage_cdf.csv")
        assert cdf[0] == "ratio,band_ghz,metric,sample_value"
        curves = {tuple(line.split(",")[:3]) for line in cdf[1:]}
        # 3 ratios x 2 bands per metric
        rsrp_curves = {c for c in curves if c[2] == "rsrp_dbm"}
        assert len(rsrp_curves) == 6
        assert len(cdf) - 1 == 200 * 12  # 6 curves per metric, 2 metrics

        gaps = _lines(tmp_path / "gaps.csv")
        assert gaps[0] == "ratio,percentile,gap_db"
        assert len(gaps) - 1 == 3 * 2  # per ratio: p05 and median

        manifest = (tmp_path / "manifest.txt").read_text()
        assert "run.seed = 7" in manifest
        assert "# seeds: 7" in manifest

    def test_rerun_is_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            rc = main(["coverage", "--ratios", "4:4", "--samples", "150",
                       "--seed", "3", "--out", str(out)])
            assert rc == 0
        for name in ("coverage_cdf.csv", "gaps.csv", "manifest.txt"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_unknown_ratio_is_a_config_error(self, tmp_path, capsys):
        rc = _run(tmp_path, "coverage", "--ratios", "4:5", "--samples", "10")
        assert rc == 2
        assert "configuration error" in capsys.readouterr().err

    def test_manifest_reparses_to_the_effective_config(self, tmp_path):
        rc = _run(tmp_path, "coverage", "--ratios", "4:4", "--samples", "50",
                  "--seed", "21")
        assert rc == 0
        cfg = parse_config(tmp_path / "manifest.txt")
        expected = SimConfig()
        expected.seed = 21
        expected.experiment = "coverage"
        assert cfg == expected


class TestThroughputCommand:
    def test_outputs_and_row_counts(self, tmp_path):
        cfgfile = tmp_path / "short.cfg"
        cfgfile.write_text("engine.duration_s = 2\n")
        rc = _run(tmp_path, "throughput", "--config", str(cfgfile),
                  "--cases", "ca,dcsa", "--policies", "fixed,flexible",
                  "--loads", "2.5,10", "--seed", "1", "--seeds", "2")
        assert rc == 0
        rows = _lines(tmp_path / "throughput.csv")
        assert rows[0] == "case,policy,lambda,seed,mean_user_tput_mbps,completed_files"
        assert len(rows) - 1 == 2 * 2 * 2 * 2  # cases x policies x loads x seeds
        for row in rows[1:]:
            case, pol, lam, seed, mean, files = row.split(",")
            assert case in ("ca", "dcsa") and pol in ("fixed", "flexible")
            assert lam in ("2.5", "10")
            assert int(files) >= 0

        summary = _lines(tmp_path / "summary.csv")
        assert summary[0] == "case,policy,lambda,mean_user_tput_mbps,n_seeds"
        assert len(summary) - 1 == 2 * 2 * 2

    def test_rerun_is_byte_identical(self, tmp_path):
        cfgfile = tmp_path / "short.cfg"
        cfgfile.write_text("engine.duration_s = 2\n")
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            rc = main(["throughput", "--config", str(cfgfile), "--cases", "dcsa",
                       "--policies", "flexible", "--loads", "10", "--seed", "5",
                       "--out", str(out)])
            assert rc == 0
        for name in ("throughput.csv", "summary.csv", "manifest.txt"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_bad_load_rejected(self, tmp_path, capsys):
        rc = _run(tmp_path, "throughput", "--loads", "fast")
        assert rc == 2
        assert "configuration error" in capsys.readouterr().err

    def test_bad_config_file_reports_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.cfg"
        bad.write_text("traffic.lambda = banana\n")
        rc = _run(tmp_path, "throughput", "--config", str(bad))
        assert rc == 2
        err = capsys.readouterr().err
        assert "line 1" in err and "traffic.lambda" in err
