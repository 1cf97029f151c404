import json

import numpy as np

from orthowave import cli
from orthowave.pgm import GrayImage, write_pgm
from orthowave.signals import read_signal_file, write_signal_file


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestUsage:
    def test_no_arguments_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys)
        assert code == 1
        assert "usage" in err.lower() or "error" in err.lower()

    def test_unknown_subcommand(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == 1

    def test_missing_required_argument(self, capsys):
        code, _, _ = run_cli(capsys, "signal", "--n", "64")
        assert code == 1


class TestSignal:
    def test_writes_file(self, tmp_path, capsys):
        out = tmp_path / "d.txt"
        code, _, _ = run_cli(capsys, "signal", "--name", "doppler",
                             "--n", "64", "--out", str(out))
        assert code == 0
        x = read_signal_file(out)
        assert len(x) == 64

    def test_noisy_seeded_reproducible(self, tmp_path, capsys):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for out in (a, b):
            code, _, _ = run_cli(capsys, "signal", "--name", "bumps",
                                 "--n", "128", "--snr", "5", "--seed", "9",
                                 "--noisy", "--out", str(out))
            assert code == 0
        assert a.read_text() == b.read_text()

    def test_stdout_mode(self, capsys):
        code, out, _ = run_cli(capsys, "signal", "--name", "blocks", "--n", "32")
        assert code == 0
        assert len(out.strip().splitlines()) == 32


class TestDenoise:
    def test_round_trip(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        y = np.cumsum(rng.standard_normal(128)) / 5 + rng.standard_normal(128)
        infile, outfile = tmp_path / "y.txt", tmp_path / "s.txt"
        write_signal_file(y, infile)
        code, out, _ = run_cli(capsys, "denoise",
                               "--recipe", "wavmat(sym4,L=3)",
                               "--rule", "universal,sigma=1.0",
                               "--in", str(infile), "--out", str(outfile))
        assert code == 0
        report = json.loads(out)
        assert report["recipe"] == "wavmat(sym4,L=3,eps=000)"
        assert report["kept"] >= 0
        s = read_signal_file(outfile)
        assert len(s) == 128

    def test_bad_rule_is_data_error(self, tmp_path, capsys):
        infile = tmp_path / "y.txt"
        write_signal_file(np.ones(16), infile)
        code, _, err = run_cli(capsys, "denoise", "--recipe",
                               "wavmat(haar,L=1)", "--rule", "soft",
                               "--in", str(infile), "--out",
                               str(tmp_path / "o.txt"))
        assert code == 2
        assert "soft" in err

    def test_syntax_error_position_reported(self, tmp_path, capsys):
        infile = tmp_path / "y.txt"
        write_signal_file(np.ones(16), infile)
        code, _, err = run_cli(capsys, "denoise", "--recipe",
                               "kron(wavmat(haar,L=1)", "--in", str(infile),
                               "--out", str(tmp_path / "o.txt"))
        assert code == 2
        assert "position" in err


class TestLorenz:
    def test_equal_energy_curve_is_diagonal(self, tmp_path, capsys):
        from orthowave.recipes import build_recipe
        from orthowave.wavmat import inverse_apply
        infile = tmp_path / "x.txt"
        # signal whose transform has four equal-magnitude coefficients
        op = build_recipe("wavmat(haar,L=1)", 4)
        write_signal_file(inverse_apply(op, np.ones(4)), infile)
        code, out, _ = run_cli(capsys, "lorenz", "--recipe",
                               "wavmat(haar,L=1)", "--in", str(infile),
                               "--json", str(tmp_path / "p.json"))
        assert code == 0
        rows = out.strip().splitlines()
        assert rows[0] == "p,L"
        grid = [tuple(map(float, r.split(","))) for r in rows[1:]]
        for p, val in grid:
            assert abs(val - p) < 1e-9
        profile = json.loads((tmp_path / "p.json").read_text())
        assert abs(profile["complexity"] - 1.0) < 1e-9


class TestAtoms:
    def test_atom_csv(self, tmp_path, capsys):
        out = tmp_path / "atoms.csv"
        code, _, _ = run_cli(capsys, "atoms", "--recipe", "wavmat(haar,L=2)",
                             "--n", "8", "--k", "0,3", "--out", str(out))
        assert code == 0
        rows = out.read_text().strip().splitlines()
        assert rows[0] == "k,i,re,im"
        assert len(rows) == 1 + 2 * 8

    def test_index_error(self, capsys):
        code, _, _ = run_cli(capsys, "atoms", "--recipe", "wavmat(haar,L=1)",
                             "--n", "8", "--k", "9")
        assert code == 2


class TestPolyphaseCheck:
    def test_single_filter_is_pr(self, capsys):
        code, out, _ = run_cli(capsys, "polyphase-check", "--h1", "db2")
        assert code == 0
        report = json.loads(out)
        assert report["is_perfect_reconstruction"] is True
        assert abs(report["min_abs_det"] - 1.0) < 1e-8

    def test_collapsed_pair_is_not_pr(self, tmp_path, capsys):
        csv_path = tmp_path / "det.csv"
        code, out, _ = run_cli(capsys, "polyphase-check", "--h1", "haar",
                               "--h2", "haar", "--csv", str(csv_path))
        assert code == 0
        report = json.loads(out)
        assert report["is_perfect_reconstruction"] is False
        assert abs(complex(*report["value_at_nyquist"])) < 1e-10
        rows = csv_path.read_text().strip().splitlines()
        assert rows[0] == "omega,det_re,det_im"
        assert len(rows) == 1 + report["grid_size"]

    def test_unknown_filter(self, capsys):
        code, _, _ = run_cli(capsys, "polyphase-check", "--h1", "haarr")
        assert code == 2


class TestBench:
    def test_config_run_and_report(self, tmp_path, capsys):
        cfg = {
            "recipes": [["haar", "wavmat(haar,L=2)"]],
            "signal": "doppler", "n": 64, "replicates": 3,
            "master_seed": 4, "snr": 5.0,
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        out_dir = tmp_path / "reports"
        code, out, _ = run_cli(capsys, "bench", "--config", str(cfg_path),
                               "--out-dir", str(out_dir))
        assert code == 0
        assert "haar" in out
        report = json.loads((out_dir / "mc_report.json").read_text())
        assert len(report["methods"][0]["mse"]) == 3

    def test_malformed_config(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, _ = run_cli(capsys, "bench", "--config", str(path))
        assert code == 2


class TestImageDenoise:
    def test_small_image(self, tmp_path, capsys):
        rng = np.random.default_rng(5)
        img = GrayImage(pixels=rng.integers(0, 255, (16, 16)).astype(float))
        path = tmp_path / "img.pgm"
        write_pgm(img, path)
        out_dir = tmp_path / "out"
        code, out, _ = run_cli(capsys, "image-denoise", "--in", str(path),
                               "--sigma", "10", "--recipe", "wavmat(haar,L=2)",
                               "--reps", "2", "--out-dir", str(out_dir))
        assert code == 0
        assert "amse=" in out
        assert (out_dir / "denoised.pgm").exists()
        assert (out_dir / "image_report.json").exists()


class TestGridSearch:
    def test_signal_mode(self, tmp_path, capsys):
        out = tmp_path / "rank.csv"
        code, _, _ = run_cli(capsys, "grid-search", "--candidates",
                             "haar,db2", "--signal", "doppler", "--n", "64",
                             "--snr", "5", "--reps", "2", "--levels", "2",
                             "--out", str(out))
        assert code == 0
        rows = out.read_text().strip().splitlines()
        assert rows[0] == "first,second,amse"
        assert len(rows) == 1 + 6

    def test_requires_exactly_one_target(self, capsys):
        code, _, _ = run_cli(capsys, "grid-search", "--candidates", "haar")
        assert code == 2
