import json

import numpy as np
import pytest

from respectra import upscaled_block, ResampleSpec
from respectra.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def mp_density(lam, beta, s2=1.0):
    lo = s2 * (1 - np.sqrt(beta)) ** 2
    hi = s2 * (1 + np.sqrt(beta)) ** 2
    lam = np.asarray(lam, dtype=float)
    out = np.zeros_like(lam)
    m = (lam > lo) & (lam < hi)
    out[m] = np.sqrt((hi - lam[m]) * (lam[m] - lo)) / (2 * np.pi * s2 * lam[m])
    return out


class TestDetectCommand:
    def test_synthetic_upscaled_golden(self, capsys):
        code, out, _ = run(capsys, "detect", "--synthetic", "--rho", "0.97",
                           "--n", "32", "--k", "9", "--delta", "1",
                           "--xi", "2", "--kernel", "bspline", "--seed", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["is_upscaled"] is True
        assert set(payload) >= {"kappa", "threshold", "per_view_lambda",
                                "below_set", "lambda0_per_view"}
        assert len(payload["per_view_lambda"]) == 48

    def test_synthetic_genuine(self, capsys):
        code, out, _ = run(capsys, "detect", "--synthetic", "--rho", "0.97",
                           "--n", "64", "--k", "9", "--delta", "1",
                           "--seed", "2")
        assert code == 0
        assert json.loads(out)["is_upscaled"] is False

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, "detect", "missing.pgm")
        assert code == 2
        assert "missing.pgm" in err

    def test_image_input(self, capsys, tmp_path):
        # genuine-looking random image should not be flagged
        rng = np.random.default_rng(0)
        z = upscaled_block(0.97, 3000.0, 48,
                           ResampleSpec(L=2, M=1, kernel="b-spline",
                                        delta=1.0), seed=5, field_n=96)
        pix = np.clip(np.round(z - z.min()), 0, 65535).astype(int)
        lines = ["P2", "48 48", str(int(pix.max()))]
        lines += [" ".join(str(v) for v in row) for row in pix]
        path = tmp_path / "up.pgm"
        path.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, "detect", str(path), "--k", "9",
                           "--delta", "1", "--block-size", "32")
        assert code == 0
        assert json.loads(out)["is_upscaled"] is True

    def test_json_roundtrip(self, capsys, tmp_path):
        out_path = tmp_path / "res.json"
        code, _, _ = run(capsys, "detect", "--synthetic", "--n", "32",
                         "--seed", "3", "--out", str(out_path))
        assert code == 0
        payload = json.loads(out_path.read_text())
        assert json.loads(json.dumps(payload)) == payload


class TestEstimateCommand:
    def test_synthetic_interval(self, capsys):
        code, out, _ = run(capsys, "estimate", "--synthetic", "--rho", "0.97",
                           "--n", "128", "--block-size", "64", "--k", "16",
                           "--delta", "1", "--xi", "2", "--kernel", "linear",
                           "--sigma-s2", "8.3e6", "--seed", "4")
        assert code == 0
        payload = json.loads(out)
        assert payload["xi_lower"] <= 2.0 < payload["xi_upper"]


class TestPdfCommand:
    def test_mp_csv_matches_oracle(self, capsys, tmp_path):
        out_path = tmp_path / "mp.csv"
        code, _, _ = run(capsys, "pdf", "--rho", "0", "--beta", "1",
                         "--out", str(out_path))
        assert code == 0
        rows = np.loadtxt(out_path, delimiter=",", skiprows=1)
        lam, dens = rows[:, 0], rows[:, 1]
        want = mp_density(lam, 1.0)
        inside = (lam > 0.2) & (lam < 3.8)
        assert np.max(np.abs(dens[inside] - want[inside])) < 0.01 * want.max()

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "pdf", "--rho", "0.9", "--beta", "0.5",
                           "--xi", "2", "--kernel", "linear",
                           "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["zero_mass"] == pytest.approx(0.75)


class TestSpectrumCommand:
    def test_genuine_values(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--rho", "0.97",
                           "--points", "4")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "omega,value"
        first = lines[1].split(",")
        assert float(first[1]) == pytest.approx(1 / 0.03 ** 2)


class TestGenerateCommand:
    def test_deterministic_output(self, capsys):
        a = run(capsys, "generate", "--n", "16", "--seed", "9")
        b = run(capsys, "generate", "--n", "16", "--seed", "9")
        assert a == b
        assert a[0] == 0

    def test_quantized_values(self, capsys):
        code, out, _ = run(capsys, "generate", "--n", "8", "--delta", "2",
                           "--seed", "1")
        vals = np.loadtxt(out.splitlines(), delimiter=",", skiprows=1)
        assert np.allclose(vals, 2 * np.round(vals / 2))


class TestExperimentCommand:
    def test_fig1b(self, capsys, tmp_path):
        code, out, _ = run(capsys, "experiment", "fig1b", "--out",
                           str(tmp_path), "--seed", "5")
        assert code == 0
        assert (tmp_path / out.strip().split("/")[-1]).exists()

    def test_unknown_figure_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "experiment", "fig99", "--out",
                           str(tmp_path))
        assert code == 2
        assert "fig99" in err


class TestSeedEnv:
    def test_rmt_seed_override(self, capsys, monkeypatch):
        monkeypatch.setenv("RMT_SEED", "777")
        a = run(capsys, "generate", "--n", "8")
        monkeypatch.setenv("RMT_SEED", "778")
        b = run(capsys, "generate", "--n", "8")
        assert a != b
