"""End-to-end command-line tests: flags, file formats, determinism."""

import json

import pytest

import blockade.words
from blockade.cli import main
from blockade import verify


def run_cli(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def csv_rows(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, l.split(","))) for l in lines[1:]]


class TestCoeffs:
    def test_universal_density_table(self, capsys):
        rc, out = run_cli(
            capsys, "coeffs", "--topology", "infinite", "--lambda", "1", "--jmax", "5"
        )
        assert rc == 0
        rows = csv_rows(out)
        even = {int(r["order"]): r["value"] for r in rows if int(r["order"]) % 2 == 0}
        assert [even[n] for n in (2, 4, 6, 8, 10)] == [
            "1/1", "-1/1", "3/5", "-81/280", "3023/25200",
        ]
        assert all(r["universal"] == "true" for r in rows)

    def test_two_site_ring(self, capsys):
        rc, out = run_cli(capsys, "coeffs", "--topology", "ring", "--L", "2", "--jmax", "2")
        assert rc == 0
        rows = csv_rows(out)
        assert rows[-1]["value"] == "-2/3"

    def test_open_chain_deficits(self, capsys):
        rc, out = run_cli(
            capsys, "coeffs", "--topology", "line", "--L", "12", "--jmax", "3", "--emit-q"
        )
        assert rc == 0
        deficits = [r["value"] for r in csv_rows(out) if r["observable"] == "boundary-deficit"]
        assert deficits == ["0/1", "2/3", "38/27"]

    def test_oracle_cross_check_passes(self, capsys):
        rc, _ = run_cli(
            capsys, "coeffs", "--topology", "ring", "--L", "5", "--jmax", "3", "--with-oracle"
        )
        assert rc == 0

    def test_corrupted_product_table_fails_oracle_check(self, capsys, monkeypatch):
        # break one projector product: the symbolic route then disagrees with
        # the integer matrix oracle and the run must report a nonzero status
        bad = [list(row) for row in blockade.words._MUL]
        bad[blockade.words.PROJ][blockade.words.LOWER] = None
        monkeypatch.setattr(blockade.words, "_MUL", tuple(tuple(r) for r in bad))
        rc, _ = run_cli(
            capsys, "coeffs", "--topology", "ring", "--L", "4", "--jmax", "2", "--with-oracle"
        )
        assert rc != 0

    def test_header_echoes_config(self, capsys):
        _, out = run_cli(capsys, "coeffs", "--topology", "ring", "--L", "4", "--jmax", "1")
        assert "# L = 4" in out and "# jmax = 1" in out

    def test_json_payload(self, capsys):
        rc, out = run_cli(
            capsys,
            "coeffs", "--topology", "ring", "--L", "3", "--jmax", "2", "--format", "json",
        )
        payload = json.loads(out)
        assert payload["config"]
        assert payload["records"][2]["numerator"] == 1

    def test_decimal_mode(self, capsys):
        _, out = run_cli(
            capsys,
            "coeffs", "--topology", "ring", "--L", "2", "--jmax", "2", "--decimal",
        )
        assert repr(-2 / 3) in out


class TestSimulate:
    def test_density_starts_at_zero(self, capsys):
        rc, out = run_cli(
            capsys,
            "simulate", "--topology", "ring", "--L", "6",
            "--t-start", "0", "--t-stop", "1", "--t-steps", "5",
        )
        assert rc == 0
        rows = csv_rows(out)
        assert float(rows[0]["t"]) == 0.0 and float(rows[0]["density_ring"]) == 0.0

    def test_ring_line_overlay_columns(self, capsys):
        rc, out = run_cli(
            capsys,
            "simulate", "--topology", "ring,line", "--L", "8",
            "--t-steps", "5", "--overlay-universal", "--jmax", "3",
        )
        assert rc == 0
        header = [l for l in out.splitlines() if l and not l.startswith("#")][0]
        assert header == "t,density_ring,density_line,universal_3"

    def test_overlay_defaults_to_certified_threshold(self, capsys):
        rc, out = run_cli(
            capsys,
            "simulate", "--topology", "ring", "--L", "6",
            "--t-steps", "3", "--overlay-universal",
        )
        assert rc == 0
        assert "universal_5" in out  # threshold of a 6-site ring

    def test_window_report(self, capsys):
        rc, out = run_cli(
            capsys,
            "simulate", "--topology", "ring", "--L", "8", "--window-vs", "10",
            "--t-start", "0", "--t-stop", "6", "--t-steps", "121",
            "--epsilon", "1e-3",
        )
        assert rc == 0
        value = out.splitlines()[-1].split(",")[1]
        assert 0.0 < float(value) < 6.0

    def test_byte_identical_repeat_runs(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        for path in (out1, out2):
            main([
                "simulate", "--topology", "ring", "--L", "7",
                "--t-steps", "9", "--output", str(path),
            ])
        assert out1.read_bytes() == out2.read_bytes()

    def test_g2_observable(self, capsys):
        rc, out = run_cli(
            capsys,
            "simulate", "--topology", "ring", "--L", "6", "--observable", "g2",
            "--d", "2", "--t-start", "0", "--t-stop", "0.2", "--t-steps", "5",
        )
        assert rc == 0
        rows = csv_rows(out)
        assert all(float(r["t"]) > 0 for r in rows)  # zero time dropped


class TestBounds:
    def test_kappa_table(self, capsys):
        rc, out = run_cli(capsys, "bounds", "--table", "kappa", "--amax", "5")
        assert rc == 0
        rows = csv_rows(out)
        assert float(rows[0]["tau"]) == 1.0 and float(rows[0]["omega"]) == 1.0

    def test_bound_table(self, capsys):
        rc, out = run_cli(capsys, "bounds", "--table", "bj", "--jmax", "4")
        assert rc == 0
        assert len(csv_rows(out)) == 4

    def test_envelope_curve(self, capsys):
        rc, out = run_cli(
            capsys,
            "bounds", "--table", "envelope", "--L", "18",
            "--t-start", "0", "--t-stop", "1", "--t-steps", "5",
        )
        assert rc == 0
        rows = csv_rows(out)
        assert rows[0]["log_E"] == "-inf"

    def test_ratio_table(self, capsys):
        rc, out = run_cli(
            capsys, "bounds", "--table", "ratio", "--Lmin", "10", "--Lmax", "12"
        )
        assert rc == 0
        assert len(csv_rows(out)) == 3


class TestConfigFile:
    def test_flags_from_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("topology = ring\nL = 2\njmax = 2\n")
        rc, out = run_cli(capsys, "coeffs", "--config", str(cfg))
        assert rc == 0
        assert csv_rows(out)[-1]["value"] == "-2/3"

    def test_explicit_flag_overrides_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("topology = ring\nL = 2\njmax = 5\n")
        rc, out = run_cli(capsys, "coeffs", "--config", str(cfg), "--jmax", "1")
        assert rc == 0
        assert max(int(r["order"]) for r in csv_rows(out)) == 2


class TestVerifyCommand:
    def test_reference_drift_detected(self, capsys, monkeypatch):
        monkeypatch.setattr(
            verify, "CRITERIA", {1: verify.CRITERIA[1]}, raising=True
        )
        monkeypatch.setattr(verify, "DENSITY_NN", verify.DENSITY_NN[:-1] + [0])
        rc, out = run_cli(capsys, "verify", "--quick")
        assert rc == 1
        assert "FAIL" in out

    def test_single_criterion_passes(self, capsys, monkeypatch):
        monkeypatch.setattr(
            verify, "CRITERIA", {2: verify.CRITERIA[2]}, raising=True
        )
        rc, out = run_cli(capsys, "verify", "--quick")
        assert rc == 0
        assert "PASS" in out and "FAIL" not in out
