import json
import os

import pytest

from essentia.cli import main

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def golden_path(name):
    return os.path.join(GOLDEN, name)


def read_golden(name):
    with open(golden_path(name), "r", encoding="utf-8") as fh:
        return fh.read()


class TestGoldenByteEquality:
    @pytest.mark.parametrize("command,fixture", [
        ("classify", "module_z4"),
        ("classify", "module_poly"),
        ("classify", "module_mixed"),
        ("witness", "module_z4"),
        ("smith", "matrix_3x3"),
        ("smith", "matrix_poly"),
        ("saturate", "lattice_rank4"),
    ])
    def test_matches_golden(self, capsys, command, fixture):
        golden = read_golden(f"{command}_{fixture}.golden")
        rc1, out1, _ = run(capsys, command, golden_path(f"{fixture}.json"), "--json")
        rc2, out2, _ = run(capsys, command, golden_path(f"{fixture}.json"), "--json")
        assert rc1 == rc2 == 0
        assert out1 == out2 == golden

    def test_inline_json_equals_file_input(self, capsys):
        with open(golden_path("module_z4.json")) as fh:
            inline = fh.read().strip()
        _, from_file, _ = run(capsys, "classify", golden_path("module_z4.json"), "--json")
        _, from_inline, _ = run(capsys, "classify", inline, "--json")
        assert from_file == from_inline


class TestExitCodes:
    def test_malformed_json_names_position(self, capsys):
        rc, _, err = run(capsys, "classify", '{"ring": "int", "betti": }')
        assert rc == 2
        assert "position" in err

    def test_bad_module_schema(self, capsys):
        rc, _, err = run(capsys, "classify", '{"ring": "int"}')
        assert rc == 2

    def test_capacity_named(self, capsys):
        rc, _, err = run(capsys, "sweep", "--max-order", "100000")
        assert rc == 2
        assert "256" in err

    def test_witness_semisimple_is_input_error(self, capsys):
        rc, _, err = run(capsys, "classify", '{"ring":"int","betti":0,"factors":[6]}')
        assert rc == 0
        rc, _, err = run(capsys, "witness", '{"ring":"int","betti":0,"factors":[6]}')
        assert rc == 2

    def test_missing_file(self, capsys):
        rc, _, err = run(capsys, "classify", "no_such_file.json")
        assert rc == 2


class TestVerify:
    def test_verify_passes(self, capsys):
        rc, out, _ = run(capsys, "verify", '{"ring":"int","betti":0,"factors":[4]}', "--json")
        assert rc == 0
        payload = json.loads(out)
        assert payload["checks"] and all(c["pass"] for c in payload["checks"])

    def test_verify_text(self, capsys):
        rc, out, _ = run(capsys, "verify", '{"ring":"int","betti":0,"factors":[8]}')
        assert rc == 0
        assert "ok" in out and "FAIL" not in out


class TestSweep:
    def test_small_sweep_json(self, capsys):
        rc, out, _ = run(capsys, "sweep", "--max-order", "16", "--json")
        assert rc == 0
        lines = out.strip().splitlines()
        header = json.loads(lines[0])
        assert header["sweep"]["max_order"] == 16
        reports = [json.loads(line) for line in lines[1:]]
        # one report per isomorphism type of order <= 16
        from essentia import isotypes
        assert len(reports) == len(isotypes.integer_types(16))
        assert all(c["pass"] for r in reports for c in r["checks"])

    def test_sweep_deterministic(self, capsys):
        rc1, out1, _ = run(capsys, "sweep", "--max-order", "12", "--json")
        rc2, out2, _ = run(capsys, "sweep", "--max-order", "12", "--json")
        assert rc1 == rc2 == 0 and out1 == out2

    def test_polymod_sweep(self, capsys):
        rc, out, _ = run(capsys, "sweep", "--max-order", "8", "--ring", "polymod:2", "--json")
        assert rc == 0
        lines = out.strip().splitlines()
        assert json.loads(lines[0])["sweep"]["ring"] == {"polymod": 2}
        assert all(c["pass"] for line in lines[1:] for c in json.loads(line)["checks"])


class TestSocleCommand:
    def test_socle(self, capsys):
        rc, out, _ = run(capsys, "socle", '{"ring":"int","betti":0,"factors":[12]}', "--json")
        assert rc == 0
        payload = json.loads(out)
        assert payload["decomposition"] == [[2, 1], [3, 1]]
        assert payload["cardinality"] == 6


class TestAlternativeInputs:
    def test_classify_accepts_presentation_matrix(self, capsys):
        rc, out, _ = run(capsys, "classify",
                         '{"ring":"int","rows":2,"cols":2,"entries":[[2,0],[0,3]]}', "--json")
        assert rc == 0
        payload = json.loads(out)
        assert payload["module"] == {"ring": "int", "betti": 0, "factors": [6]}
        assert payload["semisimple"] is True

    def test_element_text_syntax_in_json(self, capsys):
        rc, out, _ = run(capsys, "classify",
                         '{"ring":{"polymod":2},"betti":0,"factors":["poly(2; 0,0,1)"]}', "--json")
        assert rc == 0
        payload = json.loads(out)
        assert payload["verdict"]["exists"] is True
        rc2, out2, _ = run(capsys, "classify",
                           '{"ring":{"polymod":2},"betti":0,"factors":[[0,0,1]]}', "--json")
        assert out == out2


class TestFailurePropagation:
    def test_sweep_exit_one_on_failing_check(self, capsys, monkeypatch):
        from essentia.report import Check, Report

        def broken(module, lattice=None):
            return Report(module.to_json(), (Check("forced_failure", False, ""),))

        monkeypatch.setattr("essentia.cli.oracle.verify_socle_essentiality", broken)
        rc, out, _ = run(capsys, "sweep", "--max-order", "4", "--json")
        assert rc == 1
        lines = out.strip().splitlines()
        assert any(not c["pass"] for line in lines[1:] for c in json.loads(line)["checks"])

    def test_verify_exit_one_on_failing_check(self, capsys, monkeypatch):
        from essentia.report import Check, Report

        def broken(module, lattice=None):
            return Report(module.to_json(), (Check("forced_failure", False, ""),))

        monkeypatch.setattr("essentia.cli.oracle.verify_semisimplicity_equivalences", broken)
        rc, _, _ = run(capsys, "verify", '{"ring":"int","betti":0,"factors":[4]}', "--json")
        assert rc == 1
