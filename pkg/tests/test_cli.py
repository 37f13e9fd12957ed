import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxprinciple import Candidate, HKPoly, check_all
from maxprinciple import cli
from maxprinciple.cli import EXIT_BREACH, EXIT_MALFORMED, EXIT_OK, RunConfig, main, run
from maxprinciple.errors import InvariantBreach, TheoremViolationFound
from maxprinciple.mpf_checker import canonicalize

CONTROL = {"sigma": "1", "p": {"degree": 2, "coeffs": ["1", "-4"]}, "q": {"degree": 0, "coeffs": ["1"]}}


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    ns = cli.build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    code = run(RunConfig(**fields), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def lines(text):
    return [json.loads(x) for x in text.splitlines()]


class TestCheck:
    def test_control_passes(self):
        code, out, _ = call("check", "--json", json.dumps(CONTROL))
        assert code == EXIT_OK
        (report,) = lines(out)
        assert report["overall"] is True

    def test_sigma_flag_overrides(self):
        code, out, _ = call("check", "--json", json.dumps(CONTROL), "--sigma", "2")
        (report,) = lines(out)
        assert code == EXIT_OK and report["overall"] is False
        failed = [v["condition"] for v in report["verdicts"] if not v["passed"]]
        assert failed == ["IV-G1", "IV-G2"]

    def test_input_file_and_output_file(self, tmp_path):
        src = tmp_path / "cand.json"
        dst = tmp_path / "report.json"
        src.write_text(json.dumps(CONTROL))
        code, out, _ = call("check", "--input", str(src), "--output", str(dst))
        assert code == EXIT_OK and out == ""
        assert json.loads(dst.read_text())["overall"] is True

    @pytest.mark.parametrize("payload", [
        "{not json",
        json.dumps({"p": CONTROL["p"]}),
        json.dumps({**CONTROL, "sigma": 0.5}),
        json.dumps({**CONTROL, "p": {"degree": 2, "coeffs": ["1", "2", "3"]}}),
        json.dumps({**CONTROL, "q": {"degree": 0, "coeffs": ["0"]}}),
        json.dumps([1, 2]),
    ])
    def test_malformed(self, payload):
        code, out, err = call("check", "--json", payload)
        assert code == EXIT_MALFORMED and out == "" and err.startswith("error:")

    def test_missing_file(self, tmp_path):
        code, _, _ = call("check", "--input", str(tmp_path / "nope.json"))
        assert code == EXIT_MALFORMED

    def test_bad_arguments(self, capsys):
        assert main(["frobnicate"]) == EXIT_MALFORMED
        assert main(["check"]) == EXIT_MALFORMED
        assert main(["search", "--workers", "0"]) == EXIT_MALFORMED


class TestSearch:
    def test_control_output(self):
        code, out, _ = call("search", "--sigma", "1", "--gmax", "2", "--hmax", "0")
        rows = lines(out)
        assert code == EXIT_OK
        assert rows[-1]["summary"] is True and rows[-1]["passing"] == 1
        assert rows[0] == CONTROL

    def test_deterministic_across_workers(self):
        args = ("search", "--sigma", "1", "--gmax", "3", "--coeff-range=-3,3")
        one = call(*args, "--workers", "1")[1]
        many = call(*args, "--workers", "3")[1]
        again = call(*args, "--workers", "1")[1]
        assert one == many == again

    def test_round_trip(self):
        _, out, _ = call("search", "--sigma", "1", "--gmax", "4", "--coeff-range=-2,2")
        for row in lines(out)[:-1]:
            cand = Candidate.from_json(row)
            assert cand.to_json() == row
            assert canonicalize(cand.p.coeffs, cand.q.coeffs) == (cand.p.coeffs, cand.q.coeffs)
            assert check_all(cand).overall

    def test_config_from_json(self):
        cfg = {"g_max": 2, "h_max": 0, "coeff_range": [-4, 4], "sigma": "1"}
        code, out, _ = call("search", "--json", json.dumps(cfg))
        assert code == EXIT_OK and lines(out)[0] == CONTROL

    @pytest.mark.parametrize("extra", [("--coeff-range", "1-2"), ("--sigma", "abc")])
    def test_bad_flags(self, extra):
        code, _, _ = call("search", "--gmax", "2", *extra)
        assert code == EXIT_MALFORMED

    def test_timing_goes_to_stderr(self):
        args = ("search", "--sigma", "1", "--gmax", "2", "--hmax", "0")
        plain = call(*args)
        timed = call(*args, "--timing")
        assert plain[1] == timed[1]
        assert "wall_clock_s" in timed[2] and plain[2] == ""


class TestSweep:
    def test_small_sweep(self):
        code, out, _ = call("sweep", "--sigma", "2", "--gmax", "3", "--workers", "2")
        summary = lines(out)[-1]
        assert code == EXIT_OK
        assert summary["violations"] == 0 and summary["inconsistent"] == 0

    def test_sigma_one_rejected(self):
        code, _, err = call("sweep", "--sigma", "1", "--gmax", "2")
        assert code == EXIT_MALFORMED and "sigma" in err

    def test_violation_exits_with_dump(self, monkeypatch):
        cand = Candidate(HKPoly(2, [1, -4]), HKPoly(0, [1]), 2)

        def boom(*args, **kwargs):
            raise TheoremViolationFound(cand, check_all(cand))

        monkeypatch.setattr(cli, "theorem_sweep", boom)
        code, out, err = call("sweep", "--sigma", "2", "--gmax", "2")
        assert code == EXIT_BREACH and out == ""
        dump = json.loads(err.splitlines()[-1])
        assert dump["candidate"] == cand.to_json()

    def test_invariant_breach(self, monkeypatch):
        def boom(*args, **kwargs):
            raise InvariantBreach("G1 and G2 disagree")

        monkeypatch.setattr(cli, "check_all", boom)
        code, _, err = call("check", "--json", json.dumps(CONTROL))
        assert code == EXIT_BREACH and "G1 and G2" in err


class TestCaseAndCrossCheck:
    def test_case_text(self):
        code, out, _ = call("case", "--json", json.dumps(CONTROL), "--text")
        assert code == EXIT_OK
        assert out.startswith("Case I:") and "contradiction for every sigma" in out

    def test_case_from_params(self):
        spec = {"g": 6, "h": 0, "k": 3, "l": 1}
        code, out, _ = call("case", "--json", json.dumps(spec), "--sigma", "2")
        (v,) = lines(out)
        assert code == EXIT_OK and v["chain"][0]["violated"] == "G2"

    @pytest.mark.parametrize("spec", [{"g": 2, "h": 0, "k": 3, "l": 1}, {"g": 2}, {"g": 2, "h": 0, "k": 1, "l": 1, "c": "-1"}])
    def test_case_bad_params(self, spec):
        code, _, _ = call("case", "--json", json.dumps(spec))
        assert code == EXIT_MALFORMED

    def test_case_sigma_not_above_one(self):
        code, _, _ = call("case", "--json", json.dumps(CONTROL), "--sigma", "1")
        assert code == EXIT_MALFORMED

    def test_cross_check_corrected(self):
        code, out, _ = call("cross-check", "--per-case", "3", "--seed", "5")
        rows = lines(out)
        assert code == EXIT_OK
        assert rows[-1]["mismatches"] == 0 and rows[-1]["checked"] == 27

    def test_cross_check_uncorrected_table_breaches(self):
        code, out, _ = call("cross-check", "--per-case", "3", "--table", "uncorrected")
        assert code == EXIT_BREACH
        assert lines(out)[-1]["mismatches"] > 0

    def test_cross_check_single_candidate(self):
        code, out, _ = call("cross-check", "--json", json.dumps({**CONTROL, "sigma": "2"}))
        (rep,) = lines(out)
        assert code == EXIT_OK and rep["ok"] is True


class TestEval:
    def test_rational_quantity(self):
        spec = {"velocity": "A2", "quantity": {"p": {"degree": 3, "coeffs": ["1", "-4"]},
                                               "q": {"degree": 2, "coeffs": ["0", "1"]}}}
        code, out, _ = call("eval", "--json", json.dumps(spec), "--grid", "1/2,3,4")
        rows = lines(out)
        assert code == EXIT_OK and rows[-1]["points"] == 12
        assert float(rows[-1]["max_G_w_12"]) <= 0

    def test_builtin_trace_quantity(self):
        spec = {"velocity": "trA^sigma", "sigma": "2", "quantity": {"builtin": "trA-ratio"}}
        code, out, _ = call("eval", "--json", json.dumps(spec), "--grid", "1,3,3")
        assert code == EXIT_OK and lines(out)[-1]["points"] == 6

    @pytest.mark.parametrize("spec,grid", [
        ({"velocity": "nope", "quantity": {"builtin": "trA-ratio"}}, "1,2,2"),
        ({"velocity": "K^sigma", "quantity": {"builtin": "trA-ratio"}}, "1,2,2"),
        ({"velocity": "A2", "quantity": {}}, "1,2,2"),
        ({"velocity": "A2", "quantity": {"builtin": "trA-ratio"}}, "0,2,2"),
        ({"velocity": "K^sigma", "sigma": "abc", "quantity": {"builtin": "trA-ratio"}}, "1,2,2"),
        ({"velocity": "A2", "quantity": {"builtin": "trA-ratio", "sigma": [1]}}, "1,2,2"),
    ])
    def test_malformed(self, spec, grid):
        code, _, _ = call("eval", "--json", json.dumps(spec), "--grid", grid)
        assert code == EXIT_MALFORMED


json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-5, 5) | st.sampled_from(["1", "-4", "3/2", "x", "", "0"]),
    lambda inner: st.lists(inner, max_size=3) | st.dictionaries(
        st.sampled_from(["p", "q", "sigma", "degree", "coeffs", "g", "h", "k", "l", "c", "d",
                         "velocity", "quantity", "builtin", "grid", "g_max", "coeff_range"]),
        inner, max_size=5),
    max_leaves=12,
)


@given(st.sampled_from(["check", "case", "cross-check", "eval", "search"]), json_values)
@settings(max_examples=300)
def test_arbitrary_json_never_escapes(command, payload):
    args = [command, "--json", json.dumps(payload)]
    if command == "search":
        args += ["--gmax", "1"]
    code, _, err = call(*args)
    assert code in (EXIT_OK, EXIT_MALFORMED)
    if code == EXIT_MALFORMED:
        assert err.startswith("error:")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "maxprinciple", "check", "--json", json.dumps(CONTROL)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["overall"] is True
