import io
import json

import pytest

from cohenwitt.cli import EXIT_FAULT, EXIT_MARKER, EXIT_OK, EXIT_USAGE, run


def call(argv, job=""):
    if not isinstance(job, str):
        job = json.dumps(job)
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdin=io.StringIO(job), stdout=out, stderr=err)
    text = out.getvalue().strip()
    return code, (json.loads(text) if text else None), err.getvalue()


@pytest.mark.parametrize("argv,job,expected", [
    (["cohen", "digitize"], {"x": ["t", "1"]}, {"digits": ["t", "1"]}),
    (["--p", "2", "--r", "0", "--m", "2", "witt", "add"], {"x": [1, 0], "y": [1, 0]}, {"result": ["0", "1"]}),
    (["--m", "1", "lambda"], {"alpha": "1/(1+t)"}, {"(0)": "(1)/(1+t)", "(1)": "(1)/(1+t)"}),
    (["valued", "ac"], {"x": {"val": 1, "unit": ["t", "1"]}, "n": 2}, {"result": ["t", "1"]}),
    (["valued", "v"], {"x": {"val": "inf"}}, {"v": "inf"}),
    (["morphism", "structure-iso"], {"x": ["t", "0"], "reps_target": [["t", "1"]]}, {"image": ["t", "1"]}),
    (["cohen", "member"], {"x": ["0", "t"]}, {"member": False}),
    (["witt", "truncate"], {"x": ["t", "1"], "n": 1}, {"result": ["t"]}),
])
def test_documented_jobs(argv, job, expected):
    code, out, _ = call(argv, job)
    assert code == EXIT_OK
    assert out == expected


def test_field_in_payload_overrides_flags():
    # [2] is the Teichmuller lift of 2, which is -1 in Z_3
    code, out, _ = call(["witt", "add"], {"field": {"p": 3}, "x": [1, 0], "y": [2, 0]})
    assert code == EXIT_OK and out == {"result": ["0", "0"]}


def test_tep_job():
    code, out, _ = call(["morphism", "tep"], {"x": ["t", "0"], "n": 1})
    assert code == EXIT_OK
    assert out == {"image": ["t^2", "0"], "witnesses": [["t", "0"]], "residue_map": ["t^2"]}


@pytest.mark.parametrize("argv,job,marker", [
    (["cohen", "digitize"], {"x": ["0", "t"]}, "NotMember"),
    (["valued", "res"], {"x": {"val": -1, "unit": ["t", "1"]}, "n": 1}, "NotIntegral"),
    (["cohen", "rep"], {"alpha": "t", "kind": "multiplicative"}, "NotInPerfectCore"),
])
def test_markers_exit_two(argv, job, marker):
    code, out, _ = call(argv, job)
    assert code == EXIT_MARKER and out == {"marker": marker}


@pytest.mark.parametrize("argv,job", [
    (["cohen", "digitize"], {"x": "t"}),
    (["cohen", "digitize"], "{bad"),
    (["cohen", "frob"], {}),
    (["nosuch"], {}),
    (["--m", "x", "witt", "add"], {}),
    (["lang", "eval"], {}),
    (["lang", "audit"], {"which": "T2", "control": "nosuch"}),
])
def test_malformed_jobs_exit_64(argv, job):
    code, out, err = call(argv, job)
    assert code == EXIT_USAGE and out is None
    assert "invalid job" in err


@pytest.mark.parametrize("argv,job", [
    (["--p", "4", "cohen", "digitize"], {"x": ["t", "1"]}),
    (["witt", "mul"], {"x": ["t", "1"], "y": ["1/0", "1"]}),
    (["lang", "eval"], {"formula": "(forall x (= x x))"}),
])
def test_faults_exit_one(argv, job):
    code, out, err = call(argv, job)
    assert code == EXIT_FAULT and out is None and err


def test_lang_eval_reports_flags():
    code, out, _ = call(["lang", "eval"], {"term": "(S1 x a)", "sorts": {"x": "A", "a": "k"},
                                            "assignment": {"x": ["t^2", "0"], "a": "t"}})
    assert code == EXIT_OK and out["value"] == ["0", "0"] and len(out["flags"]) == 1
    code, out, _ = call(["lang", "eval"], {"formula": "(Theta1 x)", "sorts": {"x": "A"},
                                            "assignment": {"x": ["t", "0"]}})
    assert out == {"value": True, "flags": []}


def test_lang_audits():
    code, out, _ = call(["--samples", "20", "lang", "audit"], {"which": "T2", "control": "theta-constant-true"})
    assert code == EXIT_OK and not out["passed"]
    vi = next(a for a in out["axioms"] if a["axiom"] == "VI_2")
    assert vi["status"] == "fail" and "t^2" in vi["witness"]
    code, out, _ = call(["--samples", "20", "lang", "audit"], {"which": "ac-axioms"})
    assert code == EXIT_OK and out["passed"]


def test_check_enrichment_job():
    code, out, _ = call(["--samples", "20", "morphism", "check-enrichment"], {"kind": "tep", "n": 1})
    assert code == EXIT_OK and out["ok"] and out["checked"] == 20 and out["mode"] == "image-subring"


def test_input_file(tmp_path):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"x": ["t", "1"]}))
    code, out, _ = call(["--input", str(path), "cohen", "digitize"])
    assert code == EXIT_OK and out == {"digits": ["t", "1"]}
