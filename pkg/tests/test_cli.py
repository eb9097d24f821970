import io
import json
import xml.etree.ElementTree as ET
from fractions import Fraction as F
from pathlib import Path

import pytest

from mandelangles.cli import run

GOLDENS = Path(__file__).parent / "goldens"


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    assert code == 0
    return json.loads(text)


def test_in_r():
    assert call("in-r", "--t", "15/31") == (0, '{"t":"15/31","in_R":true}\n')
    assert call_json("in-r", "--t", "3/8")["in_R"] is False
    assert call_json("in-r", "--bits", "0110000000000000", "--depth", "4")["verdict"] == "rejected-at-step-2"


def test_openings_and_sums():
    code, text = call("openings", "--max-period", "5")
    rows = [json.loads(line) for line in text.splitlines()]
    assert {"p": 5, "n": 15, "theta_minus": "15/31", "omega_minus": "16/33", "length": "1/1023"} in rows
    assert call_json("opening-sum", "--max-period", "3") == {"sum": "131/315"}
    _, csv_text = call("cover", "--max-period", "1")
    assert csv_text == "lo,hi\n0/1,0/1\n1/3,1/2\n"


def test_jobs_do_not_change_output():
    assert call("openings", "--max-period", "8") == call("--jobs", "2", "openings", "--max-period", "8")
    assert call("opening-sum", "--max-period", "8", "--jobs", "2") == call("opening-sum", "--max-period", "8")


def test_ksigma_commands():
    _, text = call("ksigma-build", "--sigma", "1/4", "--level", "2")
    assert text == "lo,hi\n5/16,11/16\n13/16,19/16\n"
    d = call_json("ksigma-dim", "--p", "4", "--levels", "6:12")
    assert d["counts"][0] == 58 and d["lower_bound"] == 0.862496
    _, text = call("ksigma-verify", "--p", "3", "--max-level", "5")
    recs = [json.loads(line) for line in text.splitlines()]
    assert recs and all(r["pass"] for r in recs)
    assert set(recs[0]) == {"clause", "level", "pass", "interval", "witness"}


def test_tau_pi_nonrec():
    d = call_json("tau", "--c", "-1.401155", "--bits", "24")
    assert abs(float(d["value"]) - 0.412454) < 1e-4
    assert d["certified_bits"] == 24 and len(d["word"]) == 24
    assert "extended" not in d
    assert call_json("tau", "--c", "-0.5", "--bits", "16")["extended"] is True
    d = call_json("pi", "--t", "3/7", "--tol", "1e-8")
    assert abs(float(d["value"]) + 1.75) < 1e-8
    assert call_json("nonrec", "--c", "-2", "--steps", "100")["min_distance"] == 2.0


def test_tuning_commands():
    assert call_json("tune", "--p", "2", "--n", "1", "--t", "1/2")["images"] == ["5/12", "7/12"]
    assert call_json("tune", "--p", "2", "--n", "1", "--t", "1/3")["images"] == ["2/5"]
    assert call_json("psi", "--p", "2", "--n", "1", "--s", "2/5")["psi"] == "1/3"
    assert call_json("cantor-dim", "--p", "3", "--n", "3")["slope"] == pytest.approx(1 / 3, abs=0.02)


def test_biaccess_commands():
    assert call_json("s-c", "--t", "1/6", "--tau", "1/3")["in_S"] is True
    d = call_json("dim-report", "--c", "0.1")
    assert d["upper_flag"] == "dimension 0"
    _, text = call("dim-report", "--sweep", "-2", "-1.9", "2")
    assert text.splitlines()[0] == "c,rho,sigma,ell,ell_prime,boxdim_estimate,flags"


def test_ray_commands():
    _, text = call("trace-ray", "--c", "-2", "--t", "1/2", "--depth", "3")
    lines = text.splitlines()
    assert lines[0] == "re,im,angle_num,angle_den" and len(lines) == 5
    assert call_json("verify-landing", "--c", "-2", "--depth", "30")["residual"] < 1e-6


def test_exit_codes(capsys):
    assert call("pi", "--t", "3/8")[0] == 1
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "NotInR"
    assert call("bogus")[0] == 2
    assert call("in-r", "--t", "1/3", "--unknown")[0] == 2
    assert call("in-r")[0] == 2
    assert call("tau", "--c", "1.5")[0] == 1
    assert call("in-r", "--t", "x/y")[0] == 2


def test_deterministic_output():
    for argv in (("dim-report", "--c", "-1.8"), ("tau", "--c", "-1.5", "--bits", "40"),
                 ("--seed", "3", "cover", "--max-period", "6")):
        assert call(*argv) == call(*argv)


def _structure(path):
    root = ET.parse(path).getroot()
    return [(el.tag, sorted(el.attrib.items())) for el in root.iter()]


def test_figures_match_goldens(tmp_path):
    code, text = call("figures", "--out", str(tmp_path), "--ppm")
    assert code == 0
    written = json.loads(text)["written"]
    for name in ("openings_circle.svg", "ksigma_hierarchy.svg", "ray_overlay.svg"):
        assert name in written
        assert _structure(tmp_path / name) == _structure(GOLDENS / name)
    ppm = (tmp_path / "julia_backdrop.ppm").read_bytes()
    assert ppm.startswith(b"P6 200 200 255\n")
    assert len(ppm) == len(b"P6 200 200 255\n") + 3 * 200 * 200


def test_figure_content():
    root = ET.parse(GOLDENS / "openings_circle.svg").getroot()
    ns = "{http://www.w3.org/2000/svg}"
    periods = [el.get("data-period") for el in root.iter(ns + "path")]
    # each opening of period <= 6 is drawn with its mirror image
    assert len(periods) == 2 * (1 + 1 + 1 + 2 + 3 + 5)
    rays = ET.parse(GOLDENS / "ray_overlay.svg").getroot().findall(ns + "polyline")
    assert {F(el.get("data-angle")) for el in rays} == {F(3, 7), F(4, 7), F(1, 7), F(6, 7)}
