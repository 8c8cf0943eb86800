"""Acceptance battery: each criterion at its exact tolerance, one PASS/FAIL line apiece."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stdout

import pytest

from moorebox import corpus, suite
from moorebox.cli import main
from moorebox.derive import full_resolution, resolution_em_report
from moorebox.exactalg import parse_group
from moorebox.homotopy import pi

from oracles import cyclic_tensor, cyclic_tor1

SEED = 0


@pytest.fixture
def announce(capsys):
    def emit(num, name, ok, detail=""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {num}: {name}{' ' + detail if detail else ''}")
    return emit


def test_criterion_1_tor_coincidence(announce):
    rep = suite.tor_coincidence(SEED)
    first = rep.details["cases"][0]
    # independent check of the headline case: Z/4 and Z/6 are cyclic, so both groups have order gcd(4, 6)
    headline = first["degrees"] == ["Z/2", "Z/2", "0"] and cyclic_tensor(4, 6) == cyclic_tor1(4, 6) == 2
    ok = rep.ok and headline and len(rep.details["cases"]) == 21
    announce(1, "Tor coincidence", ok, f"({len(rep.details['cases'])} pairs exact)")
    assert ok, rep.failures[:5]


def test_criterion_2_resolution_structure(announce):
    rep = suite.resolution_structure()
    names = [r["name"] for r in rep.details["resolutions"]]
    ok = rep.ok and len(names) == 3 and all(r["violations"] == 0 for r in rep.details["resolutions"])
    announce(2, "resolution structure", ok, f"({', '.join(names)} at level pcpc)")
    assert ok, rep.failures[:5]


def test_criterion_3_comparison_theorem(announce):
    rep = suite.comparison(SEED)
    ok = rep.ok and rep.details["distinct_lifts"]
    announce(3, "comparison theorem", ok)
    assert ok, rep.failures[:5]


def test_criterion_4_moore_theorem(announce):
    rep = suite.moore_theorem()
    count = len(rep.details["objects"])
    # constants, every poset with at most three elements, and the three resolutions
    ok = rep.ok and count == len(corpus.CONSTANT_GROUPS) + 1 + 2 + 5 + len(corpus.RESOLVED_GROUPS)
    announce(4, "cubical Moore theorem", ok, f"({count} objects)")
    assert ok, rep.failures[:5]


def test_criterion_5_splitting(announce):
    rep = suite.splitting()
    ok = rep.ok and len(rep.details["objects"]) > 0
    announce(5, "splitting", ok, f"({len(rep.details['objects'])} objects, degrees <= 3)")
    assert ok, rep.failures[:5]


def test_criterion_6_dichotomy(announce):
    rep = suite.dichotomy()
    ok = (rep.ok and rep.details["C"] == ["Z/6", "Z/6", "Z/6"]
          and rep.details["N"] == rep.details["M"] == ["Z/6", "0", "0"])
    announce(6, "derived functor dichotomy", ok, f"(C {rep.details['C']}, N {rep.details['N']})")
    assert ok, rep.failures[:5]


def test_criterion_7_homotopy_groups(announce):
    rep = suite.homotopy_groups()
    _, g = corpus.finite_groups()[0]
    orders = [pi(g, n).order for n in range(3)]
    ok = rep.ok and rep.details["pi"] == ["Z/2", "0", "0"] and orders == [2, 1, 1]
    announce(7, "homotopy groups", ok, f"(pi = {rep.details['pi']})")
    assert ok, rep.failures[:5]


def test_criterion_8_kan_instances(announce):
    rep = suite.kan_instances()
    objs = rep.details["objects"]
    enumerated = all(o["boxes"][1] > 0 and o["boxes"][2] > 0 for o in objs)
    ok = rep.ok and enumerated and len(objs) == len(corpus.finite_groups())
    announce(8, "Kan instances", ok, f"({len(objs)} groups, degrees 1 and 2)")
    assert ok, rep.failures[:5]


def test_criterion_9_em_exactness(announce):
    rep = suite.em_exactness()
    extra = [full_resolution(parse_group("Z/4"), 3, seed=s, extra=1) for s in (1, 2)]
    ok = rep.ok and all(resolution_em_report(p).ok for p in extra)
    announce(9, "resolution exactness", ok)
    assert ok, rep.failures[:5]


def test_criterion_10_determinism(announce):
    outputs = []
    for _ in range(2):
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(["--format", "json", "suite", "--seed", str(SEED)])
        outputs.append((code, buf.getvalue().encode()))
    # a fresh interpreter rules out state shared through caches
    proc = subprocess.run([sys.executable, "-m", "moorebox.cli", "--format", "json", "suite", "--seed", str(SEED)],
                          capture_output=True, check=False)
    outputs.append((proc.returncode, proc.stdout))
    lines = outputs[0][1].decode().splitlines()
    ok = (outputs[0] == outputs[1] == outputs[2] and outputs[0][0] == 0 and len(lines) == 9
          and all(json.loads(line)["ok"] for line in lines))
    announce(10, "determinism", ok, f"({len(outputs[0][1])} identical bytes)")
    assert ok
