#!/usr/bin/env python3
"""
Tests for the command-line front end and model descriptors
"""
import json

import pytest

from cli import run
from descriptors import ModelDescriptor, build_model
from errors import DescriptorError


def _json(capsys, argv):
    code = run(["--json"] + argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if code == 0 else None


@pytest.mark.parametrize(
    "text",
    ["Fq:13", "Qp:2", "R", "QS:2,3,5,7,13", "Tower(R;X)", "Tower(Tower(R;X);Y)", "Tower(Qp:3;T)"],
)
def test_descriptor_text_round_trip(text):
    assert ModelDescriptor.parse(text).to_text() == text


def test_builtin_names_resolve():
    assert ModelDescriptor.parse("RXY").to_text() == "Tower(Tower(R;X);Y)"
    assert build_model("Q2") == build_model("Qp:2")
    assert build_model("QS").descriptor == "QS:2,3,5,7,13"
    assert ModelDescriptor.parse("QS:3,2").params == [3, 2]


@pytest.mark.parametrize("text", ["", "Zp:3", "Tower(R)", "Tower(R;1x)", "Qp:2,3", "Fq:x", "Qp"])
def test_bad_descriptors(text):
    with pytest.raises(DescriptorError):
        ModelDescriptor.parse(text)


def test_classify_json(capsys):
    code, report = _json(capsys, ["classify", "--model", "Qp:2", "--subgroup", "1,5"])
    assert code == 0
    assert report["command"] == "classify"
    assert report["results"]["type"] == "C4_STAR_C4"
    assert report["results"]["level"] == 3
    assert report["inputs"]["model"] == "Qp:2"


def test_classify_table(capsys):
    assert run(["classify", "--model", "Q13"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("[classify]")
    assert "C_I(1)" in out


def test_wgroup_json(capsys):
    code, report = _json(capsys, ["wgroup", "--model", "Q2"])
    assert code == 0
    assert report["results"]["order"] == 256
    assert report["results"]["relations"] == ["sq(-1) + com(2,5)"]
    assert [order for order, _ in report["results"]["chain"]] == [4, 8, 32, 64, 256]


def test_lgp_json(capsys):
    code, report = _json(capsys, ["lgp", "1", "1", "-7", "-31"])
    assert code == 0
    assert report["results"]["isotropic"] is False
    assert report["results"]["failures"] == ["Q_2"]


def test_lgp_ternary_with_witness(capsys):
    code, report = _json(capsys, ["lgp", "1", "1", "-2", "--height-bound", "5"])
    assert code == 0
    assert report["results"]["isotropic"] is True
    assert report["results"]["reciprocity"] is True
    assert report["results"]["witness"] == [1, 1, 1]


def test_witt_against_local_field(capsys):
    code, report = _json(capsys, ["witt", "--model", "QS", "--prime", "13", "--against", "Qp:13"])
    assert code == 0
    assert report["results"]["rank"] == 4
    assert report["results"]["isomorphic_to"] == {"Qp:13": True}


def test_lift_json(capsys):
    code, report = _json(capsys, ["lift", "--model", "Q3", "--valuation", "3-adic"])
    assert code == 0
    assert report["results"]["lift"]["type"] == "S_I(1)"
    code, report = _json(capsys, ["lift", "--model", "RXY", "--valuation", "Y-adic/X-adic"])
    assert report["results"]["lift"]["type"] == "D_I(2)"


def test_census_table(capsys):
    assert run(["census"]) == 0
    out = capsys.readouterr().out
    assert "C4*C4" in out and "(free)" in out


def test_selftest_single_check(capsys):
    code, report = _json(capsys, ["selftest", "--check", "dyadic-sums", "--check", "quaternary-form"])
    assert code == 0
    assert [c["name"] for c in report["results"]["checks"]] == ["dyadic-sums", "quaternary-form"]
    assert report["results"]["passed"] is True


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["classify"],
        ["lgp"],
        ["selftest", "--check", "no-such-check"],
        ["classify", "--model", "Zp:3"],
        ["classify", "--model", "Qp:2", "--subgroup", "0"],
        ["lgp", "1", "zero"],
        ["lift", "--model", "Q3"],
    ],
)
def test_parse_errors_exit_two(argv, capsys):
    assert run(argv) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--model", "Qp:2", "--subgroup", "-1,2,5"],
        ["witt", "--model", "Qp:13", "--prime", "13"],
        ["wgroup", "--model", "QS"],
        ["lift", "--model", "Q2", "--valuation", "2-adic"],
    ],
)
def test_domain_errors_exit_three(argv, capsys):
    assert run(argv) == 3
    assert "error:" in capsys.readouterr().err
