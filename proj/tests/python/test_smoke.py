"""Smoke tests for the python bindings and CLI payload schemas."""

import json
import os
import subprocess
from fractions import Fraction

import pytest

import stralg

GP = """
field 2 1
vertices v
arrow x: v -> v
arrow y: v -> v
forbid x x
forbid y y
forbid x y
forbid y x
"""

KRONECKER = """
field 2 1
vertices 1 2
arrow a: 1 -> 2
arrow b: 1 -> 2
"""


@pytest.fixture(scope="module")
def gp():
    return stralg.Algebra.from_spec(GP)


@pytest.fixture(scope="module")
def kronecker():
    return stralg.Algebra.from_spec(KRONECKER)


def test_algebra_validation(gp):
    assert gp.dim == 3
    assert gp.path_basis == ["e_v", "x", "y"]
    assert gp.nilpotency_bound == 2
    with pytest.raises(stralg.StralgError):
        stralg.Algebra.from_spec("field 4 1\nvertices v\n")


def test_ranks(gp):
    m = stralg.Module.string_module(gp, "x")
    assert m.dim == 2
    assert stralg.rk(m, "[[x]]") == Fraction(1, 2)
    assert stralg.rk(m, "[[e_v]]") == 1
    assert stralg.rk(m.power(3), "[[x]]") == Fraction(1, 2)
    ok, violations = stralg.sylvester_audit(m, trials=30, seed=7)
    assert ok, violations


def test_band_module(kronecker):
    b = stralg.Module.band_module(kronecker, "a b^-1", [1, 1], 2)
    assert b.dim == 4
    ok, violation = b.check()
    assert ok, violation


def test_pp_and_counting(gp):
    m = stralg.Module.from_spec(gp, "string: x y^-1\nstring: y\n")
    # the counting pair agrees with the graph scan
    count, density = stralg.right_endpoint_count(gp, "x y^-1", ["x y^-1", "y"])
    assert stralg.string_count(m, gp, "x y^-1") == count == 1
    assert density == Fraction(1, 5)
    # pp dimension of the free formula is t
    assert stralg.pp_dim(m, gp, "[[0]]", t=1) == 1


def test_ball_stats(gp):
    freq = stralg.ball_stats(gp, ["x y^-1 x", "y"], radius=1)
    assert sum(freq.values()) == 1
    sampled, eps = stralg.ball_stats_sampled(gp, ["x y^-1 x"], radius=1, samples=50, seed=3)
    assert sum(sampled.values()) == 1
    assert eps > 0


def test_tilings(gp):
    m = stralg.Module.string_module(gp, " ".join(["x y^-1"] * 30).strip())
    tilings = stralg.tile(m, Fraction(1, 3))
    assert all(t["verified"] for t in tilings)
    jordan = stralg.tile_jordan(2, 1, [1, 1], 20, Fraction(1, 2))
    assert jordan["verified"]


def test_epsilon_isomorphism(gp):
    m = stralg.random_string_sum(gp, seed=5, dim_cap=40)
    cert = stralg.epsilon_isomorphism(m, m, Fraction(1, 100))
    assert cert is not None and cert["verified"]
    x = stralg.Module.string_module(gp, "x").power(4)
    y = stralg.Module.string_module(gp, "y").power(4)
    assert stralg.epsilon_isomorphism(x, y, Fraction(1, 2)) is None


def test_parameters_and_tester(gp):
    m = stralg.Module.string_module(gp, "x")
    assert stralg.gen_number(m.power(2)) == 2
    label = m.components[0]
    assert stralg.weight(m.power(3), label) == 1
    out = stralg.build_and_run_tester(gp, "g", m.power(4), Fraction(1, 16), 3, 5)
    assert out["ok"]
    assert out["value"] == Fraction(1, 2)


def test_cli_payloads_match_shipped_schemas(tmp_path):
    cli = os.environ.get("STRALG_CLI")
    if not cli:
        pytest.skip("STRALG_CLI not set")
    jsonschema = pytest.importorskip("jsonschema")

    alg = tmp_path / "gp.alg"
    alg.write_text(GP)
    mod = tmp_path / "m.mod"
    mod.write_text("string: x y^-1\nstring: x\n")
    words = tmp_path / "w.txt"
    words.write_text("x y^-1 x\ny\n")

    def run(*args):
        return subprocess.run([cli, *args], check=True, capture_output=True, text=True).stdout

    for schema_name, payload in [
        ("profile", run("rank", str(alg), str(mod))),
        ("stats", run("stats", str(alg), str(words), "-r", "2")),
    ]:
        schema = json.loads(run("--schema", schema_name))
        jsonschema.validate(json.loads(payload), schema)

    tilings = json.loads(run("tile", str(alg), str(mod), "--eps", "1/3"))
    schema = json.loads(run("--schema", "tiling"))
    for t in tilings:
        jsonschema.validate(t, schema)
        assert t["verified"]

    bundle = json.loads(run("test", str(alg), "--module", str(mod), "--kind", "g"))
    jsonschema.validate(bundle["bundle"], json.loads(run("--schema", "tester")))
