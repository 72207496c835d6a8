import os
import subprocess
from fractions import Fraction
import math
import random

import pytest

import ffpm


def test_field_ops():
    f = ffpm.Field(4)
    assert (f.q, f.p, f.r) == (4, 2, 2)
    assert f.mul(2, 2) == 3
    assert f.inv(2) == 3
    assert f.add(2, 3) == 1
    assert f.format(2) == "0,1"
    assert f.parse("1,1") == 3
    assert f.elements() == [0, 1, 2, 3]
    g = ffpm.Field.from_spec("p=3 r=2 modulus=1,0,1")
    assert g.q == 9
    with pytest.raises(ffpm.Error):
        ffpm.Field.from_spec("p=2 r=2 modulus=1,0,1")


def test_constants():
    assert ffpm.digit_sum(3, 2) == 2
    assert math.isclose(ffpm.c_main(3, 2), 1 / (72 * math.log(2)), rel_tol=1e-12)
    assert ffpm.c_prime(3, 2) <= ffpm.c_main(3, 2)
    assert math.isclose(ffpm.hoeffding_bound(2, 4, 2, 2), 32 * math.exp(-0.125), rel_tol=1e-12)


def test_exact_tail():
    assert ffpm.exact_tail(2, 2, 1) == Fraction(3, 4)
    assert ffpm.exact_tail(2, 4, Fraction(3, 2)) == Fraction(5, 16)
    assert ffpm.count_at_most(2, 4, 1) == 5


def test_transform_round_trip():
    f = ffpm.Field(3)
    rng = random.Random(1)
    values = [rng.randrange(3) for _ in range(27)]
    terms = ffpm.analyze(f, 3, values)
    assert ffpm.analyze(f, 3, values, direct=True) == terms
    assert ffpm.synthesize(f, 3, terms) == values
    assert ffpm.analyze(f, 1, [1, 0, 0]) == [([0], 1), ([2], 2)]


def test_power_map_and_witness():
    f = ffpm.Field(2)
    phi = ffpm.PolynomialMap.power(f, 4, 3)
    assert phi.source_arity == 2
    assert phi.degree == 2
    assert len(phi.image()) == 4
    w = ffpm.build_witness(phi)
    assert w["all_hold"]
    assert w["degree_bound"] == Fraction(3)
    assert w["degree"] <= 3
    bad = ffpm.PolynomialMap.composed(f, 3, [0, 1, 1])
    with pytest.raises(ffpm.HypothesisError, match="fiber count at 0 = 2"):
        ffpm.build_witness(bad)
    again = ffpm.PolynomialMap.parse(phi.format())
    assert again.components() == phi.components()


def test_search_and_rank():
    f = ffpm.Field(3)
    phi = ffpm.PolynomialMap.power(f, 4, 2)
    r = ffpm.search(phi)
    assert r["optimal"] and r["avoiding"]
    g = ffpm.search(phi, mode="greedy", seed=3)
    assert g["best_size"] <= r["best_size"]
    cert = ffpm.rank_certificate(phi, r["best_set"])
    assert cert["rank"] == r["best_size"]
    assert cert["rank"] <= cert["bound"]


def test_cli():
    exe = os.environ.get("FFS_BIN")
    if not exe:
        pytest.skip("FFS_BIN not set")
    out = subprocess.run([exe, "--machine", "bound", "-q", "2", "-n", "4", "-k", "3"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "D=2" in out.stdout.splitlines()
    assert subprocess.run([exe, "bound", "-q", "1", "-n", "4", "-k", "3"],
                          capture_output=True).returncode == 2
