import os
import subprocess
from fractions import Fraction

import pytest

lp = pytest.importorskip("lpcurves")


def test_interval_measure_and_gaps():
    assert lp.measure([(0, Fraction(1, 2)), (Fraction(1, 4), 1)]) == 1
    assert lp.locate_gap(1, Fraction(1, 2)) == (1, Fraction(15, 32), Fraction(17, 32))
    assert lp.locate_gap(1, 0) is None


def test_curve1_values_and_norms():
    value, tail = lp.eval1(0, 0.5)
    assert value == 0.0
    assert tail == pytest.approx(2.0**-12 / 3)
    t = Fraction(1, 2)
    n = 20000
    xs = [(k + 0.5) / n for k in range(n)]
    riemann = sum(lp.slice1(t, xs, depth=1)) / n
    assert lp.norm1(1, t) == pytest.approx(riemann, abs=1e-9)
    assert lp.norm1(1, t) <= 0.25
    assert lp.distance1(t, t) == 0.0
    x = 0.49
    h = 1e-6
    fd = (lp.eval1(t, x + h, depth=1)[0] - lp.eval1(t, x - h, depth=1)[0]) / (2 * h)
    assert lp.dx1(t, x, depth=1) == pytest.approx(fd, abs=1e-6)


def test_curve1_witness():
    eps, pts = lp.witness1(0, blocks=2)
    assert eps == pytest.approx(1 / 24)
    assert all(isinstance(t, Fraction) and 0 < t < 1 for t, _, _ in pts)
    assert {role for _, _, role in pts} <= {"r", "tau", "s"}


def test_curve2():
    assert [lp.q(m) for m in range(1, 5)] == [1, Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)]
    stages = lp.witness2([(0, 1)], Fraction(1, 2), stages=2)
    assert [s["covered_measure"] for s in stages] == [Fraction(3, 4), Fraction(7, 8)]
    for s in stages:
        assert s["certified"]
        assert s["covered_measure"] >= s["certificate_bound"]
        for first, step, count in s["runs"]:
            assert 0 <= first <= 1 and 0 <= first + step * (count - 1) <= 1
    assert lp.eval2(Fraction(7, 12), Fraction(1, 2), max_m=1) == 2.0


def test_analysis():
    xs = [(k + 0.5) / 100 for k in range(100)]
    assert lp.oscillation(xs, xs, 0.1) == pytest.approx(0.1, abs=0.011)
    assert lp.cauchy_certificate([0, 1, 0, 1], 0.5) is not None
    assert lp.cauchy_certificate([1, 1, 1], 0.0) is None

    rows = 64
    bad = {3, 30}
    omega = [[1.0 if a in bad else 1.0 / n for n in range(1, 33)] for a in range(rows)]
    res = lp.egorov_extract([(a + 0.5) / rows for a in range(rows)], list(range(1, 33)), omega, 0.2, steps=3)
    assert set(range(rows)) - set(res["retained"]) == bad

    g = [(k + 0.5) / 64 for k in range(64)]
    res = lp.lusin_slice(g, g, [[a * b for b in g] for a in g], 0.1)
    assert res["removed_measure"] < 0.1
    assert res["hypothesis_failure"] is None
    assert res["joint_modulus"] <= 2 / 64 + 1e-12

    assert abs(lp.fourier1(0, 0)) == 0.0
    assert len(lp.table1([0, Fraction(1, 2)], [0.25, 0.75], depth=1)) == 2
    assert lp.sampled_modulus(Fraction(1, 2), Fraction(1, 1000)) >= 0


def test_errors():
    with pytest.raises(ValueError):
        lp.eval1(Fraction(3, 2), 0.5)
    with pytest.raises(ValueError):
        lp.eval1("one", 0.5)
    with pytest.raises(RuntimeError):
        lp.lusin_slice([0.1, 0.2], [0.1, 0.2], [[0, 0], [0, 0]], 0.1)


@pytest.mark.skipif("LPCURVES_CLI" not in os.environ, reason="CLI path not given")
def test_cli_matches_binding():
    out = subprocess.run([os.environ["LPCURVES_CLI"], "eval1", "--t", "1/2", "--x", "0.49", "--depth", "1"],
                         check=True, capture_output=True, text=True).stdout
    assert out.startswith("# lpcurves eval1\n")
    row = [line for line in out.splitlines() if line.startswith("1/2,")][0]
    assert float(row.split(",")[2]) == lp.eval1(Fraction(1, 2), 0.49, depth=1)[0]
