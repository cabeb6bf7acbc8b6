import numpy as np
import pytest
from helpers import DYADIC, elements, finite_orders
from hypothesis import given, settings
from hypothesis import strategies as st

from fullgroup.element import Element, validate
from fullgroup.errors import InvariantError
from fullgroup.orbits import orbit_numbers
from fullgroup.oracle import compare_with_analysis, deep_refine_check, simulate_line

g = Element.generator(DYADIC)
f = validate(DYADIC, 1, [1, -1])
h = validate(DYADIC, 1, [3, -1])
hhp = validate(DYADIC, 1, [-2, 6])
v = validate(DYADIC, 2, [2, 2, 2, -2])


def test_simulate_h():
    stats = simulate_line(h, 1000)
    assert np.all(stats.drift[stats.interior] == 1)
    assert stats.orbit_counts() == (1, 0)
    assert stats.mean_cocycle == pytest.approx(1.0, abs=0.01)


def test_simulate_f():
    stats = simulate_line(f, 100)
    assert np.all(stats.period[stats.interior] == 2)
    assert np.all(stats.drift[stats.interior] == 0)
    assert stats.orbit_counts() == (0, 0)


def test_simulate_hhp():
    assert simulate_line(hhp, 1000).orbit_counts() == (3, 1)


def test_simulate_rejects_small_windows():
    with pytest.raises(ValueError):
        simulate_line(h, 1)
    with pytest.raises(ValueError):
        simulate_line(hhp, 30)


@pytest.mark.parametrize("elem", [g, f, h, hhp, v, g ** 2, ~g])
def test_compare_examples(elem):
    assert compare_with_analysis(elem, 2000) == []


def test_deep_refine_examples():
    assert deep_refine_check(g ** 2, 3)["components"] == ["[0]", "[1]"]
    rep = deep_refine_check(h, 4)
    assert rep["components"] == ["X"] and rep["positive"] == 1
    rep = deep_refine_check(v, 2)
    assert rep["components"] == ["[0]"] and rep["positive"] == 1
    assert rep["periodic"] == 4  # X_p(2) = [1] holds 8 depth-4 codes
    with pytest.raises(ValueError):
        deep_refine_check(h, 0)


def test_orbit_counts_must_agree_between_blocks():
    stats = simulate_line(h, 1000)
    stats.block_counts = [(1, 0), (2, 0)]
    with pytest.raises(InvariantError):
        stats.orbit_counts()


# properties


@settings(max_examples=25)
@given(elements(max_size=16, spread=2))
def test_oracle_agrees_with_analysis(a):
    N = max(200, 6 * a.size * max(1, a.norm()))
    assert compare_with_analysis(a, N) == []


@settings(max_examples=25)
@given(elements(max_size=16, spread=2))
def test_oracle_counts_are_orbit_numbers(a):
    N = max(200, 6 * a.size * max(1, a.norm()))
    assert simulate_line(a, N).orbit_counts() == orbit_numbers(a)


@given(finite_orders())
def test_finite_order_has_no_drift(a):
    N = max(200, 6 * a.size * max(1, a.norm()))
    stats = simulate_line(a, N)
    assert np.all(stats.drift[stats.interior] == 0)


@given(elements(), st.integers(1, 3))
def test_deep_refine_never_fails(a, extra):
    assert deep_refine_check(a, extra)["ok"]
