from fractions import Fraction
from itertools import product

import pytest

from erglab.bernoulli import (
    BernoulliSpec,
    CylinderObservable,
    ShiftTerm,
    counterexample_hits,
    counterexample_measure,
    counterexample_power,
    counterexample_table,
    counterexample_value,
    exact_correlation,
)
from erglab.errors import OutOfRange, ZeroShift

F = Fraction


def oracle_value():
    """Direct sum of F(y0,z0,w0) F(y1,z0,w1) F(y0,z1,w1) over 3^6 letters."""
    f = counterexample_table().table
    hits = sum(
        f[(y0, z0, w0)] * f[(y1, z0, w1)] * f[(y0, z1, w1)]
        for y0, y1, z0, z1, w0, w1 in product(range(3), repeat=6)
    )
    return F(hits, 3**6)


def test_measure_of_set():
    assert sum(counterexample_table().table.values()) == 16
    assert counterexample_measure() == F(16, 27)


@pytest.mark.parametrize("n", [1, -1, 2, 5, -7, 40])
def test_value_is_constant_in_n(n):
    assert counterexample_value(n) == F(145, 729) == oracle_value()


def test_zero_shift_rejected():
    with pytest.raises(ZeroShift):
        counterexample_value(0)


def test_power_examples():
    assert counterexample_power(1).l == 1
    assert counterexample_power(F(96, 100)).l == 1
    assert counterexample_power(F(1, 2)).l == 16
    assert counterexample_power(F(1, 100)).l == 102
    with pytest.raises(OutOfRange):
        counterexample_power(0)


def test_hits_depend_on_epsilon():
    gap = counterexample_measure() ** 3 - F(145, 729)
    assert gap == F(181, 19683)
    assert counterexample_hits(gap / 2, 6) == [0]
    assert counterexample_hits(gap * 2, 3) == list(range(-3, 4))


def test_exact_correlation_independence():
    spec = BernoulliSpec.uniform(2, 1)
    x = CylinderObservable(((0,),), {(0,): 0, (1,): 1}, spec.alphabets)
    assert exact_correlation(spec, [ShiftTerm(x, (0,)), ShiftTerm(x, (3,))]) == F(1, 4)
    assert exact_correlation(spec, [ShiftTerm(x, (0,)), ShiftTerm(x, (0,))]) == F(1, 2)


def test_biased_spec():
    spec = BernoulliSpec(((F(1, 3), F(2, 3)),))
    x = CylinderObservable(((0, 1),), {(a, b): a * b for a in range(2) for b in range(2)}, spec.alphabets)
    assert exact_correlation(spec, [ShiftTerm(x, (0,))]) == F(4, 9)
    assert exact_correlation(spec, [ShiftTerm(x, (0,)), ShiftTerm(x, (1,))]) == F(8, 27)
