import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erglab.corpus import random_commuting_system, random_observable
from erglab.dynamics import disjoint_union, rotation_system
from erglab.errors import NotErgodic, ObservableOutOfRange
from erglab.fuzz import brute_force_hits
from erglab.measure import Observable
from erglab.recurrence import (
    cesaro_bound_check,
    cyclic_max_gap,
    diff_bound_check,
    j0_lower_bound_check,
    multi_corr,
    product_rotation_khintchine3,
    recurrence_set,
)
from erglab.box import seminorm4

F = Fraction


def test_cyclic_max_gap():
    assert cyclic_max_gap([0], 5) == 5
    assert cyclic_max_gap([0, 1, 3], 6) == 3
    assert cyclic_max_gap([], 4) is None


def test_singleton_in_z3(z3):
    rep = recurrence_set(z3, [0], 4, F(1, 162))
    assert rep.values == (F(1, 3), 0, 0)
    assert rep.threshold == F(1, 81) - F(1, 162)
    assert rep.hits == (0,) and rep.max_gap == 3 and rep.syndetic


def test_hits_match_brute_force(z2z3):
    labels = [z2z3.space.points[i] for i in (0, 1, 4)]
    rep = recurrence_set(z2z3, labels, 4, F(1, 32))
    assert list(rep.hits) == brute_force_hits(z2z3, [0, 1, 4], rep.threshold)


def test_horizon_truncates_report(z2z3):
    rep = recurrence_set(z2z3, [(0, 0)], 4, F(1, 2000), horizon=2)
    assert len(rep.values) == 2 and rep.syndetic


def test_nonergodic_requires_flag():
    u = disjoint_union(rotation_system(2, 1, 1), rotation_system(2, 1, 1), F(1, 2))
    with pytest.raises(NotErgodic):
        recurrence_set(u, [(0, 0)], 4, F(1, 100))
    with warnings.catch_warnings(record=True):
        warnings.simplefilter("always")
        rep = recurrence_set(u, [(0, 0)], 4, F(1, 100), allow_nonergodic=True)
    assert not rep.ergodic


def test_multi_corr_sign_convention():
    # I_n(1_A, 1_A, 1_A) = mu(A & T1^-n A & T2^-n A)
    s = rotation_system(5, 1, 2)
    a = Observable.indicator(s.space, [0, 1, 3])
    for n in range(5):
        direct = sum(F(1, 5) for x in (0, 1, 3) if (x + n) % 5 in (0, 1, 3) and (x + 2 * n) % 5 in (0, 1, 3))
        assert multi_corr(s, a, a, a, n) == direct


def test_cesaro_pairing_regression():
    # Z3 with T1 = id, T2 = +2: the average of I_n is -1, while the
    # (T2, T3) seminorm of f1 is only 11/27 and cannot bound it
    s = rotation_system(3, 0, 2)
    f0 = Observable(s.space, [-1, 1, -1])
    f1 = Observable(s.space, [1, -1, 1])
    f2 = Observable.constant(s.space, 1)
    assert seminorm4(f1, s.with_pair("T2", "T3")).fourth_power == F(11, 27)
    check = cesaro_bound_check(s, f0, f1, f2)
    assert check.average4 == 1
    assert check.holds


def test_cesaro_nonzero_frequency(z3):
    f = Observable(z3.space, [1, 0, F(1, 2)])
    check = cesaro_bound_check(z3, f, f, f, F(1, 3))
    assert check.holds


def test_cesaro_rejects_unbounded(z3):
    f = Observable(z3.space, [2, 0, 0])
    with pytest.raises(ObservableOutOfRange):
        cesaro_bound_check(z3, f, f, f)


def test_j0_and_diff_on_examples(z3, z2z3):
    for s in (z3, z2z3):
        f = Observable.indicator(s.space, [0, 1])
        assert j0_lower_bound_check(s, f).holds
        assert diff_bound_check(s, f).holds


def test_product_rotation_exponent3():
    res = product_rotation_khintchine3(4, 6, [(0, 0)], F(1, 2) * F(1, 24) ** 3)
    assert res.common_factor == 2
    assert res.report.syndetic
    assert res.i0_check.lhs >= res.i0_check.rhs == F(1, 24) ** 3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_bounds_on_random_systems(seed):
    import random

    rng = random.Random(seed)
    s = random_commuting_system(rng, 6)
    f = random_observable(rng, s.space, 0, 1)
    g = [random_observable(rng, s.space, -1, 1) for _ in range(3)]
    assert cesaro_bound_check(s, *g).holds
    assert j0_lower_bound_check(s, f).holds
    assert diff_bound_check(s, f).holds
