from fractions import Fraction

import pytest

from erglab.box import (
    box_measure,
    g_algebra,
    invariant_join,
    is_magic,
    kernel_basis,
    magic_extension,
    relative_square,
    seminorm4,
    seminorm4_by_averages,
    seminorm4_decomposed,
)
from erglab.dynamics import FactorMap, disjoint_union, lift_observable, product_system, rotation_system
from erglab.errors import SizeLimitExceeded
from erglab.measure import Observable, cond_exp, integrate

F = Fraction


def rotation_oracle(values):
    """avg over a, b, x of f(x) f(x+a) f(x+b) f(x+a+b) for Z_n under (+1, +1)."""
    n = len(values)
    total = F(0)
    for a in range(n):
        for b in range(n):
            total += sum(F(values[x]) * values[(x + a) % n] * values[(x + b) % n] * values[(x + a + b) % n]
                         for x in range(n))
    return total / n**3


def test_z3_indicator(z3):
    f = Observable.indicator(z3.space, [0])
    assert seminorm4(f, z3).fourth_power == F(1, 27)
    assert rotation_oracle([1, 0, 0]) == F(1, 27)


def test_identity_pair_is_l4(ident3):
    f = Observable(ident3.space, [1, 2, 0])
    assert seminorm4(f, ident3).fourth_power == F(17, 3)


def test_split_product_factorizes(z2z3):
    # f = g(x) h(y): the seminorm is (int g^2)^2 (int h^2)^2
    f = Observable.indicator(z2z3.space, [0])
    assert seminorm4(f, z2z3).fourth_power == F(1, 36)


def test_relative_square_marginals(z2z3):
    sq = relative_square(z2z3, "T1")
    assert sq.marginal(0, 6) == z2z3.space.weights
    assert sq.marginal(1, 6) == z2z3.space.weights


def test_box_measure_marginals_and_invariance(z3):
    box = box_measure(z3)
    assert box.total() == 1
    for coord in range(4):
        assert box.marginal(coord, 3) == z3.space.weights
    assert box.is_invariant(z3)


def test_box_size_guard():
    big = rotation_system(41, 1, 1)
    with pytest.raises(SizeLimitExceeded):
        box_measure(big)
    assert len(box_measure(big, max_points=41**3)) > 0


def test_is_magic_examples(z3, z2z3):
    assert is_magic(z2z3)
    verdict = is_magic(z3)
    assert not verdict
    assert cond_exp(verdict.witness, invariant_join(z3)).is_zero()
    assert verdict.witness_seminorm4 > 0


def test_kernel_basis_dimension(z3):
    basis = kernel_basis(invariant_join(z3))
    assert len(basis) == 2
    assert all(integrate(b) == 0 for b in basis)


def test_g_algebra_discrete(z3, z2z3):
    assert g_algebra(z3).is_discrete()
    assert g_algebra(z2z3).is_discrete()


def test_magic_extension_of_rotation(z3):
    ext, factor = magic_extension(z3)
    assert is_magic(ext)
    f = Observable(z3.space, [F(1, 2), 1, 0])
    assert seminorm4(lift_observable(f, factor), ext).fourth_power == seminorm4(f, z3).fourth_power


def test_magic_system_extension_by_rotation(z2z3):
    # a magic system and a non-trivial extension of it
    y = product_system(z2z3, rotation_system(3, 1, 1), "diagonal")
    factor = FactorMap.by_points(y, z2z3, lambda p: p[0])
    f = Observable(z2z3.space, [1, 0, 2, 0, 1, 1])
    assert seminorm4(lift_observable(f, factor), y) == seminorm4(f, z2z3)


def test_decomposition_additivity():
    u = disjoint_union(rotation_system(3, 1, 2), rotation_system(2, 1, 1), F(2, 5))
    f = Observable(u.space, [1, -1, 2, F(1, 2), 3])
    assert seminorm4_decomposed(f, u) == seminorm4(f, u).fourth_power
    assert seminorm4_by_averages(f, u) == seminorm4(f, u).fourth_power
