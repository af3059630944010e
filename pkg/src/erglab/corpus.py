"""Seeded generators for random systems, partitions and observables."""

from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction

from .dynamics import (
    CommutingSystem,
    disjoint_union,
    group_orbit_partition,
    product_system,
    rotation_system,
    validate_system,
)
from .measure import Observable, Partition, WeightedSpace, make_space


def random_rational(rng: random.Random, lo, hi, denom: int = 12) -> Fraction:
    lo, hi = Fraction(lo), Fraction(hi)
    q = rng.randint(1, denom)
    a, b = int(lo * q) - 1, int(hi * q) + 1
    while True:
        v = Fraction(rng.randint(a, b), q)
        if lo <= v <= hi:
            return v


def random_weights(rng: random.Random, m: int) -> list:
    raw = [rng.randint(1, 9) for _ in range(m)]
    total = sum(raw)
    return [Fraction(r, total) for r in raw]


def random_space(rng: random.Random, max_points: int = 10) -> WeightedSpace:
    return make_space(random_weights(rng, rng.randint(1, max_points)))


def random_partition(rng: random.Random, space: WeightedSpace) -> Partition:
    nblocks = rng.randint(1, len(space))
    return Partition.from_labels(space, [rng.randrange(nblocks) for _ in range(len(space))])


def random_observable(rng: random.Random, space: WeightedSpace, lo=0, hi=1) -> Observable:
    return Observable(space, tuple(random_rational(rng, lo, hi) for _ in range(len(space))))


def random_commuting_system(rng: random.Random, max_points: int = 8, name: str = "") -> CommutingSystem:
    """Disjoint union of ``Z_a x Z_b`` blocks with random translation pairs, randomly relabelled.

    Weights are random per joint orbit and uniform inside it.
    """
    total = rng.randint(1, max_points)
    fwd1, fwd2 = [], []
    offset = 0
    remaining = total
    while remaining:
        size = rng.randint(1, remaining)
        a = rng.choice([d for d in range(1, size + 1) if size % d == 0])
        b = size // a
        u1, v1, u2, v2 = rng.randrange(a), rng.randrange(b), rng.randrange(a), rng.randrange(b)
        for x in range(a):
            for y in range(b):
                fwd1.append(offset + ((x + u1) % a) * b + (y + v1) % b)
                fwd2.append(offset + ((x + u2) % a) * b + (y + v2) % b)
        offset += size
        remaining -= size
    relabel = list(range(total))
    rng.shuffle(relabel)
    t1, t2 = [0] * total, [0] * total
    for i in range(total):
        t1[relabel[i]] = relabel[fwd1[i]]
        t2[relabel[i]] = relabel[fwd2[i]]
    uniform = WeightedSpace(tuple(range(total)), (Fraction(1, total),) * total)
    orbits = group_orbit_partition(validate_system(uniform, t1, t2)).blocks
    raw = {}
    for block in orbits:
        r = rng.randint(1, 5)
        for i in block:
            raw[i] = Fraction(r, len(block))
    norm = sum(raw.values())
    space = WeightedSpace(tuple(range(total)), tuple(raw[i] / norm for i in range(total)))
    return validate_system(space, t1, t2, name or f"random{total}")


def identity_system(m: int) -> CommutingSystem:
    space = make_space([Fraction(1, m)] * m)
    return validate_system(space, range(m), range(m), f"id{m}")


def standard_corpus(seed: int = 2024, random_count: int = 20, max_points: int = 8) -> list:
    """Named test systems on at most ``max_points`` points, reproducible from ``seed``."""
    z2, z3 = rotation_system(2, 1, 1), rotation_system(3, 1, 1)
    fixed = [
        validate_system(make_space([1]), [0], [0], "point"),
        rotation_system(3, 1, 1),
        replace(product_system(z2, z3, "split"), name="Z2xZ3"),
        identity_system(3),
        rotation_system(6, 2, 3),
        rotation_system(5, 1, 2),
        rotation_system(4, 1, 3),
        product_system(rotation_system(2, 1, 0), rotation_system(2, 0, 1), "split"),
        disjoint_union(z3, rotation_system(3, 1, 2), Fraction(1, 3)),
        disjoint_union(z2, identity_system(2), Fraction(2, 5)),
    ]
    rng = random.Random(seed)
    randoms = [random_commuting_system(rng, max_points, f"random-{k}") for k in range(random_count)]
    return fixed + randoms
