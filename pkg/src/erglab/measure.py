"""Finite probability spaces with exact rational weights.

A sub-sigma-algebra of a finite space is always generated by its atoms, so
it is stored as a :class:`Partition`.  Observables are total maps from the
points of a space to :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    NegativeObservable,
    NonPositiveWeight,
    SpaceMismatch,
    WeightsDontSumToOne,
)


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class WeightedSpace:
    points: tuple
    weights: tuple

    def __post_init__(self):
        weights = tuple(as_fraction(w) for w in self.weights)
        points = tuple(self.points)
        if not points:
            raise ValueError("a space needs at least one point")
        if len(points) != len(weights):
            raise ValueError("points and weights differ in length")
        if len(set(points)) != len(points):
            raise ValueError("point identifiers must be distinct")
        for w in weights:
            if w <= 0:
                raise NonPositiveWeight(w)
        total = sum(weights, Fraction(0))
        if total != 1:
            raise WeightsDontSumToOne(total)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.points)

    @cached_property
    def index(self) -> dict:
        return {p: i for i, p in enumerate(self.points)}

    def mass(self, indices: Iterable[int]) -> Fraction:
        return sum((self.weights[i] for i in indices), Fraction(0))

    def is_uniform(self) -> bool:
        return len(set(self.weights)) == 1


def make_space(weights: Sequence, points: Sequence | None = None) -> WeightedSpace:
    """Build a space from exact weights; points default to ``0..m-1``."""
    weights = [as_fraction(w) for w in weights]
    if not weights:
        raise ValueError("weights must be nonempty")
    if points is None:
        points = range(len(weights))
    return WeightedSpace(tuple(points), tuple(weights))


def uniform_space(m: int, points: Sequence | None = None) -> WeightedSpace:
    return make_space([Fraction(1, m)] * m, points)


def check_same_space(*spaces: WeightedSpace) -> None:
    first = spaces[0]
    for other in spaces[1:]:
        if other is not first and other != first:
            raise SpaceMismatch("objects live on different spaces")


@dataclass(frozen=True)
class Partition:
    """Partition of a space into blocks of point indices.

    Blocks are canonically ordered by their smallest index, and each block is
    a sorted tuple, so two partitions are equal iff they have the same atoms.
    """

    space: WeightedSpace
    blocks: tuple
    block_of: tuple = field(repr=False, compare=False)

    @classmethod
    def from_labels(cls, space: WeightedSpace, labels: Sequence) -> "Partition":
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls.from_blocks(space, groups.values())

    @classmethod
    def from_blocks(cls, space: WeightedSpace, blocks: Iterable[Iterable[int]]) -> "Partition":
        blocks = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else -1)
        block_of = [None] * len(space)
        for k, b in enumerate(blocks):
            if not b:
                raise ValueError("blocks must be nonempty")
            for i in b:
                if block_of[i] is not None:
                    raise ValueError(f"point index {i} appears in two blocks")
                block_of[i] = k
        if any(k is None for k in block_of):
            raise ValueError("blocks do not cover the space")
        return cls(space, tuple(blocks), tuple(block_of))

    @classmethod
    def trivial(cls, space: WeightedSpace) -> "Partition":
        return cls.from_blocks(space, [range(len(space))])

    @classmethod
    def discrete(cls, space: WeightedSpace) -> "Partition":
        return cls.from_blocks(space, [[i] for i in range(len(space))])

    def __len__(self):
        return len(self.blocks)

    def is_discrete(self) -> bool:
        return len(self.blocks) == len(self.space)

    def is_trivial(self) -> bool:
        return len(self.blocks) == 1

    def refines(self, other: "Partition") -> bool:
        """True when every block of ``self`` lies inside a block of ``other``."""
        check_same_space(self.space, other.space)
        return all(len({other.block_of[i] for i in b}) == 1 for b in self.blocks)

    def labelled_blocks(self) -> list:
        pts = self.space.points
        return [[pts[i] for i in b] for b in self.blocks]


def join_partitions(p: Partition, q: Partition) -> Partition:
    """Common refinement of two partitions (the sigma-algebra join)."""
    check_same_space(p.space, q.space)
    return Partition.from_labels(p.space, list(zip(p.block_of, q.block_of)))


def join_all(parts: Sequence[Partition]) -> Partition:
    result = parts[0]
    for q in parts[1:]:
        result = join_partitions(result, q)
    return result


def meet_partitions(p: Partition, q: Partition) -> Partition:
    """Finest common coarsening (the sigma-algebra intersection)."""
    check_same_space(p.space, q.space)
    parent = list(range(len(p.space)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for part in (p, q):
        for b in part.blocks:
            r = find(b[0])
            for i in b[1:]:
                parent[find(i)] = r
    return Partition.from_labels(p.space, [find(i) for i in range(len(p.space))])


@dataclass(frozen=True)
class Observable:
    space: WeightedSpace
    values: tuple

    def __post_init__(self):
        values = tuple(as_fraction(v) for v in self.values)
        if len(values) != len(self.space):
            raise ValueError(
                f"observable has {len(values)} values for a space of {len(self.space)} points"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, space: WeightedSpace, c) -> "Observable":
        return cls(space, (as_fraction(c),) * len(space))

    @classmethod
    def indicator(cls, space: WeightedSpace, indices: Iterable[int]) -> "Observable":
        s = set(indices)
        return cls(space, tuple(Fraction(int(i in s)) for i in range(len(space))))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def at(self, point) -> Fraction:
        return self.values[self.space.index[point]]

    def _binary(self, other, op):
        if isinstance(other, Observable):
            check_same_space(self.space, other.space)
            return Observable(self.space, tuple(op(a, b) for a, b in zip(self.values, other.values)))
        c = as_fraction(other)
        return Observable(self.space, tuple(op(a, c) for a in self.values))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return Observable(self.space, tuple(-a for a in self.values))

    def __pow__(self, k: int):
        return Observable(self.space, tuple(a**k for a in self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def minimum(self) -> Fraction:
        return min(self.values)

    def maximum(self) -> Fraction:
        return max(self.values)


def integrate(f: Observable) -> Fraction:
    return sum((v * w for v, w in zip(f.values, f.space.weights)), Fraction(0))


def cond_exp(f: Observable, part: Partition) -> Observable:
    """Atom-wise weighted average of ``f`` over the blocks of ``part``."""
    check_same_space(f.space, part.space)
    w = f.space.weights
    out = [None] * len(f)
    for block in part.blocks:
        mass = sum((w[i] for i in block), Fraction(0))
        avg = sum((f.values[i] * w[i] for i in block), Fraction(0)) / mass
        for i in block:
            out[i] = avg
    return Observable(f.space, tuple(out))


@dataclass(frozen=True)
class HolderCheck:
    lhs: Fraction
    rhs: Fraction
    holds: bool


def holder_product_bound(f: Observable, parts: Sequence[Partition]) -> HolderCheck:
    """Compare ``int f * prod E(f|P_i)`` with ``(int f)^(k+1)`` for ``f >= 0``."""
    if not parts:
        raise ValueError("need at least one partition")
    for p in parts:
        check_same_space(f.space, p.space)
    if any(v < 0 for v in f.values):
        raise NegativeObservable("f must be non-negative")
    product = f
    for p in parts:
        product = product * cond_exp(f, p)
    lhs = integrate(product)
    rhs = integrate(f) ** (len(parts) + 1)
    return HolderCheck(lhs, rhs, lhs >= rhs)
