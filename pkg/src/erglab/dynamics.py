"""Commuting pairs of measure-preserving bijections on finite spaces.

Convention: a transformation acts on observables by composition,
``(T^n f)(x) = f(T^n x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Sequence

from .errors import DoesNotCommute, NotAFactorMap, NotBijective, NotMeasurePreserving
from .measure import Observable, Partition, WeightedSpace, check_same_space, uniform_space

WHICH = ("T1", "T2", "T3")
PAIRINGS = ("split", "diagonal")


@dataclass(frozen=True)
class Transformation:
    forward: tuple
    inverse: tuple

    def __post_init__(self):
        fwd, inv = tuple(self.forward), tuple(self.inverse)
        m = len(fwd)
        if len(inv) != m or sorted(fwd) != list(range(m)):
            raise NotBijective("forward map is not a permutation of the point indices")
        if any(inv[fwd[i]] != i for i in range(m)) or any(fwd[inv[i]] != i for i in range(m)):
            raise NotBijective("inverse does not invert forward")
        object.__setattr__(self, "forward", fwd)
        object.__setattr__(self, "inverse", inv)

    @classmethod
    def from_forward(cls, forward: Sequence[int]) -> "Transformation":
        forward = tuple(forward)
        m = len(forward)
        if sorted(forward) != list(range(m)):
            raise NotBijective("forward map is not a permutation of the point indices")
        inverse = [0] * m
        for i, j in enumerate(forward):
            inverse[j] = i
        return cls(forward, tuple(inverse))

    @classmethod
    def identity(cls, m: int) -> "Transformation":
        ident = tuple(range(m))
        return cls(ident, ident)

    def __len__(self):
        return len(self.forward)

    def __call__(self, i: int) -> int:
        return self.forward[i]

    def inv(self) -> "Transformation":
        return Transformation(self.inverse, self.forward)

    def compose(self, other: "Transformation") -> "Transformation":
        """``self o other``: apply ``other`` first."""
        return Transformation(
            tuple(self.forward[j] for j in other.forward),
            tuple(other.inverse[j] for j in self.inverse),
        )

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.forward))

    @cached_property
    def cycles(self) -> tuple:
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.forward[i]
            out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles))

    def power(self, n: int) -> tuple:
        """Forward table of ``T^n`` (``n`` may be negative)."""
        out = [0] * len(self)
        for cyc in self.cycles:
            k = len(cyc)
            for pos, i in enumerate(cyc):
                out[i] = cyc[(pos + n) % k]
        return tuple(out)


@dataclass(frozen=True)
class CommutingSystem:
    space: WeightedSpace
    t1: Transformation
    t2: Transformation
    name: str = ""

    @cached_property
    def t3(self) -> Transformation:
        return self.t1.compose(self.t2.inv())

    def __len__(self):
        return len(self.space)

    def transformation(self, which: str) -> Transformation:
        if which not in WHICH:
            raise ValueError(f"unknown transformation {which!r}")
        return getattr(self, which.lower())

    @cached_property
    def period(self) -> int:
        """Common period of ``n -> (T1^n, T2^n)``."""
        return lcm(self.t1.order, self.t2.order)

    def with_pair(self, first: str, second: str) -> "CommutingSystem":
        """Same space, generators replaced by two of ``T1, T2, T3`` (inverses via a ``^-1`` suffix)."""
        return CommutingSystem(self.space, self._named(first), self._named(second), self.name)

    def _named(self, spec: str) -> Transformation:
        if spec.endswith("^-1"):
            return self.transformation(spec[:-3]).inv()
        return self.transformation(spec)

    def swapped(self) -> "CommutingSystem":
        return CommutingSystem(self.space, self.t2, self.t1, self.name)


def _as_transformation(t) -> Transformation:
    if isinstance(t, Transformation):
        return t
    return Transformation.from_forward(t)


def validate_system(space: WeightedSpace, t1, t2, name: str = "") -> CommutingSystem:
    t1, t2 = _as_transformation(t1), _as_transformation(t2)
    m = len(space)
    if len(t1) != m or len(t2) != m:
        raise NotBijective("transformation size does not match the space")
    w = space.weights
    for t in (t1, t2):
        for i in range(m):
            if w[t.forward[i]] != w[i]:
                raise NotMeasurePreserving(space.points[i])
    for i in range(m):
        if t1.forward[t2.forward[i]] != t2.forward[t1.forward[i]]:
            raise DoesNotCommute(space.points[i])
    return CommutingSystem(space, t1, t2, name)


def invariant_partition(sys: CommutingSystem, which: str = "T1") -> Partition:
    """Orbit partition of one transformation: the atoms of its invariant sigma-algebra."""
    return Partition.from_blocks(sys.space, sys.transformation(which).cycles)


def group_orbit_partition(sys: CommutingSystem) -> Partition:
    m = len(sys)
    label = [-1] * m
    for start in range(m):
        if label[start] >= 0:
            continue
        label[start] = start
        stack = [start]
        while stack:
            i = stack.pop()
            for j in (sys.t1.forward[i], sys.t2.forward[i]):
                if label[j] < 0:
                    label[j] = start
                    stack.append(j)
    return Partition.from_labels(sys.space, label)


def is_ergodic(sys: CommutingSystem) -> bool:
    return group_orbit_partition(sys).is_trivial()


def restrict_system(sys: CommutingSystem, support: Sequence[int], name: str = "") -> CommutingSystem:
    """Restriction to an invariant subset with the renormalized measure."""
    support = sorted(support)
    pos = {i: k for k, i in enumerate(support)}
    total = sys.space.mass(support)
    space = WeightedSpace(
        tuple(sys.space.points[i] for i in support),
        tuple(sys.space.weights[i] / total for i in support),
    )
    try:
        t1 = [pos[sys.t1.forward[i]] for i in support]
        t2 = [pos[sys.t2.forward[i]] for i in support]
    except KeyError:
        raise ValueError("support is not invariant under t1 and t2") from None
    return CommutingSystem(space, Transformation.from_forward(t1), Transformation.from_forward(t2), name)


@dataclass(frozen=True)
class ErgodicComponent:
    index: int
    support: tuple
    mass: Fraction
    system: CommutingSystem

    @property
    def measure(self) -> dict:
        return dict(zip(self.system.space.points, self.system.space.weights))

    def restrict(self, f: Observable) -> Observable:
        return Observable(self.system.space, tuple(f.values[i] for i in self.support))


def ergodic_components(sys: CommutingSystem) -> list:
    comps = []
    for k, block in enumerate(group_orbit_partition(sys).blocks):
        comps.append(
            ErgodicComponent(k, block, sys.space.mass(block), restrict_system(sys, block, f"{sys.name}[{k}]"))
        )
    return comps


def product_system(a: CommutingSystem, b: CommutingSystem, pairing: str = "split") -> CommutingSystem:
    """Cartesian product with multiplied weights.

    ``split`` acts by ``(T1 x id, id x T2)``, ``diagonal`` by ``(T1 x T1, T2 x T2)``.
    """
    if pairing not in PAIRINGS:
        raise ValueError(f"pairing must be one of {PAIRINGS}")
    nb = len(b)
    space = WeightedSpace(
        tuple((p, q) for p in a.space.points for q in b.space.points),
        tuple(u * v for u in a.space.weights for v in b.space.weights),
    )
    ident_a, ident_b = Transformation.identity(len(a)), Transformation.identity(nb)

    def cross(s: Transformation, t: Transformation):
        return [s.forward[i] * nb + t.forward[j] for i in range(len(a)) for j in range(nb)]

    if pairing == "split":
        t1, t2 = cross(a.t1, ident_b), cross(ident_a, b.t2)
    else:
        t1, t2 = cross(a.t1, b.t1), cross(a.t2, b.t2)
    name = f"({a.name or 'A'})x({b.name or 'B'})"
    return validate_system(space, t1, t2, name)


def power_system(sys: CommutingSystem, l: int) -> CommutingSystem:
    """``l``-fold self-product with the diagonal action; points are ``l``-tuples."""
    if l < 1:
        raise ValueError("l must be positive")
    result = sys
    for _ in range(l - 1):
        result = product_system(result, sys, "diagonal")
    if l == 1:
        return sys
    # flatten nested pairs ((a, b), c) -> (a, b, c)
    def flat(p, depth):
        return (p,) if depth == 1 else flat(p[0], depth - 1) + (p[1],)

    space = WeightedSpace(tuple(flat(p, l) for p in result.space.points), result.space.weights)
    return CommutingSystem(space, result.t1, result.t2, f"{sys.name or 'X'}^{l}")


def rotation_system(n: int, a1: int, a2: int) -> CommutingSystem:
    if n < 1:
        raise ValueError("N must be positive")
    space = uniform_space(n)
    t1 = [(x + a1) % n for x in range(n)]
    t2 = [(x + a2) % n for x in range(n)]
    return validate_system(space, t1, t2, f"Z{n}(+{a1},+{a2})")


def common_rotation_factor(p: int, q: int):
    """Common rotation factor of ``Z_p`` and ``Z_q`` under ``+1``: ``Z_g`` with ``g = gcd(p, q)``.

    Returns ``(g, proj1, proj2)`` with ``proj_i`` the reduction maps as tuples.
    """
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    g = gcd(p, q)
    return g, tuple(x % g for x in range(p)), tuple(x % g for x in range(q))


@dataclass(frozen=True)
class FactorMap:
    source: CommutingSystem
    target: CommutingSystem
    mapping: tuple

    def __post_init__(self):
        src, tgt, mp = self.source, self.target, tuple(self.mapping)
        object.__setattr__(self, "mapping", mp)
        if len(mp) != len(src):
            raise NotAFactorMap("mapping must assign an image to every source point")
        if any(not 0 <= y < len(tgt) for y in mp):
            raise NotAFactorMap("image index outside the target space")
        pushed = [Fraction(0)] * len(tgt)
        for x, y in enumerate(mp):
            pushed[y] += src.space.weights[x]
        if tuple(pushed) != tgt.space.weights:
            raise NotAFactorMap("pushforward of the source measure differs from the target measure")
        for s, t, label in ((src.t1, tgt.t1, "t1"), (src.t2, tgt.t2, "t2")):
            for x in range(len(src)):
                if mp[s.forward[x]] != t.forward[mp[x]]:
                    raise NotAFactorMap(f"{label} is not intertwined at {src.space.points[x]!r}")

    @classmethod
    def by_points(cls, source: CommutingSystem, target: CommutingSystem, func) -> "FactorMap":
        """Build from a function on point labels."""
        idx = target.space.index
        try:
            mapping = tuple(idx[func(p)] for p in source.space.points)
        except KeyError as exc:
            raise NotAFactorMap(f"image {exc.args[0]!r} is not a target point") from None
        return cls(source, target, mapping)


def lift_observable(f: Observable, factor: FactorMap) -> Observable:
    check_same_space(f.space, factor.target.space)
    return Observable(factor.source.space, tuple(f.values[y] for y in factor.mapping))


def disjoint_union(a: CommutingSystem, b: CommutingSystem, mass_a) -> CommutingSystem:
    """``a`` and ``b`` side by side, scaled to masses ``mass_a`` and ``1 - mass_a``.

    Points are ``(0, p)`` for ``p`` in ``a`` and ``(1, q)`` for ``q`` in ``b``.
    """
    mass_a = Fraction(mass_a)
    if not 0 < mass_a < 1:
        raise ValueError("mass_a must lie strictly between 0 and 1")
    na = len(a)
    space = WeightedSpace(
        tuple((0, p) for p in a.space.points) + tuple((1, q) for q in b.space.points),
        tuple(w * mass_a for w in a.space.weights) + tuple(w * (1 - mass_a) for w in b.space.weights),
    )
    t1 = list(a.t1.forward) + [na + j for j in b.t1.forward]
    t2 = list(a.t2.forward) + [na + j for j in b.t2.forward]
    return validate_system(space, t1, t2, f"{a.name or 'A'}+{b.name or 'B'}")
