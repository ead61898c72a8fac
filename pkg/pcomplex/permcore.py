"""Permutations and permutation groups.

Conventions used everywhere in pcomplex:

* Points are 0-based internally and 1-based in files, reports and reprs.
* ``a * b`` is composition with ``b`` applied first: ``(a * b)(x) = a(b(x))``.
* Conjugation is ``h ** g = g^-1 * h * g``.

Groups carry a stabilizer chain built by a deterministic incremental
Schreier-Sims: no random elements, and the base point added at each new level
is the smallest point moved by the residue that forced it.
"""
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import pcomplex.settings as settings
from pcomplex.exceptions import CapExceededError, DegreeMismatchError, GeneratorFileError


class Permutation(tuple):
    """A bijection of {0..n-1} stored as its image tuple."""

    __slots__ = ()

    @classmethod
    def from_images(cls, images: Sequence[int], one_based: bool = False):
        images = [i - 1 for i in images] if one_based else list(images)
        if sorted(images) != list(range(len(images))):
            raise GeneratorFileError(
                f"not a permutation of {len(images)} points: {images}",
                module="permcore",
            )
        return cls(images)

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]):
        """Build from 1-based cycles, e.g. from_cycles(4, (1, 2), (3, 4))."""
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b - 1
        return cls.from_images(images)

    @classmethod
    def identity(cls, degree: int):
        return cls(range(degree))

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, point: int) -> int:
        return self[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, other):
        if isinstance(other, Permutation):
            return conjugate(self, other)
        return power(self, other)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def moved_points(self) -> List[int]:
        return [i for i, j in enumerate(self) if i != j]

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(len(self)):
            if start in seen or self[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self[start]
            while j != start:
                seen.add(j)
                cycle.append(j)
                j = self[j]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def one_based(self) -> List[int]:
        return [i + 1 for i in self]

    def __repr__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join(
            "(" + " ".join(str(p + 1) for p in cycle) + ")" for cycle in cycles
        )


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return a*b, the permutation x -> a(b(x))."""
    if len(a) != len(b):
        raise DegreeMismatchError(
            f"cannot compose permutations of degree {len(a)} and {len(b)}",
            module="permcore",
        )
    return Permutation(a[i] for i in b)


def inverse(a: Permutation) -> Permutation:
    return ~a


def conjugate(h: Permutation, g: Permutation) -> Permutation:
    """h^g = g^-1 h g."""
    return compose(~g, compose(h, g))


def power(a: Permutation, exponent: int) -> Permutation:
    if exponent < 0:
        return power(~a, -exponent)
    result = Permutation.identity(len(a))
    base = a
    while exponent:
        if exponent & 1:
            result = compose(result, base)
        base = compose(base, base)
        exponent >>= 1
    return result


@dataclass(frozen=True)
class Action:
    """A right action item x g -> item.

    `product(u, s)` is the group product compatible with the action, so that
    apply(apply(x, u), s) == apply(x, product(u, s)).
    """

    apply: Callable[[Any, Permutation], Any]
    product: Callable[[Permutation, Permutation], Permutation]


ON_POINTS = Action(apply=lambda point, g: g[point], product=lambda u, s: s * u)


@dataclass
class Orbit:
    seed: Any
    items: List[Any]
    transversal: Dict[Any, Permutation]
    generators: Sequence[Permutation]
    action: Action

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, item) -> bool:
        return item in self.transversal

    def schreier_generators(self) -> Iterator[Permutation]:
        """Generators of the stabilizer of the seed, in orbit order."""
        product = self.action.product
        for item in self.items:
            u = self.transversal[item]
            for s in self.generators:
                image = self.action.apply(item, s)
                us = product(u, s)
                v = self.transversal[image]
                if us == v:
                    continue
                g = product(us, ~v)
                if not g.is_identity():
                    yield g


def orbit(
    G: "PermGroup",
    seed: Any,
    action: Action = ON_POINTS,
    cap: int = None,
) -> Orbit:
    """Breadth-first orbit of `seed` under G with a transversal.

    transversal[item] is the product u with apply(seed, u) == item.
    """
    cap = cap if cap is not None else settings.cap("orbit")
    generators = list(G.generators)
    identity = Permutation.identity(G.degree)
    transversal = {seed: identity}
    items = [seed]
    i = 0
    while i < len(items):
        item = items[i]
        u = transversal[item]
        for s in generators:
            image = action.apply(item, s)
            if image not in transversal:
                transversal[image] = action.product(u, s)
                items.append(image)
                if len(items) > cap:
                    raise CapExceededError("orbit", cap, module="permcore")
        i += 1
    return Orbit(seed, items, transversal, generators, action)


class _Level:
    """One level of a stabilizer chain: base point, strong generators, transversal."""

    def __init__(self, point: int, degree: int):
        self.point = point
        self.degree = degree
        self.generators: List[Permutation] = []
        self.transversal: Dict[int, Permutation] = {
            point: Permutation.identity(degree)
        }
        self._inverses: Dict[int, Permutation] = {}

    def add_generator(self, g: Permutation):
        self.generators.append(g)
        self._rebuild()

    def _rebuild(self):
        transversal = {self.point: Permutation.identity(self.degree)}
        queue = [self.point]
        for delta in queue:
            u = transversal[delta]
            for s in self.generators:
                gamma = s[delta]
                if gamma not in transversal:
                    transversal[gamma] = s * u
                    queue.append(gamma)
        self.transversal = transversal
        self._inverses = {}

    def inverse(self, gamma: int) -> Permutation:
        try:
            return self._inverses[gamma]
        except KeyError:
            inv = self._inverses[gamma] = ~self.transversal[gamma]
            return inv


class StabilizerChain:
    """Base and strong generating set of a permutation group."""

    def __init__(self, degree: int):
        self.degree = degree
        self.levels: List[_Level] = []

    @property
    def base(self) -> List[int]:
        return [level.point for level in self.levels]

    def orbit_sizes(self) -> List[int]:
        return [len(level.transversal) for level in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_sizes())

    def sift(self, g: Permutation, start: int = 0) -> Tuple[Permutation, int]:
        """Strip g through levels start.. ; returns (residue, level it stopped at)."""
        for index in range(start, len(self.levels)):
            level = self.levels[index]
            beta = g[level.point]
            if beta == level.point:
                continue
            if beta not in level.transversal:
                return g, index
            g = level.inverse(beta) * g
        return g, len(self.levels)

    def contains(self, g: Permutation) -> bool:
        residue, index = self.sift(g)
        return index == len(self.levels) and residue.is_identity()

    def extend(self, g: Permutation) -> bool:
        """Add g to the group; returns False when g was already a member."""
        residue, index = self.sift(g)
        if index == len(self.levels) and residue.is_identity():
            return False
        self._insert(residue, 0, index)
        self._complete(index)
        return True

    def _insert(self, h: Permutation, start: int, stop: int):
        if stop == len(self.levels):
            self.levels.append(_Level(h.moved_points()[0], self.degree))
        for index in range(start, stop + 1):
            self.levels[index].add_generator(h)

    def _complete(self, i: int):
        # levels above i are complete; check Schreier generators of level i
        while i >= 0:
            level = self.levels[i]
            found = None
            for beta, u_beta in list(level.transversal.items()):
                for s in level.generators:
                    gamma = s[beta]
                    g1 = s * u_beta
                    if g1 == level.transversal[gamma]:
                        continue
                    h, j = self.sift(level.inverse(gamma) * g1, i + 1)
                    if j < len(self.levels) or not h.is_identity():
                        found = (h, j)
                        break
                if found:
                    break
            if found is None:
                i -= 1
                continue
            h, j = found
            self._insert(h, i + 1, j)
            i = j

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once as u_0 * u_1 * ... * u_k."""
        identity = Permutation.identity(self.degree)
        transversals = [list(level.transversal.values()) for level in self.levels]

        def walk(index: int, prefix: Permutation):
            if index == len(transversals):
                yield prefix
                return
            for u in transversals[index]:
                yield from walk(index + 1, prefix * u)

        yield from walk(0, identity)


def build_chain(generators: Sequence[Permutation], degree: int = None) -> StabilizerChain:
    """Deterministic Schreier-Sims; identical generator lists give identical bases."""
    if degree is None:
        if not generators:
            raise DegreeMismatchError(
                "degree is required for an empty generator list", module="permcore"
            )
        degree = generators[0].degree
    chain = StabilizerChain(degree)
    for g in generators:
        if g.degree != degree:
            raise DegreeMismatchError(
                f"generator of degree {g.degree} in a group of degree {degree}",
                module="permcore",
            )
        if not g.is_identity():
            chain.extend(g)
    return chain


class PermGroup:
    """A permutation group given by generators, with a lazily built chain."""

    def __init__(
        self,
        generators: Sequence[Permutation],
        degree: int = None,
        chain: StabilizerChain = None,
    ):
        generators = [Permutation(g) for g in generators]
        if degree is None:
            if not generators:
                raise DegreeMismatchError(
                    "a group with no generators needs a degree", module="permcore"
                )
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatchError(
                    f"generator {g} has degree {g.degree}, expected {degree}",
                    module="permcore",
                )
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(generators)
        if chain is not None:
            self.__dict__["chain"] = chain

    @classmethod
    def from_generators(
        cls,
        candidates,
        degree: int,
        target_order: Optional[int] = None,
    ) -> "PermGroup":
        """Close over candidates, keeping only those that enlarge the group.

        Stops early once `target_order` is reached.
        """
        chain = StabilizerChain(degree)
        kept = []
        for g in candidates:
            if target_order is not None and chain.order() >= target_order:
                break
            if chain.extend(g):
                kept.append(g)
        return cls(kept, degree=degree, chain=chain)

    @cached_property
    def chain(self) -> StabilizerChain:
        return build_chain(self.generators, self.degree)

    @property
    def order(self) -> int:
        return self.chain.order()

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatchError(
                f"permutation of degree {g.degree} tested in group of degree {self.degree}",
                module="permcore",
            )
        return self.chain.contains(g)

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def elements(self, cap: int = None) -> Iterator[Permutation]:
        cap = cap if cap is not None else settings.cap("elements")
        if self.order > cap:
            raise CapExceededError("elements", cap, needed=self.order, module="permcore")
        return self.chain.elements()

    def orbit(self, seed: Any, action: Action = ON_POINTS, cap: int = None) -> Orbit:
        return orbit(self, seed, action, cap)

    def __repr__(self) -> str:
        gens = ", ".join(repr(g) for g in self.generators)
        return f"PermGroup(degree={self.degree}, order={self.order}, <{gens}>)"


def contains(G: PermGroup, g: Permutation) -> bool:
    return G.contains(g)


def elements(G: PermGroup, cap: int = None) -> Iterator[Permutation]:
    return G.elements(cap)


def parse_generator_text(text: str, source: str = "<text>") -> PermGroup:
    """Read the generator file format.

    Line 1 is the degree n; every further non-empty line is one generator as n
    space separated 1-based images.  Lines starting with '#' are comments.
    """
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise GeneratorFileError(f"{source}: empty generator file", module="permcore")
    try:
        degree = int(lines[0])
    except ValueError:
        raise GeneratorFileError(
            f"{source}: first line must be the degree, got {lines[0]!r}",
            module="permcore",
        )
    generators = []
    for line_number, line in enumerate(lines[1:], start=2):
        try:
            images = [int(token) for token in line.split()]
        except ValueError:
            raise GeneratorFileError(
                f"{source}: generator {line_number - 1} is not a list of integers",
                module="permcore",
            )
        if len(images) != degree:
            raise GeneratorFileError(
                f"{source}: generator {line_number - 1} has {len(images)} images, expected {degree}",
                module="permcore",
            )
        generators.append(Permutation.from_images(images, one_based=True))
    return PermGroup(generators, degree=degree)


def render_generator_text(G: PermGroup, comment: str = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(str(G.degree))
    lines.extend(" ".join(str(i) for i in g.one_based()) for g in G.generators)
    return "\n".join(lines) + "\n"
