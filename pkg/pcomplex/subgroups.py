"""Subgroups of a parent permutation group.

A subgroup with at most `caps.materialize` elements keeps its element set, and
its key is the sorted tuple of its elements' image tuples (lexicographic order
of image tuples is the order of their lexicographic ranks).  Keys identify
subgroups of one parent exactly and drive hashing, dedupe and node ids.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import multiplicity

import pcomplex.settings as settings
from pcomplex.exceptions import (
    CapExceededError,
    InvariantViolationError,
    NotAPGroupError,
    PrimeDoesNotDivideOrderError,
)
from pcomplex.permcore import Action, Orbit, PermGroup, Permutation, orbit
from pcomplex.utils import debug_print, progress


@dataclass(frozen=True, order=True)
class SubgroupKey:
    order: int
    fingerprint: Tuple[Tuple[int, ...], ...]


class Subgroup(PermGroup):
    """A subgroup of `parent`, optionally carrying its element set."""

    def __init__(
        self,
        parent: PermGroup,
        generators: Sequence[Permutation],
        members: Iterable[Permutation] = None,
        chain=None,
    ):
        super().__init__(generators, degree=parent.degree, chain=chain)
        self.parent = parent
        if members is not None:
            self.__dict__["members"] = frozenset(members)
        # fixed here so hashing never changes when the cap is adjusted later
        self.materializable = (
            members is not None or self.chain.order() <= settings.cap("materialize")
        )

    @classmethod
    def trivial(cls, parent: PermGroup) -> "Subgroup":
        return cls(parent, [], members=[parent.identity])

    @classmethod
    def from_members(cls, parent: PermGroup, members: Iterable[Permutation]) -> "Subgroup":
        members = frozenset(members)
        return cls(parent, _generators_from_members(members, parent.degree), members)

    @classmethod
    def generated(cls, parent: PermGroup, generators: Sequence[Permutation]) -> "Subgroup":
        """Subgroup spanned by generators, closed by multiplication (small groups only)."""
        return cls(parent, list(generators), _closure(generators, parent.identity))

    @property
    def is_materialized(self) -> bool:
        return "members" in self.__dict__

    @property
    def order(self) -> int:
        if self.is_materialized:
            return len(self.__dict__["members"])
        return self.chain.order()

    @cached_property
    def members(self) -> FrozenSet[Permutation]:
        if not self.materializable:
            limit = settings.cap("materialize")
            raise CapExceededError(
                "materialize", limit, needed=self.chain.order(), module="subgroups"
            )
        return frozenset(self.chain.elements())

    @cached_property
    def key(self) -> SubgroupKey:
        if self.materializable:
            return SubgroupKey(self.order, tuple(sorted(tuple(g) for g in self.members)))
        # not canonical; equality below falls back to mutual containment
        return SubgroupKey(self.order, tuple(sorted(tuple(g) for g in self.generators)))

    def contains(self, g: Permutation) -> bool:
        if self.is_materialized:
            return g in self.__dict__["members"]
        return super().contains(g)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        if self.order > other.order or other.order % self.order:
            return False
        return all(other.contains(g) for g in self.generators)

    def conjugate(self, g: Permutation) -> "Subgroup":
        return conjugate(self, g)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        if self.materializable and other.materializable:
            return self.key == other.key
        return self.order == other.order and self.is_subgroup_of(other)

    @cached_property
    def orbit_labels(self) -> Tuple[int, ...]:
        """Each point labelled by the least point of its orbit."""
        labels = list(range(self.degree))

        def find(point: int) -> int:
            while labels[point] != point:
                labels[point] = labels[labels[point]]
                point = labels[point]
            return point

        for g in self.generators:
            for point in g.moved_points():
                a, b = find(point), find(g(point))
                if a != b:
                    labels[max(a, b)] = min(a, b)
        return tuple(find(point) for point in range(self.degree))

    def __hash__(self) -> int:
        # equal subgroups share order and orbits however they are stored
        return hash((self.order, self.orbit_labels))

    def __lt__(self, other: "Subgroup") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        gens = ", ".join(repr(g) for g in self.generators)
        return f"Subgroup(order={self.order}, <{gens}>)"


def _closure(generators: Sequence[Permutation], identity: Permutation) -> FrozenSet[Permutation]:
    members = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in generators:
                y = x * g
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return frozenset(members)


def _generators_from_members(members: FrozenSet[Permutation], degree: int) -> List[Permutation]:
    """Greedy generating set: smallest element not yet generated, repeatedly."""
    identity = Permutation.identity(degree)
    generators = []
    span = frozenset([identity])
    for g in sorted(members):
        if len(span) == len(members):
            break
        if g not in span:
            generators.append(g)
            span = _closure(generators, identity)
    return generators


def _extend_by(M: Subgroup, x: Permutation) -> Subgroup:
    """<M, x> for x normalizing M; built as the union of cosets M x^i."""
    members = set(M.members)
    coset_rep = x
    while coset_rep not in M.members:
        members.update(m * coset_rep for m in M.members)
        coset_rep = coset_rep * x
    return Subgroup(M.parent, list(M.generators) + [x], members)


def _normalizes(x: Permutation, H: Subgroup) -> bool:
    x_inv = ~x
    return all(H.contains(x_inv * h * x) for h in H.generators)


def p_part(n: int, p: int) -> int:
    return p ** multiplicity(p, n) if n else 1


def _p_element(g: Permutation, p: int) -> Optional[Permutation]:
    """The p-part of g, or None when it is the identity."""
    order = g.order()
    pe = p_part(order, p)
    if pe == 1:
        return None
    return g ** (order // pe)


def _element_stream(G: PermGroup) -> Iterator[Permutation]:
    """Elements of G in a deterministic order.

    Above the element cap, products of generators are produced breadth first.
    """
    limit = settings.cap("elements")
    if G.order <= limit:
        yield from G.chain.elements()
        return
    seen = {G.identity}
    frontier = [G.identity]
    yield G.identity
    while frontier:
        new = []
        for x in frontier:
            for g in G.generators:
                y = x * g
                if y not in seen:
                    if len(seen) >= limit:
                        raise CapExceededError("elements", limit, module="subgroups")
                    seen.add(y)
                    new.append(y)
                    yield y
        frontier = new


def conjugate(H: Subgroup, g: Permutation) -> Subgroup:
    """H^g = g^-1 H g."""
    g_inv = ~g
    generators = [g_inv * h * g for h in H.generators]
    if H.is_materialized:
        return Subgroup(H.parent, generators, [g_inv * h * g for h in H.members])
    return Subgroup(H.parent, generators)


BY_CONJUGATION = Action(apply=lambda H, g: conjugate(H, g), product=lambda u, s: u * s)


def conjugacy_orbit(G: PermGroup, H: Subgroup) -> Orbit:
    return orbit(G, H, BY_CONJUGATION)


def normalizer(G: PermGroup, H: Subgroup) -> Subgroup:
    """N_G(H) as the stabilizer of H under conjugation by G."""
    conjugates = conjugacy_orbit(G, H)
    if G.order % len(conjugates):
        raise InvariantViolationError(
            f"orbit of size {len(conjugates)} does not divide |G| = {G.order}",
            module="subgroups",
        )
    target = G.order // len(conjugates)
    N = PermGroup.from_generators(
        conjugates.schreier_generators(), G.degree, target_order=target
    )
    if len(conjugates) * N.order != G.order:
        raise InvariantViolationError(
            f"|orbit| * |N| = {len(conjugates)} * {N.order} != |G| = {G.order}",
            module="subgroups",
        )
    return Subgroup(G, N.generators, chain=N.chain)


def sylow(G: PermGroup, p: int, seed: Subgroup = None) -> Subgroup:
    """A Sylow p-subgroup of G, grown from `seed` (default: trivial).

    Each step adds a p-element of N_G(P) outside P until |P| is the p-part of |G|.
    The unseeded result is kept on G, so repeated calls return the same subgroup.
    """
    if seed is None or seed.order == 1:
        found = G.__dict__.setdefault("_sylow", {})
        if p not in found:
            found[p] = _grow_sylow(G, p, None)
        return found[p]
    return _grow_sylow(G, p, seed)


def _grow_sylow(G: PermGroup, p: int, seed: Optional[Subgroup]) -> Subgroup:
    target = p_part(G.order, p)
    if target == 1:
        raise PrimeDoesNotDivideOrderError(
            f"{p} does not divide the group order {G.order}", module="subgroups"
        )
    parent = G
    if seed is None or seed.order == 1:
        P = None
        for g in _element_stream(G):
            x = _p_element(g, p)
            if x is not None:
                x = x ** (x.order() // p)
                P = Subgroup.generated(parent, [x])
                break
    else:
        P = Subgroup(parent, seed.generators, seed.members)
    while P.order < target:
        N = normalizer(G, P)
        grown = None
        for g in _element_stream(N):
            x = _p_element(g, p)
            if x is not None and not P.contains(x):
                grown = _extend_by(P, x)
                break
        if grown is None:
            raise InvariantViolationError(
                f"no p-element of N(P) outside P with |P| = {P.order} < {target}",
                module="subgroups",
            )
        P = grown
        debug_print(f"sylow growth: |P| = {P.order} of {target}")
    return P


def p_core(G: PermGroup, p: int, stop_order: int = None, seed: Subgroup = None) -> Subgroup:
    """O_p(G) as the intersection of the Sylow p-subgroups of G.

    The intersection stops early once it reaches `stop_order`, a known lower
    bound such as the order of a normal p-subgroup.
    """
    if p_part(G.order, p) == 1:
        return Subgroup.trivial(G)
    S = sylow(G, p, seed=seed)
    intersection = set(S.members)
    floor = stop_order or 1
    for T in conjugacy_orbit(G, S).items[1:]:
        if len(intersection) <= floor:
            break
        intersection &= T.members
    return Subgroup.from_members(G, intersection)


def is_p_radical(G: PermGroup, R: Subgroup, p: int) -> bool:
    """R = O_p(N_G(R))."""
    N = normalizer(G, R)
    return p_core(N, p, stop_order=R.order, seed=R).order == R.order


def is_p_group(H: PermGroup, p: int) -> bool:
    return p_part(H.order, p) == H.order


def _check_p_group(S: Subgroup, p: int = None):
    order = S.order
    if order == 1:
        return
    if p is None:
        p = min(q for q in range(2, order + 1) if order % q == 0)
    if not is_p_group(S, p):
        raise NotAPGroupError(f"order {order} is not a power of {p}", module="subgroups")
    limit = settings.cap("p_group_order")
    if order > limit:
        raise CapExceededError("p_group_order", limit, needed=order, module="subgroups")


def all_subgroups_of_p_group(S: Subgroup, p: int = None) -> List[Subgroup]:
    """Every non-trivial subgroup of the p-group S, once each, layer by layer.

    Every subgroup of order p^(k+1) is <M, x> for a normal subgroup M of
    order p^k and x in N(M) - M with x^p in M.
    """
    _check_p_group(S, p)
    if S.order == 1:
        return []
    if p is None:
        p = min(q for q in range(2, S.order + 1) if S.order % q == 0)
    members = sorted(S.members)
    layer: Dict[SubgroupKey, Subgroup] = {}
    for x in members:
        if x.order() == p:
            H = Subgroup.generated(S.parent, [x])
            layer.setdefault(H.key, H)
    found = []
    limit = settings.cap("subgroups")
    while layer:
        current = [layer[k] for k in sorted(layer)]
        found.extend(current)
        if len(found) > limit:
            raise CapExceededError("subgroups", limit, module="subgroups")
        layer = {}
        for M in current:
            covered = set(M.members)
            for x in members:
                if x in covered or not M.contains(x ** p) or not _normalizes(x, M):
                    continue
                E = _extend_by(M, x)
                covered.update(E.members)
                layer.setdefault(E.key, E)
    return found


def _elements_of_order(G: PermGroup, p: int) -> List[Permutation]:
    return [g for g in _element_stream(G) if not g.is_identity() and g.order() == p]


def elementary_abelian_subgroups(G: PermGroup, p: int) -> List[Subgroup]:
    """Non-trivial elementary abelian p-subgroups by breadth-first extension."""
    of_order_p = _elements_of_order(G, p)
    limit = settings.cap("subgroups")
    layer: Dict[SubgroupKey, Subgroup] = {}
    for x in of_order_p:
        H = Subgroup.generated(G, [x])
        layer.setdefault(H.key, H)
    found = []
    while layer:
        current = [layer[k] for k in sorted(layer)]
        found.extend(current)
        if len(found) > limit:
            raise CapExceededError("subgroups", limit, module="subgroups")
        layer = {}
        for E in progress(current, desc=f"extending order {current[0].order}"):
            covered = set(E.members)
            for y in of_order_p:
                if y in covered or any(y * g != g * y for g in E.generators):
                    continue
                F = _extend_by(E, y)
                covered.update(F.members)
                layer.setdefault(F.key, F)
    return found


def p_rank(G: PermGroup, p: int) -> int:
    """m_p(G), the largest rank of an elementary abelian p-subgroup."""
    if p_part(G.order, p) == 1:
        return 0
    top = max(E.order for E in elementary_abelian_subgroups(G, p))
    return multiplicity(p, top)


def expand_conjugates(G: PermGroup, rep: Subgroup) -> List[Subgroup]:
    """The conjugacy class of rep, in transversal order."""
    return conjugacy_orbit(G, rep).items


def conjugacy_classes(G: PermGroup, subs: Sequence[Subgroup]) -> List[Tuple[Subgroup, List[Subgroup]]]:
    """Group subs into G-classes: (first member seen, full class)."""
    classes = []
    seen = set()
    for H in subs:
        if H.key in seen:
            continue
        conjugates = expand_conjugates(G, H)
        seen.update(K.key for K in conjugates)
        classes.append((H, conjugates))
    return classes


def dedupe_by_conjugacy(G: PermGroup, subs: Sequence[Subgroup]) -> List[Subgroup]:
    return [rep for rep, _ in conjugacy_classes(G, subs)]
