"""The p-subgroup posets A_p(G), S_p(G) and B_p(G), truncation and join.

Node ids follow the sorted subgroup keys (order first, then fingerprint), so
every downstream numbering is reproducible.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pcomplex.exceptions import (
    InvalidInputError,
    InvariantViolationError,
    PrimeDoesNotDivideOrderError,
)
from pcomplex.permcore import PermGroup
from pcomplex.subgroups import (
    Subgroup,
    all_subgroups_of_p_group,
    conjugacy_classes,
    elementary_abelian_subgroups,
    is_p_radical,
    p_core,
    p_part,
    normalizer,
    sylow,
)
from pcomplex.utils import debug_print, progress

QUILLEN = "quillen"
SP = "sp"
BOUC = "bouc"
POSET_KINDS = (QUILLEN, SP, BOUC)


@dataclass
class AbstractPoset:
    """Elements 0..size-1 and the comparable pairs (i, j) meaning i < j."""

    size: int
    relations: List[Tuple[int, int]] = field(default_factory=list)

    @classmethod
    def antichain(cls, k: int) -> "AbstractPoset":
        return cls(k, [])

    @classmethod
    def chain(cls, k: int) -> "AbstractPoset":
        return cls(k, [(i, j) for i in range(k) for j in range(i + 1, k)])

    def is_strict_partial_order(self) -> bool:
        pairs = set(self.relations)
        if any(i == j or (j, i) in pairs for i, j in pairs):
            return False
        above: Dict[int, set] = {}
        for i, j in pairs:
            above.setdefault(i, set()).add(j)
        return all(
            (i, k) in pairs for i, j in pairs for k in above.get(j, ())
        )


class SubgroupPoset:
    """A poset of non-trivial p-subgroups of `parent` ordered by inclusion."""

    def __init__(
        self,
        kind: str,
        prime: int,
        parent: PermGroup,
        nodes: Sequence[Subgroup],
        relations: Sequence[Tuple[int, int]] = None,
        truncation: Optional[int] = None,
    ):
        self.kind = kind
        self.prime = prime
        self.parent = parent
        self.nodes: List[Subgroup] = sorted(nodes, key=lambda H: H.key)
        self.truncation = truncation
        self.relations: List[Tuple[int, int]] = (
            sorted(relations) if relations is not None else containment_pairs(self.nodes)
        )

    @property
    def size(self) -> int:
        return len(self.nodes)

    def index(self) -> Dict[Any, int]:
        return {H.key: i for i, H in enumerate(self.nodes)}

    def as_abstract(self) -> AbstractPoset:
        return AbstractPoset(self.size, list(self.relations))

    def orders(self) -> List[int]:
        return [H.order for H in self.nodes]

    def export_json(self, group_spec: str = None) -> Dict:
        return {
            "kind": self.kind,
            "prime": self.prime,
            "group_spec": group_spec,
            "truncation": self.truncation,
            "nodes": [
                {
                    "id": i,
                    "order": H.order,
                    "generator_images": [g.one_based() for g in H.generators],
                }
                for i, H in enumerate(self.nodes)
            ],
            "relations": [list(pair) for pair in self.relations],
        }

    def __repr__(self) -> str:
        return (
            f"SubgroupPoset(kind={self.kind}, p={self.prime}, nodes={self.size}, "
            f"relations={len(self.relations)})"
        )


def containment_pairs(nodes: Sequence[Subgroup]) -> List[Tuple[int, int]]:
    """All (i, j) with nodes[i] a proper subgroup of nodes[j].

    Candidates for the supergroups of a node are the nodes containing every one
    of its generators, read off an element -> nodes index.
    """
    containers: Dict[Any, set] = {}
    for j, H in enumerate(nodes):
        for g in H.members:
            containers.setdefault(g, set()).add(j)
    pairs = []
    for i, H in enumerate(progress(nodes, desc="containment")):
        if not H.generators:
            continue
        candidates = set.intersection(*(containers[g] for g in H.generators))
        for j in candidates:
            if nodes[j].order > H.order:
                pairs.append((i, j))
    return sorted(pairs)


def _require_prime_divides(G: PermGroup, p: int):
    if p_part(G.order, p) == 1:
        raise PrimeDoesNotDivideOrderError(
            f"{p} does not divide |G| = {G.order}", module="posets"
        )


def _expand_classes(G: PermGroup, reps: Sequence[Subgroup]) -> List[Subgroup]:
    nodes = {}
    for rep, conjugates in conjugacy_classes(G, reps):
        debug_print(f"class of order {rep.order}: {len(conjugates)} conjugates")
        for H in conjugates:
            nodes.setdefault(H.key, H)
    return list(nodes.values())


def _sylow_subgroups(G: PermGroup, p: int) -> List[Subgroup]:
    S = sylow(G, p)
    return all_subgroups_of_p_group(S, p)


def build_bouc(G: PermGroup, p: int) -> SubgroupPoset:
    """B_p(G): conjugates of the p-radical subgroups found inside one Sylow."""
    _require_prime_divides(G, p)
    candidates = _sylow_subgroups(G, p)
    radical = [
        R for R in progress(candidates, desc="radical filter") if is_p_radical(G, R, p)
    ]
    return SubgroupPoset(BOUC, p, G, _expand_classes(G, radical))


def build_sp(G: PermGroup, p: int) -> SubgroupPoset:
    """S_p(G): conjugates of every non-trivial subgroup of one Sylow."""
    _require_prime_divides(G, p)
    return SubgroupPoset(SP, p, G, _expand_classes(G, _sylow_subgroups(G, p)))


def build_quillen(G: PermGroup, p: int) -> SubgroupPoset:
    """A_p(G): non-trivial elementary abelian p-subgroups."""
    _require_prime_divides(G, p)
    return SubgroupPoset(QUILLEN, p, G, elementary_abelian_subgroups(G, p))


BUILDERS = {QUILLEN: build_quillen, SP: build_sp, BOUC: build_bouc}


def build_poset(kind: str, G: PermGroup, p: int) -> SubgroupPoset:
    return BUILDERS[kind](G, p)


def truncate(X: SubgroupPoset, n: int) -> SubgroupPoset:
    """Keep the nodes of order at most p^(n+1)."""
    if n < 0:
        raise InvalidInputError("truncation level must be non-negative", module="posets")
    bound = X.prime ** (n + 1)
    kept = [i for i, H in enumerate(X.nodes) if H.order <= bound]
    new_id = {old: new for new, old in enumerate(kept)}
    relations = [
        (new_id[i], new_id[j]) for i, j in X.relations if i in new_id and j in new_id
    ]
    return SubgroupPoset(
        X.kind,
        X.prime,
        X.parent,
        [X.nodes[i] for i in kept],
        relations=relations,
        truncation=n,
    )


def poset_join(X: AbstractPoset, Y: AbstractPoset) -> AbstractPoset:
    """X * Y: disjoint union with every x below every y."""
    shift = X.size
    relations = list(X.relations)
    relations.extend((i + shift, j + shift) for i, j in Y.relations)
    relations.extend((x, y + shift) for x in range(X.size) for y in range(Y.size))
    return AbstractPoset(X.size + Y.size, sorted(relations))


def check_poset_invariants(X: SubgroupPoset):
    """Re-assert the structural invariants of a built poset.

    Raises InvariantViolationError on the first failure.
    """
    if not X.as_abstract().is_strict_partial_order():
        raise InvariantViolationError("relation is not a strict partial order", module="posets")
    for H in X.nodes:
        if H.order == 1:
            raise InvariantViolationError("trivial subgroup in poset", module="posets")
    if X.kind == QUILLEN:
        for H in X.nodes:
            if any(g * h != h * g for g in H.generators for h in H.generators) or any(
                not (g ** X.prime).is_identity() for g in H.generators
            ):
                raise InvariantViolationError(
                    f"{H} is not elementary abelian", module="posets"
                )
    if X.kind == BOUC:
        for R in X.nodes:
            N = normalizer(X.parent, R)
            if p_core(N, X.prime, seed=R).key != R.key:
                raise InvariantViolationError(
                    f"{R} is not p-radical", module="posets"
                )
    if not is_automorphism_invariant(X):
        raise InvariantViolationError(
            "conjugation by a generator does not preserve the poset", module="posets"
        )


def is_automorphism_invariant(X: SubgroupPoset) -> bool:
    """Conjugation by each generator of G permutes nodes and keeps the relation."""
    index = X.index()
    pairs = set(X.relations)
    for g in X.parent.generators:
        image = []
        for H in X.nodes:
            j = index.get(H.conjugate(g).key)
            if j is None:
                return False
            image.append(j)
        if len(set(image)) != X.size:
            return False
        if any((image[i], image[j]) not in pairs for i, j in pairs):
            return False
    return True
