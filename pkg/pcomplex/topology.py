"""Components, edge-path fundamental groups, Tietze simplification and homology.

Words are tuples of signed generator indices starting at 1; -i is the
inverse of generator i.  Homology is unreduced.
"""
import heapq
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

import pcomplex.settings as settings
from pcomplex.complex import SimplicialComplex
from pcomplex.exceptions import InvalidInputError
from pcomplex.smith import SparseIntegerMatrix, rank_and_torsion
from pcomplex.utils import debug_print, progress

Word = Tuple[int, ...]

TRIVIAL = "trivial"
PRESENTED = "presented"


def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def free_reduce(word: Sequence[int]) -> Word:
    out: List[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1]


def _least_rotation(word: Word) -> int:
    """Start index of the lexicographically least rotation (Booth)."""
    s = word + word
    failure = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = failure[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = failure[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            failure[j - k] = -1
        else:
            failure[j - k] = i + 1
    return k


def canonical_relator(word: Word) -> Word:
    """Representative of a cyclically reduced word up to rotation and inversion."""
    if not word:
        return word
    forms = []
    for w in (word, invert(word)):
        k = _least_rotation(w)
        forms.append(w[k:] + w[:k])
    return min(forms)


@dataclass
class GroupPresentation:
    generator_count: int
    relators: List[Word] = field(default_factory=list)

    def __post_init__(self):
        self.relators = [tuple(r) for r in self.relators]
        for r in self.relators:
            if any(x == 0 or abs(x) > self.generator_count for x in r):
                raise InvalidInputError(
                    f"relator {r} uses a generator outside 1..{self.generator_count}",
                    module="topology",
                )

    def normalized(self) -> "GroupPresentation":
        """Cyclically reduced relators, empty ones and repeats dropped."""
        seen = set()
        relators = []
        for r in self.relators:
            r = cyclic_reduce(r)
            c = canonical_relator(r)
            if r and c not in seen:
                seen.add(c)
                relators.append(r)
        return GroupPresentation(self.generator_count, relators)

    @property
    def relator_count(self) -> int:
        return len(self.relators)


@dataclass
class ComponentMap:
    count: int
    labels: List[int]
    members: List[List[int]]
    # 1- and 2-simplices per component, in skeleton order
    edges: List[List[Tuple[int, int]]] = field(default_factory=list)
    triangles: List[List[Tuple[int, int, int]]] = field(default_factory=list)


def components(K: SimplicialComplex) -> ComponentMap:
    """Connected components of the 1-skeleton, numbered by smallest vertex."""
    graph = nx.Graph()
    graph.add_nodes_from(range(K.vertex_count))
    graph.add_edges_from(K.skeleton(1))
    members = sorted(
        (sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0]
    )
    labels = [0] * K.vertex_count
    for index, vertices in enumerate(members):
        for v in vertices:
            labels[v] = index
    edges = [[] for _ in members]
    for e in K.skeleton(1):
        edges[labels[e[0]]].append(e)
    triangles = [[] for _ in members]
    if K.dimension >= 2:
        for t in K.skeleton(2):
            triangles[labels[t[0]]].append(t)
    return ComponentMap(len(members), labels, members, edges, triangles)


def pi1_presentation(
    K: SimplicialComplex, component: int, component_map: ComponentMap = None
) -> GroupPresentation:
    """Edge-path presentation of pi_1 of one component.

    Tree edges come from breadth-first search out of the smallest vertex; every
    other edge (a, b), a < b, is a generator and every triangle a < b < c gives
    the relator ab.bc.(ac)^-1.  Relators are freely reduced but kept one per
    triangle, empty words included.
    """
    component_map = component_map or components(K)
    if not 0 <= component < component_map.count:
        raise InvalidInputError(
            f"component {component} does not exist ({component_map.count} components)",
            module="topology",
        )
    vertices = component_map.members[component]
    edges = component_map.edges[component]
    graph = nx.Graph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(edges)
    tree = {tuple(sorted(e)) for e in nx.bfs_edges(graph, vertices[0])}
    generator_of: Dict[Tuple[int, int], int] = {}
    for e in edges:
        if e not in tree:
            generator_of[e] = len(generator_of) + 1

    def edge_word(a: int, b: int) -> Word:
        g = generator_of.get((a, b))
        return (g,) if g else ()

    relators = [
        free_reduce(edge_word(a, b) + edge_word(b, c) + invert(edge_word(a, c)))
        for a, b, c in component_map.triangles[component]
    ]
    return GroupPresentation(len(generator_of), relators)


class _TietzeState:
    """Relators keyed by insertion id, with a generator -> relator ids index."""

    def __init__(self, presentation: GroupPresentation, max_length: int):
        self.max_length = max_length
        self.generators = set(range(1, presentation.generator_count + 1))
        self.relators: Dict[int, Word] = {}
        self.canonical: Dict[Word, int] = {}
        self.occurrences: Dict[int, set] = {g: set() for g in self.generators}
        self.heap: List[Tuple[int, int, int]] = []
        self.next_id = 0
        for r in presentation.relators:
            self.add(r)

    def add(self, word: Sequence[int]):
        word = cyclic_reduce(word)
        if not word:
            return
        key = canonical_relator(word)
        if key in self.canonical:
            return
        rid = self.next_id
        self.next_id += 1
        self.relators[rid] = word
        self.canonical[key] = rid
        counts = Counter(abs(x) for x in word)
        for g, count in counts.items():
            self.occurrences[g].add(rid)
            if count == 1 and len(word) <= self.max_length:
                heapq.heappush(self.heap, (len(word), g, rid))

    def drop(self, rid: int) -> Word:
        word = self.relators.pop(rid)
        del self.canonical[canonical_relator(word)]
        for g in set(abs(x) for x in word):
            self.occurrences[g].discard(rid)
        return word

    def eliminate(self, g: int, rid: int):
        word = self.drop(rid)
        position = next(i for i, x in enumerate(word) if abs(x) == g)
        rest = word[position + 1 :] + word[:position]
        # g^e . rest = 1
        replacement = invert(rest) if word[position] > 0 else rest
        inverse = invert(replacement)
        for other in sorted(self.occurrences[g]):
            old = self.drop(other)
            new: List[int] = []
            for x in old:
                if x == g:
                    new.extend(replacement)
                elif x == -g:
                    new.extend(inverse)
                else:
                    new.append(x)
            self.add(new)
        self.generators.discard(g)
        del self.occurrences[g]

    def run(self):
        bar = progress(None, desc="tietze", total=len(self.generators))
        while self.heap:
            length, g, rid = heapq.heappop(self.heap)
            if rid not in self.relators or g not in self.generators:
                continue
            self.eliminate(g, rid)
            bar.update(1)
        bar.close()

    def presentation(self) -> GroupPresentation:
        renumber = {g: i for i, g in enumerate(sorted(self.generators), start=1)}
        relators = [
            tuple(renumber[x] if x > 0 else -renumber[-x] for x in self.relators[rid])
            for rid in sorted(self.relators)
        ]
        return GroupPresentation(len(renumber), relators)


def tietze_simplify(P: GroupPresentation, max_length: int = None) -> GroupPresentation:
    """Eliminate generators that occur exactly once in a short relator.

    The eligible (relator, generator) pair with the shortest relator, then the
    lowest generator index, then the oldest relator goes first.  Surviving
    generators are renumbered in increasing order.
    """
    state = _TietzeState(P, max_length or settings.cap("relator_length"))
    state.run()
    result = state.presentation()
    debug_print(
        f"{P.generator_count} generators / {P.relator_count} relators -> "
        f"{result.generator_count} / {result.relator_count}"
    )
    return result


def split_free_factor(P: GroupPresentation) -> Tuple[int, GroupPresentation]:
    """(k, Q) with P = F_k * Q, F_k on the generators no relator mentions."""
    used = sorted({abs(x) for r in P.relators for x in r})
    renumber = {g: i for i, g in enumerate(used, start=1)}
    residual = GroupPresentation(
        len(used),
        [tuple(renumber[x] if x > 0 else -renumber[-x] for x in r) for r in P.relators],
    )
    return P.generator_count - len(used), residual


def abelianization(P: GroupPresentation) -> Tuple[int, List[int]]:
    """(free rank, torsion invariant factors) of P made abelian."""
    entries = []
    for i, r in enumerate(P.relators):
        for g, exponent in Counter(abs(x) for x in r if x > 0).items():
            entries.append((i, g - 1, exponent))
        for g, exponent in Counter(-x for x in r if x < 0).items():
            entries.append((i, g - 1, -exponent))
    matrix = SparseIntegerMatrix.from_entries(P.relator_count, P.generator_count, entries)
    rank, torsion = rank_and_torsion(matrix)
    return P.generator_count - rank, torsion


def certify(P: GroupPresentation) -> str:
    """trivial, free(k) or presented.  Never a claim of non-freeness."""
    if P.generator_count == 0:
        return TRIVIAL
    if not P.relators:
        return f"free({P.generator_count})"
    return PRESENTED


def free_rank_of(status: str) -> Optional[int]:
    if status == TRIVIAL:
        return 0
    if status.startswith("free("):
        return int(status[len("free(") : -1])
    return None


@dataclass
class ComponentPi1:
    component: int
    vertices: int
    raw_generators: int
    raw_relators: int
    generators: int
    relators: int
    status: str
    free_factor_rank: int
    residual_generators: int
    residual_relators: int
    residual_abelianization_rank: int
    abelianization_rank: int
    torsion: List[int]

    @property
    def free_rank(self) -> Optional[int]:
        return free_rank_of(self.status)

    def export(self) -> Dict:
        report = {"status": self.status}
        if self.free_rank is not None:
            report["free_rank"] = self.free_rank
        if self.status == PRESENTED:
            report.update(
                generators=self.generators,
                relators=self.relators,
                free_factor_rank=self.free_factor_rank,
                residual_generators=self.residual_generators,
                residual_relators=self.residual_relators,
                residual_abelianization_rank=self.residual_abelianization_rank,
            )
        report["abelianization"] = {
            "rank": self.abelianization_rank,
            "torsion": list(self.torsion),
        }
        return report


@dataclass
class Pi1Report:
    component_count: int
    per_component: List[ComponentPi1]

    @property
    def abelianizations_agree(self) -> bool:
        return (
            len({(c.abelianization_rank, tuple(c.torsion)) for c in self.per_component})
            <= 1
        )

    @property
    def statuses(self) -> List[str]:
        return [c.status for c in self.per_component]

    def export(self) -> Dict:
        return {
            "components": self.component_count,
            "abelianizations_agree": self.abelianizations_agree,
            "per_component": [c.export() for c in self.per_component],
        }


def _component_pi1(
    K: SimplicialComplex, component_map: ComponentMap, component: int
) -> ComponentPi1:
    raw = pi1_presentation(K, component, component_map)
    simplified = tietze_simplify(raw)
    free_factor, residual = split_free_factor(simplified)
    residual_rank, torsion = abelianization(residual)
    return ComponentPi1(
        component=component,
        vertices=len(component_map.members[component]),
        raw_generators=raw.generator_count,
        raw_relators=raw.relator_count,
        generators=simplified.generator_count,
        relators=simplified.relator_count,
        status=certify(simplified),
        free_factor_rank=free_factor,
        residual_generators=residual.generator_count,
        residual_relators=residual.relator_count,
        residual_abelianization_rank=residual_rank,
        abelianization_rank=free_factor + residual_rank,
        torsion=torsion,
    )


def fundamental_group(K: SimplicialComplex, threads: int = None) -> Pi1Report:
    """Per-component pi_1 statistics; components run concurrently."""
    threads = threads or settings.settings["threads"]
    component_map = components(K)
    if K.dimension >= 2:
        K.skeleton(2)
    work = range(component_map.count)
    if threads > 1 and component_map.count > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: _component_pi1(K, component_map, c), work))
    else:
        results = [_component_pi1(K, component_map, c) for c in work]
    report = Pi1Report(component_map.count, results)
    if not report.abelianizations_agree:
        debug_print("components have different abelianizations")
    return report


@dataclass
class HomologyReport:
    betti: List[int]
    torsion: List[List[int]]
    reduced: bool = False

    def reduced_betti(self) -> List[int]:
        betti = list(self.betti)
        if betti:
            betti[0] -= 1
        return betti

    def export(self) -> Dict:
        return {"betti": self.betti, "torsion": self.torsion, "reduced": self.reduced}


def boundary_matrix(K: SimplicialComplex, k: int) -> SparseIntegerMatrix:
    """d_k : C_k -> C_(k-1); face i of a sorted simplex carries sign (-1)^i."""
    row_of = {face: i for i, face in enumerate(K.skeleton(k - 1))}
    entries = []
    for column, simplex in enumerate(K.skeleton(k)):
        for i in range(k + 1):
            entries.append((row_of[simplex[:i] + simplex[i + 1 :]], column, (-1) ** i))
    return SparseIntegerMatrix.from_entries(len(row_of), len(K.skeleton(k)), entries)


def _boundary_rank_and_torsion(K: SimplicialComplex, k: int) -> Tuple[int, List[int]]:
    return rank_and_torsion(boundary_matrix(K, k))


def homology(K: SimplicialComplex, max_dim: int, threads: int = None) -> HomologyReport:
    """Unreduced integral homology in degrees 0..max_dim."""
    if max_dim < 0 or max_dim > K.dimension:
        raise InvalidInputError(
            f"homology degree {max_dim} outside 0..{K.dimension}", module="topology"
        )
    threads = threads or settings.settings["threads"]
    degrees = [k for k in range(1, max_dim + 2) if k <= K.dimension]
    for k in range(max_dim + 2):
        K.skeleton(k)
    if threads > 1 and len(degrees) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda k: _boundary_rank_and_torsion(K, k), degrees))
    else:
        results = [_boundary_rank_and_torsion(K, k) for k in degrees]
    ranks = {k: rank for k, (rank, _) in zip(degrees, results)}
    torsion_below = {k: torsion for k, (_, torsion) in zip(degrees, results)}
    betti = []
    torsion = []
    for k in range(max_dim + 1):
        chains = len(K.skeleton(k))
        betti.append(chains - ranks.get(k, 0) - ranks.get(k + 1, 0))
        torsion.append(torsion_below.get(k + 1, []))
    return HomologyReport(betti, torsion)


def join_free_rank(a: int, b: int) -> int:
    """Free rank of pi_1 of the join of posets with a and b components."""
    return (a - 1) * (b - 1)


def wreath_free_rank(sylow_count: int, order: int) -> int:
    """Free rank for L wr C_2 when the Sylow 2-subgroups of L intersect trivially."""
    return (sylow_count - 1) * (sylow_count - 1 + order)
