"""Order complexes of finite posets.

Vertices are poset element ids; every simplex is stored sorted, so the
orientation of a simplex is always by increasing vertex id.
"""
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import networkx as nx

import pcomplex.settings as settings
from pcomplex.exceptions import CapExceededError, InvalidInputError
from pcomplex.utils import progress

Simplex = Tuple[int, ...]


class SimplicialComplex:
    def __init__(self, vertex_count: int, maximal_simplices: Sequence[Sequence[int]]):
        self.vertex_count = vertex_count
        simplices = []
        for simplex in maximal_simplices:
            simplex = tuple(sorted(simplex))
            if len(set(simplex)) != len(simplex):
                raise InvalidInputError(
                    f"simplex {simplex} repeats a vertex", module="complex"
                )
            simplices.append(simplex)
        self.maximal_simplices: List[Simplex] = sorted(simplices)
        self._skeleta: Dict[int, List[Simplex]] = {}

    @property
    def dimension(self) -> int:
        return max((len(s) for s in self.maximal_simplices), default=0) - 1

    def skeleton(self, k: int) -> List[Simplex]:
        """The k-simplices (k+1 vertices), sorted lexicographically."""
        if k < 0:
            raise InvalidInputError("dimension must be non-negative", module="complex")
        if k not in self._skeleta:
            faces = set()
            for simplex in self.maximal_simplices:
                if len(simplex) > k:
                    faces.update(combinations(simplex, k + 1))
            self._skeleta[k] = sorted(faces)
        return self._skeleta[k]

    def f_vector(self) -> List[int]:
        return [len(self.skeleton(k)) for k in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * count for k, count in enumerate(self.f_vector()))

    def export_json(self) -> Dict:
        return {
            "vertices": self.vertex_count,
            "maximal_simplices": [list(s) for s in self.maximal_simplices],
        }

    def __repr__(self) -> str:
        return (
            f"SimplicialComplex(vertices={self.vertex_count}, "
            f"maximal={len(self.maximal_simplices)}, dim={self.dimension})"
        )


def covering_relation(size: int, relations: Sequence[Tuple[int, int]]) -> nx.DiGraph:
    """Hasse diagram: edge (i, j) when j covers i."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(size))
    graph.add_edges_from(relations)
    return nx.transitive_reduction(graph)


def maximal_chains(size: int, relations: Sequence[Tuple[int, int]]) -> List[Simplex]:
    """Every maximal chain, by descent from each maximal element along covers."""
    hasse = covering_relation(size, relations)
    limit = settings.cap("chains")
    lower_covers = {v: sorted(hasse.predecessors(v)) for v in hasse.nodes}
    tops = sorted(v for v in hasse.nodes if hasse.out_degree(v) == 0)
    chains = []
    for top in progress(tops, desc="maximal chains"):
        stack = [(top,)]
        while stack:
            chain = stack.pop()
            below = lower_covers[chain[-1]]
            if not below:
                chains.append(tuple(sorted(chain)))
                if len(chains) > limit:
                    raise CapExceededError("chains", limit, module="complex")
                continue
            for v in reversed(below):
                stack.append(chain + (v,))
    return chains


def order_complex(X) -> SimplicialComplex:
    """K(X) for any poset exposing `size` and `relations`."""
    if X.size == 0:
        raise InvalidInputError("the order complex of an empty poset is empty", module="complex")
    return SimplicialComplex(X.size, maximal_chains(X.size, X.relations))


def skeleton(K: SimplicialComplex, k: int) -> List[Simplex]:
    return K.skeleton(k)


def euler_characteristic(K: SimplicialComplex) -> int:
    return K.euler_characteristic()
