"""Group -> poset -> order complex -> topology, and the checks around it."""
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional

from sympy import isprime

from pcomplex.complex import SimplicialComplex, order_complex
from pcomplex.exceptions import InvalidInputError, InvariantViolationError, NotAPrimeError
from pcomplex.groupspec import GroupSpec, parse_group_spec, resolve
from pcomplex.permcore import PermGroup
from pcomplex.posets import POSET_KINDS, SubgroupPoset, build_poset, check_poset_invariants, truncate
from pcomplex.smith import normalize_diagonal
from pcomplex.subgroups import conjugacy_orbit, p_core, p_rank, sylow
from pcomplex.topology import (
    ComponentMap,
    HomologyReport,
    Pi1Report,
    components,
    fundamental_group,
    homology,
    pi1_presentation,
)
from pcomplex.utils import debug_print

CONTRACTIBLE = "contractible"


@dataclass
class Analysis:
    spec: GroupSpec
    prime: int
    group: PermGroup
    poset: SubgroupPoset
    complex: SimplicialComplex
    pi1: Pi1Report
    homology: Optional[HomologyReport]
    report: Dict

    @property
    def status(self) -> str:
        """The common pi_1 status of every component, or 'mixed'."""
        statuses = set(self.pi1.statuses)
        return statuses.pop() if len(statuses) == 1 else "mixed"


def validate_prime(prime: int):
    if not isinstance(prime, int) or not isprime(prime):
        raise NotAPrimeError(f"{prime!r} is not a prime", module="pipeline")


def _group_facts(G: PermGroup, p: int) -> Dict:
    S = sylow(G, p)
    core = p_core(G, p)
    return {
        "degree": G.degree,
        "order": G.order,
        "sylow_order": S.order,
        "p_core_order": core.order,
        # every elementary abelian p-subgroup lies in a conjugate of S
        "p_rank": p_rank(S, p),
    }


def analyze(
    group_spec: str,
    prime: int,
    kind: str = "quillen",
    truncation: int = None,
    homology_dim: int = None,
    check: bool = False,
    threads: int = None,
) -> Analysis:
    """Run the whole pipeline and assemble the JSON report."""
    validate_prime(prime)
    if kind not in POSET_KINDS:
        raise InvalidInputError(
            f"unknown poset kind {kind!r}; choose from {', '.join(POSET_KINDS)}",
            module="pipeline",
        )
    spec = parse_group_spec(group_spec)
    G = resolve(spec)
    debug_print(f"{spec}: degree {G.degree}, order {G.order}")
    facts = _group_facts(G, prime)
    X = build_poset(kind, G, prime)
    if truncation is not None:
        X = truncate(X, truncation)
    debug_print(f"{X}")
    K = order_complex(X)
    pi1 = fundamental_group(K, threads=threads)
    H = homology(K, homology_dim, threads=threads) if homology_dim is not None else None

    report = {
        "group_spec": spec.render(),
        "prime": prime,
        "poset_kind": kind,
        "truncation": truncation,
        "group": facts,
        "poset": {
            "size": X.size,
            "relations": len(X.relations),
            "orders": {str(o): n for o, n in sorted(Counter(X.orders()).items())},
        },
        "complex": {"dimension": K.dimension, "f_vector": K.f_vector()},
        "euler": K.euler_characteristic(),
        "prediction": CONTRACTIBLE if facts["p_core_order"] > 1 and truncation is None else None,
        "components": pi1.component_count,
        "abelianizations_agree": pi1.abelianizations_agree,
        "per_component": [c.export() for c in pi1.per_component],
    }
    if H is not None:
        report["homology"] = H.export()
    analysis = Analysis(spec, prime, G, X, K, pi1, H, report)
    if check:
        check_invariants(analysis)
    return analysis


def _component_euler(K: SimplicialComplex, component_map: ComponentMap, component: int) -> int:
    labels = component_map.labels
    counts = [
        sum(1 for s in K.skeleton(k) if labels[s[0]] == component)
        for k in range(min(K.dimension, 2) + 1)
    ]
    return sum((-1) ** k * n for k, n in enumerate(counts))


def check_invariants(analysis: Analysis):
    """Re-assert structural invariants; raises InvariantViolationError."""
    check_poset_invariants(analysis.poset)
    K = analysis.complex
    component_map = components(K)
    for c in range(component_map.count):
        raw = pi1_presentation(K, c, component_map)
        expected = 1 - _component_euler(K, component_map, c)
        if raw.generator_count - raw.relator_count != expected:
            raise InvariantViolationError(
                f"component {c}: generators - relators = "
                f"{raw.generator_count - raw.relator_count}, expected {expected}",
                module="pipeline",
            )
    if not analysis.pi1.abelianizations_agree:
        raise InvariantViolationError(
            "components have different abelianizations", module="pipeline"
        )
    H = analysis.homology
    if H is None:
        return
    if H.betti[0] != analysis.pi1.component_count:
        raise InvariantViolationError(
            f"betti_0 = {H.betti[0]} but {analysis.pi1.component_count} components",
            module="pipeline",
        )
    if len(H.betti) > 1:
        rank = sum(c.abelianization_rank for c in analysis.pi1.per_component)
        torsion: List[int] = []
        for c in analysis.pi1.per_component:
            torsion.extend(c.torsion)
        if rank != H.betti[1] or normalize_diagonal(torsion) != H.torsion[1]:
            raise InvariantViolationError(
                f"pi_1 abelianization (Z^{rank}, {torsion}) disagrees with "
                f"H_1 (Z^{H.betti[1]}, {H.torsion[1]})",
                module="pipeline",
            )
    if len(H.betti) == K.dimension + 1:
        alternating = sum((-1) ** k * b for k, b in enumerate(H.betti))
        if alternating != K.euler_characteristic():
            raise InvariantViolationError(
                f"alternating Betti sum {alternating} != euler characteristic "
                f"{K.euler_characteristic()}",
                module="pipeline",
            )


def sylow_count(G: PermGroup, p: int) -> int:
    """Number of Sylow p-subgroups, |G : N_G(S)|."""
    return len(conjugacy_orbit(G, sylow(G, p)))

