"""
Query plan compiler.

A plan is a signed sum of products:

    isub(H) = sum over supergraphs H1 (sign) of
              sum over projections H2 of H1 (alpha) of
              product over connected components F of H2 of hom(F)

and hom(F) for a connected F with at least two vertices is the sum of the
engine totals of its augmented set classes (with multiplicities). A
one-vertex component contributes the host's vertex count.

Sub and hom plans are the inner layers of the same pipeline.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Tuple

from structures.errors import PatternError

from .augmented_set import augmentation_depth, enumerate_augmented_set
from .clans import build_update_skeletons, enumerate_clans, reachable_clans
from .pattern import CanonicalForm, DirectedPattern, Pattern, check_pattern_size
from .projections import enumerate_projections_with_alpha
from .supergraphs import enumerate_supergraphs
from .vineyard import VineyardPattern, build_vineyard

logger = logging.getLogger("isub.compiler")

VineyardKey = CanonicalForm


class CountKind(Enum):
    INDUCED = "isub"
    SUB = "sub"
    HOM = "hom"


@dataclass(frozen=True)
class ComponentRef:
    """One factor of a term: a connected component and its augmented classes."""

    pattern: Pattern
    members: Tuple[Tuple[VineyardKey, int], ...] = ()

    @property
    def trivial(self) -> bool:
        return self.pattern.n == 1

    def labeled_size(self) -> int:
        return sum(multiplicity for _, multiplicity in self.members)

    def evaluate(self, hom_total: Callable[[VineyardKey], int], vertex_count: int) -> int:
        if self.trivial:
            return vertex_count
        return sum(multiplicity * hom_total(key) for key, multiplicity in self.members)


@dataclass(frozen=True)
class PlanTerm:
    sign: int
    alpha: int
    multiplicity: int
    pattern: Pattern
    components: Tuple[ComponentRef, ...]

    @property
    def coefficient(self) -> int:
        return self.sign * self.alpha * self.multiplicity


@dataclass
class QueryPlan:
    kind: CountKind
    pattern: Pattern
    k: int
    terms: List[PlanTerm] = field(default_factory=list)
    supergraph_signs: List[int] = field(default_factory=list)

    def vineyard_keys(self) -> List[VineyardKey]:
        keys = {key for term in self.terms for comp in term.components for key, _ in comp.members}
        return sorted(keys)

    def evaluate(self, hom_total: Callable[[VineyardKey], int], vertex_count: int) -> int:
        """Pure arithmetic over engine totals and the vertex count."""
        total = 0
        for term in self.terms:
            product = term.coefficient
            for comp in term.components:
                product *= comp.evaluate(hom_total, vertex_count)
                if not product:
                    break
            total += product
        return total

    def evaluate_components(self, component_hom: Callable[[Pattern], int]) -> int:
        """Evaluate with hom counts of the undirected components supplied directly."""
        total = 0
        for term in self.terms:
            product = term.coefficient
            for comp in term.components:
                product *= component_hom(comp.pattern)
            total += product
        return total


class PlanCompiler:
    """
    Compiles plans for one color range and shares component and vineyard
    compilation across every plan it produces.
    """

    def __init__(self, k: int, max_size: int = 5, member_cap: int = 1_000_000):
        if k < 1:
            raise ValueError(f"number of colors must be positive, got {k}")
        self.k = k
        self.max_size = max_size
        self.member_cap = member_cap
        self.vineyards: Dict[VineyardKey, VineyardPattern] = {}
        self._components: Dict[CanonicalForm, ComponentRef] = {}
        self.depth = 0

    # ==================== Components / vineyards ====================

    def prepare_vineyard(self, digraph: DirectedPattern) -> VineyardKey:
        key = digraph.canonical_form()
        if key not in self.vineyards:
            vineyard = build_vineyard(digraph)
            vineyard.clans = enumerate_clans(vineyard)
            vineyard.skeletons = build_update_skeletons(vineyard, vineyard.clans)
            self.vineyards[key] = vineyard
        return key

    def component_ref(self, component: Pattern) -> ComponentRef:
        form = component.canonical_form()
        cached = self._components.get(form)
        if cached is not None:
            return cached
        representative = component.canonical_representative()
        if representative.n == 1:
            ref = ComponentRef(representative)
        else:
            members = enumerate_augmented_set(representative, self.k, self.max_size, self.member_cap)
            ref = ComponentRef(
                representative,
                tuple((self.prepare_vineyard(digraph), multiplicity) for digraph, multiplicity in members),
            )
            self.depth = max(self.depth, augmentation_depth(representative.n))
        self._components[form] = ref
        return ref

    # ==================== Plans ====================

    def _validate(self, pattern: Pattern) -> None:
        if pattern.n == 0:
            raise PatternError("pattern needs at least one vertex")
        check_pattern_size(pattern.n, self.max_size)
        if pattern.max_color() > self.k:
            raise PatternError(f"pattern uses color {pattern.max_color()} but only {self.k} colors exist")

    def compile(self, pattern: Pattern, kind: CountKind = CountKind.INDUCED) -> QueryPlan:
        self._validate(pattern)
        if kind is CountKind.INDUCED:
            supergraphs = enumerate_supergraphs(pattern, self.k, self.max_size)
        else:
            supergraphs = [(1, pattern)]

        grouped: Dict[Tuple[int, int, CanonicalForm], List] = {}
        for sign, supergraph in supergraphs:
            if kind is CountKind.HOM:
                projections = [(supergraph, 1)]
            else:
                projections = enumerate_projections_with_alpha(supergraph)
            for projection, alpha in projections:
                if alpha == 0:
                    continue
                key = (sign, alpha, projection.canonical_form())
                entry = grouped.setdefault(key, [projection, 0])
                entry[1] += 1

        plan = QueryPlan(kind, pattern, self.k, supergraph_signs=[sign for sign, _ in supergraphs])
        for (sign, alpha, _), (projection, multiplicity) in sorted(grouped.items(), key=lambda item: item[0]):
            components = tuple(self.component_ref(comp) for comp in projection.components())
            plan.terms.append(PlanTerm(sign, alpha, multiplicity, projection, components))
        logger.info(
            "compiled %s plan: n=%d terms=%d vineyards=%d",
            kind.value, pattern.n, len(plan.terms), len(plan.vineyard_keys()),
        )
        return plan

    def compile_all(self, pattern: Pattern) -> Dict[CountKind, QueryPlan]:
        return {kind: self.compile(pattern, kind) for kind in CountKind}

    def summary(self, plan: QueryPlan) -> Dict:
        """Term count, augmented set sizes per component and clan counts per vineyard."""
        components = {}
        for term in plan.terms:
            for comp in term.components:
                if comp.trivial:
                    continue
                components[comp.pattern.canonical_form()] = {
                    "vertices": comp.pattern.n,
                    "edges": comp.pattern.num_edges(),
                    "labeled": comp.labeled_size(),
                    "classes": len(comp.members),
                }
        vineyards = []
        for key in plan.vineyard_keys():
            vineyard = self.vineyards[key]
            vineyards.append({
                "vertices": vineyard.pattern.n,
                "edges": vineyard.pattern.num_edges(),
                "clans": len(vineyard.clans),
                "maintained_clans": len(reachable_clans(vineyard.clans, vineyard.skeletons)),
            })
        return {
            "kind": plan.kind.value,
            "terms": len(plan.terms),
            "supergraphs": len(plan.supergraph_signs),
            "signs": list(plan.supergraph_signs),
            "components": list(components.values()),
            "vineyards": vineyards,
            "depth": self.depth,
        }


def compile(pattern: Pattern, k: int, max_size: int = 5, member_cap: int = 1_000_000) -> QueryPlan:
    """Induced-count plan for one pattern with a private compiler."""
    return PlanCompiler(k, max_size, member_cap).compile(pattern, CountKind.INDUCED)
