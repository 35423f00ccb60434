"""
ISubIndex: the user-facing counting structure.

Owns the host graph, the augmentation cascade, one AHomState per compiled
vineyard pattern and the plans of every registered pattern. Updates go to
the host graph first (which validates them), then to the cascade, whose
change batch is fanned out to every engine in order. Counting queries are
arithmetic over the engine totals and the vertex count.
"""

import logging
from typing import Dict, Iterable, List, Optional, Tuple

from patterns.compiler import CountKind, PlanCompiler, QueryPlan, VineyardKey
from patterns.pattern import Pattern
from structures.augmentation import AugmentedState, ChangeKind, DirectedChange
from structures.colored_graph import ColoredGraph
from structures.errors import CapacityExceededError, UnknownPatternError
from structures.work import WorkCounters

from .ahom import AHomState

logger = logging.getLogger("isub.index")


class ISubIndex:
    """Exact isub/sub/hom counts of registered patterns under host updates."""

    def __init__(
        self,
        graph: ColoredGraph,
        *,
        strict: bool = False,
        seed: int = 0,
        max_size: int = 5,
        member_cap: int = 1_000_000,
        min_cap: int = 4,
    ):
        self.graph = graph
        self.strict = strict
        self.seed = seed
        self.min_cap = min_cap
        self.counters = WorkCounters()
        self.compiler = PlanCompiler(graph.k, max_size, member_cap)
        self.plans: Dict[str, Dict[CountKind, QueryPlan]] = {}
        self.engines: Dict[VineyardKey, AHomState] = {}
        self.augmentation: Optional[AugmentedState] = None

    @classmethod
    def build(
        cls,
        g: ColoredGraph,
        patterns: Iterable[Tuple[str, Pattern]],
        k: Optional[int] = None,
        **options,
    ) -> "ISubIndex":
        """
        Compile every pattern, build the cascade over a copy of g and feed
        the resulting union to every engine.

        Args:
            g: host graph (copied, the caller keeps ownership)
            patterns: (name, pattern) pairs
            k: color range; must match g.k when given
            **options: strict, seed, max_size, member_cap, min_cap

        Returns:
            The ready index.
        """
        if k is not None and k != g.k:
            raise ValueError(f"color range {k} does not match the host graph's {g.k}")
        index = cls(g.copy(), **options)
        for name, pattern in patterns:
            index._compile(name, pattern)
        index._rebuild()
        return index

    # ==================== Construction ====================

    def _compile(self, name: str, pattern: Pattern) -> None:
        if name in self.plans:
            raise ValueError(f"pattern name {name!r} registered twice")
        self.plans[name] = self.compiler.compile_all(pattern)

    def _rebuild(self) -> None:
        self.augmentation, batch = AugmentedState.init(
            self.graph, self.compiler.depth,
            min_cap=self.min_cap, strict=self.strict, seed=self.seed, counters=self.counters,
        )
        self.engines = {
            key: AHomState(vineyard, self.counters) for key, vineyard in self.compiler.vineyards.items()
        }
        self._fan_out(batch)
        logger.info(
            "index built: h=%d, patterns=%d, engines=%d, union edges=%d",
            self.augmentation.h, len(self.plans), len(self.engines), len(batch),
        )

    def register(self, name: str, pattern: Pattern) -> None:
        """
        Add a pattern to a live index. New engines are seeded with the
        current union; a deeper cascade forces a full rebuild.
        """
        self._compile(name, pattern)
        if self.compiler.depth > self.augmentation.h:
            logger.info("pattern %r needs depth %d; rebuilding cascade", name, self.compiler.depth)
            self._rebuild()
            return
        union = [
            DirectedChange(ChangeKind.INSERT, tail, head, color)
            for (tail, head), color in sorted(self.augmentation.edges().items())
        ]
        for key, vineyard in self.compiler.vineyards.items():
            if key not in self.engines:
                engine = AHomState(vineyard, self.counters)
                engine.apply_batch(union)
                self.engines[key] = engine

    def _fan_out(self, batch: List[DirectedChange]) -> None:
        for engine in self.engines.values():
            engine.apply_batch(batch)
        logger.debug("fanned out %d changes to %d engines", len(batch), len(self.engines))

    # ==================== Updates ====================

    def add_edge(self, u: int, v: int, c: int) -> None:
        self.graph.add_edge(u, v, c)
        try:
            batch = self.augmentation.insert(u, v, c)
        except CapacityExceededError:
            self.graph.remove_edge(u, v)
            raise
        self._fan_out(batch)

    def remove_edge(self, u: int, v: int) -> None:
        self.graph.remove_edge(u, v)
        self._fan_out(self.augmentation.delete(u, v))

    def recolor_edge(self, u: int, v: int, c: int) -> None:
        self.graph.recolor_edge(u, v, c)
        self._fan_out(self.augmentation.recolor(u, v, c))

    def add_vertex(self, vertex_id: Optional[int] = None) -> int:
        return self.graph.add_vertex(vertex_id)

    def remove_isolated_vertex(self, v: int) -> None:
        self.graph.remove_vertex(v)

    # ==================== Queries ====================

    def names(self) -> List[str]:
        return list(self.plans)

    def plan(self, name: str, kind: CountKind = CountKind.INDUCED) -> QueryPlan:
        plans = self.plans.get(name)
        if plans is None:
            raise UnknownPatternError(f"unknown pattern {name!r}")
        return plans[kind]

    def count(self, name: str, kind: CountKind = CountKind.INDUCED) -> int:
        engines = self.engines
        return self.plan(name, kind).evaluate(lambda key: engines[key].total(), self.graph.num_vertices())

    def count_induced(self, name: str) -> int:
        return self.count(name, CountKind.INDUCED)

    def count_sub(self, name: str) -> int:
        return self.count(name, CountKind.SUB)

    def count_hom(self, name: str) -> int:
        return self.count(name, CountKind.HOM)

    def counts(self) -> Dict[str, Dict[str, int]]:
        return {name: {kind.value: self.count(name, kind) for kind in CountKind} for name in self.plans}

    def stats(self) -> Dict:
        levels = self.augmentation.level_stats()
        return {
            "h": self.augmentation.h,
            "levels": levels,
            "union_edges": len(self.augmentation.edges()),
            "max_in_degree": self.augmentation.max_in_degree(),
            "engines": len(self.engines),
            "s_entries": sum(engine.num_entries() for engine in self.engines.values()),
            "work": self.counters.as_dict(),
        }
