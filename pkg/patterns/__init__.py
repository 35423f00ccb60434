"""Pattern types and the compiler from query patterns to engine plans."""

from .augmented_set import augmentation_depth, enumerate_augmented_members, enumerate_augmented_set
from .clans import Clan, UpdateSkeleton, build_update_skeletons, enumerate_clans, reachable_clans
from .compiler import ComponentRef, CountKind, PlanCompiler, PlanTerm, QueryPlan, compile
from .pattern import DirectedPattern, Pattern, check_pattern_size
from .projections import enumerate_projections_with_alpha
from .supergraphs import enumerate_supergraphs
from .vineyard import VineyardPattern, build_vineyard

__all__ = [
    "Clan",
    "ComponentRef",
    "CountKind",
    "DirectedPattern",
    "Pattern",
    "PlanCompiler",
    "PlanTerm",
    "QueryPlan",
    "UpdateSkeleton",
    "VineyardPattern",
    "augmentation_depth",
    "build_update_skeletons",
    "build_vineyard",
    "check_pattern_size",
    "compile",
    "enumerate_augmented_members",
    "enumerate_augmented_set",
    "enumerate_clans",
    "enumerate_projections_with_alpha",
    "enumerate_supergraphs",
    "reachable_clans",
]
