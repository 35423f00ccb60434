"""Host graph, bounded orientations and the augmentation cascade."""

from .augmentation import (
    AugmentedState,
    ChangeKind,
    DirectedChange,
    HostOp,
    HostOpKind,
    net_changes,
    replay_changes,
)
from .colored_graph import ColoredGraph, degeneracy, edge_key, peeling_order
from .orientation import BoundedOrientation, EventKind, OrientationEvent, replay_events
from .work import WorkCounters

__all__ = [
    "AugmentedState",
    "BoundedOrientation",
    "ChangeKind",
    "ColoredGraph",
    "DirectedChange",
    "EventKind",
    "HostOp",
    "HostOpKind",
    "OrientationEvent",
    "WorkCounters",
    "degeneracy",
    "edge_key",
    "net_changes",
    "peeling_order",
    "replay_changes",
    "replay_events",
]
