"""Instrumentation counters shared by the orientation levels, augmentation and engines."""

from dataclasses import asdict, dataclass
from typing import Dict


@dataclass
class WorkCounters:
    flips: int = 0
    fork_updates: int = 0
    fork_changes: int = 0
    enumerations: int = 0
    s_updates: int = 0
    rebuilds: int = 0

    def total(self) -> int:
        """Work units counted toward the update-cost trend (rebuilds excluded)."""
        return self.flips + self.fork_updates + self.fork_changes + self.enumerations

    def reset(self) -> None:
        for name in self.as_dict():
            setattr(self, name, 0)

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)
