"""Global resource limits for enumeration and solving."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace


class ResourceLimitError(RuntimeError):
    """A search or solve exceeded its configured budget.

    Raised instead of returning a possibly-wrong answer; callers report
    "unable to certify" (CLI exit code 3).
    """


@dataclass(frozen=True)
class Limits:
    # Step budget for enumeration searches (product-graph cycle DFS,
    # Hilbert-basis completion, lattice-point scans).
    max_nodes: int = 500_000
    # Budget for the quick certified enumeration the engine attempts before
    # falling back to column generation.
    small_enum_nodes: int = 60_000
    max_generators: int = 50_000
    max_pricing_rounds: int = 600
    max_pivots: int = 5_000_000
    # Hard cap on Hilbert basis size for the order-0 generator search.
    max_hilbert: int = 20

    def scaled_by_env(self) -> "Limits":
        raw = os.environ.get("SCLCONE_MAX_NODES")
        if raw is None:
            return self
        try:
            cap = int(raw)
        except ValueError as exc:
            raise ValueError(f"SCLCONE_MAX_NODES must be an integer, got {raw!r}") from exc
        return replace(self, max_nodes=cap, small_enum_nodes=min(self.small_enum_nodes, cap))


def default_limits() -> Limits:
    return Limits().scaled_by_env()
