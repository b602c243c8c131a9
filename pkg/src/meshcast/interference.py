"""Partially-overlapping channel interference: IR formula, objective and conflict predicate.

The interference range between two senders shrinks geometrically with the
separation of their send channels::

    IR(u, v) = R * delta ** |i_u - i_v|

where ``R`` is the common transmission range and ``delta`` in (0, 1] is the
interference factor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import MissingSIError


@dataclass(frozen=True)
class InterferenceParams:
    R: float
    delta: float = 0.5

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError(f"R must be positive, got {self.R}")
        if not 0 < self.delta <= 1:
            raise ValueError(f"delta must lie in (0, 1], got {self.delta}")


def interference_range(i_u: int, i_v: int, p: InterferenceParams) -> float:
    if i_u < 0 or i_v < 0:
        raise ValueError("channel indices must be non-negative")
    return p.R * p.delta ** abs(i_u - i_v)


def _si_table(assignment):
    return assignment.si if hasattr(assignment, "si") else assignment


def _si(table, u):
    try:
        return table[u]
    except KeyError:
        raise MissingSIError(f"node {u!r} has no send-interface channel") from None


def pairwise_objective(u, assignment, neighbors, p: InterferenceParams) -> float:
    """Sum of squared interference ranges between ``u`` and each of ``neighbors``.

    ``assignment`` is a :class:`~meshcast.multicast.ChannelAssignment` or a
    plain ``node -> SI channel`` mapping.
    """
    si = _si_table(assignment)
    i_u = _si(si, u)
    return sum(interference_range(i_u, _si(si, v), p) ** 2 for v in neighbors)


def links_conflict(sender1, sender2, assignment, positions, p: InterferenceParams) -> bool:
    """Protocol-model conflict between two concurrent senders.

    The sender-to-sender distance is compared against ``IR + R``: a receiver
    of one link may sit anywhere within ``R`` of its sender, so it is exposed
    whenever the other sender's interference disc reaches that far.
    """
    si = _si_table(assignment)
    ir = interference_range(_si(si, sender1), _si(si, sender2), p)
    (x1, y1), (x2, y2) = positions[sender1], positions[sender2]
    return math.hypot(x1 - x2, y1 - y2) < ir + p.R


def total_interference(assignment, senders, positions, p: InterferenceParams, radius: float) -> float:
    """Sum of IR^2 over unordered sender pairs no farther apart than ``radius``."""
    si = _si_table(assignment)
    total = 0.0
    for u, v in combinations(sorted(senders), 2):
        (x1, y1), (x2, y2) = positions[u], positions[v]
        if math.hypot(x1 - x2, y1 - y2) <= radius:
            total += interference_range(_si(si, u), _si(si, v), p) ** 2
    return total
