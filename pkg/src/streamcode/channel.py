"""Sliding-window erasure patterns: admissibility, per-window enumeration, GE sampling."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .embedding import StreamParams


@dataclass(frozen=True)
class ErasurePattern:
    erased: frozenset[int]
    horizon: int

    def __post_init__(self):
        object.__setattr__(self, "erased", frozenset(self.erased))
        bad = [t for t in self.erased if not 0 <= t < self.horizon]
        if bad:
            raise ValueError(f"erasures {sorted(bad)} outside horizon {self.horizon}")

    def __iter__(self):
        return iter(sorted(self.erased))

    def __len__(self):
        return len(self.erased)

    def to_json(self) -> dict:
        return {"horizon": self.horizon, "erased": sorted(self.erased)}

    @classmethod
    def from_json(cls, obj: dict) -> ErasurePattern:
        return cls(frozenset(int(t) for t in obj["erased"]), int(obj["horizon"]))


def window_ok(erased_in_window, p: StreamParams) -> bool:
    if not erased_in_window:
        return True
    return len(erased_in_window) <= p.a or max(erased_in_window) - min(erased_in_window) <= p.b - 1


def is_admissible(e: ErasurePattern, p: StreamParams, horizon: int | None = None) -> bool:
    """Every window of tau+1 slots holds <= a erasures or fits inside b consecutive slots.

    Windows are clipped to the horizon; when the horizon is shorter than a
    window the single clipped window [0, horizon-1] is checked.
    """
    horizon = e.horizon if horizon is None else horizon
    times = sorted(e.erased)
    for t in range(max(1, horizon - p.tau)):
        w = [x for x in times if t <= x <= t + p.tau]
        if not window_ok(w, p):
            return False
    return True


def enumerate_window_patterns(p: StreamParams, t: int, horizon: int | None = None) -> list[ErasurePattern]:
    """Erasure sets inside [t, t+tau] that contain t: up to a random losses, or a burst [t, t+j], j < b."""
    if horizon is None:
        horizon = t + p.tau + 1
    seen: dict[frozenset[int], None] = {}
    rest = range(t + 1, t + p.tau + 1)
    for size in range(p.a):
        for combo in combinations(rest, size):
            seen.setdefault(frozenset((t,) + combo))
    for j in range(p.b):
        seen.setdefault(frozenset(range(t, t + j + 1)))
    return [ErasurePattern(frozenset(x for x in e if x < horizon), horizon) for e in seen]


def sample_ge(p_good_bad: float, p_bad_good: float, loss_in_bad: float, horizon: int, seed: int,
              start_bad: bool = False) -> ErasurePattern:
    """Two-state Gilbert-Elliott trace.

    Uses ``random.Random(seed)`` (Mersenne Twister).  Per slot: the current
    state decides the loss (bad state loses with probability ``loss_in_bad``,
    good state never loses), then the state transitions.  Not guaranteed
    admissible; filter with :func:`is_admissible`.
    """
    for name, v in (("p_good_bad", p_good_bad), ("p_bad_good", p_bad_good), ("loss_in_bad", loss_in_bad)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} = {v} is not a probability")
    rng = random.Random(seed)
    bad = start_bad
    erased = set()
    for t in range(horizon):
        if bad and rng.random() < loss_in_bad:
            erased.add(t)
        if bad:
            bad = not (rng.random() < p_bad_good)
        else:
            bad = rng.random() < p_good_bad
    return ErasurePattern(frozenset(erased), horizon)
