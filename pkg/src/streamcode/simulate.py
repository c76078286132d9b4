"""Encode-erase-decode runs over erasure patterns."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .basecode import BaseCode
from .channel import ErasurePattern, enumerate_window_patterns, is_admissible, sample_ge
from .decoder import DecodeReport, decode_stream, structural_audit
from .embedding import PacketStream, PlacementSet, StreamParams, encode_stream, zero_forced_slots


def default_horizon(ps: PlacementSet, p: StreamParams) -> int:
    return 3 * (p.tau + 1) + ps.N


def random_messages(code: BaseCode, ps: PlacementSet, horizon: int, seed: int) -> list[list[int]]:
    """Uniform message symbols from ``random.Random(seed)``; pre-stream slots are zero."""
    rng = random.Random(seed)
    q = code.field.q
    msgs = [[rng.randrange(q) for _ in range(code.k)] for _ in range(horizon)]
    for t, i in zero_forced_slots(ps, code.k, horizon):
        msgs[t][i] = 0
    return msgs


@dataclass
class PatternOutcome:
    pattern: ErasurePattern
    report: DecodeReport
    wrong: list[tuple[int, int]]       # symbols decoded to a value other than the one sent
    late_consults: int

    @property
    def ok(self) -> bool:
        return self.report.ok and not self.wrong


@dataclass
class SimulationSummary:
    patterns: int = 0
    failures: int = 0
    worst_delay: int | None = None
    wrong_symbols: int = 0
    late_consults: int = 0
    failed: list[PatternOutcome] = field(default_factory=list)

    def add(self, o: PatternOutcome) -> None:
        self.patterns += 1
        if not o.ok:
            self.failures += 1
            self.failed.append(o)
        self.wrong_symbols += len(o.wrong)
        self.late_consults += o.late_consults
        d = o.report.worst_delay
        if d is not None and (self.worst_delay is None or d > self.worst_delay):
            self.worst_delay = d

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.late_consults == 0

    def to_json(self) -> dict:
        return {
            "patterns": self.patterns,
            "failures": self.failures,
            "worstDelay": self.worst_delay,
            "wrongSymbols": self.wrong_symbols,
            "lateConsults": self.late_consults,
            "failedPatterns": [o.pattern.to_json() for o in self.failed[:20]],
        }


def run_pattern(code: BaseCode, ps: PlacementSet, p: StreamParams, stream: PacketStream,
                e: ErasurePattern) -> PatternOutcome:
    report = decode_stream(code, ps, stream, e, p)
    wrong = [(t, i) for (t, i) in report.symbols if report.grid[t][i] != stream.grid[t][i]]
    return PatternOutcome(e, report, wrong, len(structural_audit(report)))


def window_starts(ps: PlacementSet, p: StreamParams, horizon: int) -> range:
    """Window starts whose deadline t + tau still lies inside the horizon."""
    return range(0, horizon - p.tau)


def run_window_patterns(code: BaseCode, ps: PlacementSet, p: StreamParams, horizon: int | None = None,
                        seed: int = 0, stop_at_first: bool = False) -> SimulationSummary:
    """Every single-window pattern at every start; deadlines past the horizon are not judged."""
    if horizon is None:
        horizon = ps.N + p.tau + 1
    stream = encode_stream(code, ps, random_messages(code, ps, horizon, seed))
    summary = SimulationSummary()
    for t in window_starts(ps, p, horizon):
        for e in enumerate_window_patterns(p, t, horizon):
            summary.add(run_pattern(code, ps, p, stream, e))
            if stop_at_first and summary.failures:
                return summary
    return summary


def run_ge_patterns(code: BaseCode, ps: PlacementSet, p: StreamParams, probs: tuple[float, float, float],
                    trials: int, horizon: int, seed: int) -> tuple[SimulationSummary, int]:
    """GE traces filtered to admissible ones; returns (summary, number rejected)."""
    stream = encode_stream(code, ps, random_messages(code, ps, horizon, seed))
    summary = SimulationSummary()
    rejected = 0
    for trial in range(trials):
        e = sample_ge(*probs, horizon=horizon, seed=seed * 1_000_003 + trial)
        if not is_admissible(e, p):
            rejected += 1
            continue
        summary.add(run_pattern(code, ps, p, stream, e))
    return summary, rejected


def run_custom_pattern(code: BaseCode, ps: PlacementSet, p: StreamParams, e: ErasurePattern,
                       seed: int = 0) -> SimulationSummary:
    stream = encode_stream(code, ps, random_messages(code, ps, e.horizon, seed))
    summary = SimulationSummary()
    summary.add(run_pattern(code, ps, p, stream, e))
    return summary


def pattern_for_violation(v, ps: PlacementSet, t: int, horizon: int) -> ErasurePattern:
    """Packets to erase so that the codeword holding x_{v.i}(t) loses exactly ``v.erased``."""
    base = ps.S[v.i]
    return ErasurePattern(frozenset(t + ps.S[j] - base for j in v.erased), horizon)
