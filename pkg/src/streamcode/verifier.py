"""Exhaustive streaming-code certification, regime classification and dispatch.

A (base code, placement) pair is an (a, b, tau) streaming code iff, for every
coordinate i, the erased coordinate sets that a random loss (<= a packets)
or a burst (<= b consecutive packets) starting at packet ``t`` can inflict on
the codeword holding ``x_i(t)`` leave ``c_i`` recoverable from the coordinates
visible by the deadline.  Recoverability is tested on parity-check columns:
against the punctured matrix ``H^(i)`` when ``r_i < n-1``, and as linear
independence of the erased columns of ``H`` when the whole codeword is
visible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple

from .basecode import BaseCode, construct_base, construct_modified, punctured_pc
from .embedding import (
    ParameterError,
    PlacementSet,
    StreamParams,
    f_S,
    placement_set_de,
    placement_set_sde,
    reach,
)
from .galois import smallest_field_for
from .linalg import column_rank

EXHAUSTIVE_BURST_MAX_TAU = 8


class UnsupportedRegime(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Violation:
    kind: str                   # "random" or "burst"
    i: int                      # coordinate that cannot be recovered
    erased: tuple[int, ...]     # erased coordinates of the codeword (A, or f_S(B))
    offsets: tuple[int, ...] = ()  # burst offsets B in [0, N-1]; empty for random

    def to_json(self) -> dict:
        out = {"kind": self.kind, "i": self.i, "erased": list(self.erased)}
        if self.kind == "burst":
            out["offsets"] = list(self.offsets)
        return out


@dataclass
class VerifyReport:
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: VerifyReport) -> VerifyReport:
        return VerifyReport(sorted(set(self.violations) | set(other.violations)), self.checked + other.checked)

    def to_json(self) -> dict:
        return {"pass": self.passed, "checked": self.checked, "violations": [v.to_json() for v in self.violations]}


class _Columns:
    """Column access to H and the punctured H^(i), with memoised rank tests."""

    def __init__(self, code: BaseCode):
        self.code = code
        self.fs = code.field
        self._cols: dict[int, list[list[int]]] = {}
        self._memo: dict = {}

    def cols(self, last: int) -> list[list[int]]:
        if last not in self._cols:
            H = self.code.H if last == self.code.n - 1 else punctured_pc(self.code, last)
            self._cols[last] = [H.col(j) for j in range(last + 1)]
        return self._cols[last]

    def recoverable(self, last: int, i: int, others: tuple[int, ...]) -> bool:
        """Column i of H^(last) is outside the span of columns ``others``."""
        key = ("r", last, i, others)
        hit = self._memo.get(key)
        if hit is None:
            cols = self.cols(last)
            other_cols = [cols[j] for j in others]
            hit = column_rank(self.fs, other_cols + [cols[i]]) > column_rank(self.fs, other_cols)
            self._memo[key] = hit
        return hit

    def dependent_suffix(self, erased: tuple[int, ...]) -> tuple[int, ...] | None:
        """If the H-columns ``erased`` are dependent, the shortest suffix whose
        head lies in the span of its tail; otherwise None."""
        key = ("d", erased)
        if key in self._memo:
            return self._memo[key]
        cols = self.cols(self.code.n - 1)
        out = None
        for pos in range(len(erased) - 1, -1, -1):
            tail = erased[pos:]
            if column_rank(self.fs, [cols[j] for j in tail]) < len(tail):
                out = tail
                break
        self._memo[key] = out
        return out


def _test(cols: _Columns, code: BaseCode, ps: PlacementSet, i: int, r_i: int, erased: tuple[int, ...]):
    """None if c_i survives ``erased``; else the (i', erased') witness."""
    if r_i < code.n - 1:
        if cols.recoverable(r_i, i, erased[1:]):
            return None
        return i, erased
    tail = cols.dependent_suffix(erased)
    return None if tail is None else (tail[0], tail)


def check_random(code: BaseCode, ps: PlacementSet, a: int, tau: int, cols: _Columns | None = None) -> VerifyReport:
    cols = cols or _Columns(code)
    found: set[Violation] = set()
    checked = 0
    for i in range(code.n):
        r_i = reach(ps, i, tau)
        for size in range(a):
            for rest in combinations(range(i + 1, r_i + 1), size):
                checked += 1
                bad = _test(cols, code, ps, i, r_i, (i,) + rest)
                if bad:
                    found.add(Violation("random", bad[0], bad[1]))
    return VerifyReport(sorted(found), checked)


def burst_offset_sets(ps: PlacementSet, i: int, b: int, exhaustive: bool):
    lo = ps.S[i]
    hi = min(lo + b - 1, ps.N - 1)
    if not exhaustive:
        yield tuple(range(lo, hi + 1))
        return
    rest = range(lo + 1, hi + 1)
    for size in range(len(rest) + 1):
        for combo in combinations(rest, size):
            yield (lo,) + combo


def check_burst(code: BaseCode, ps: PlacementSet, b: int, tau: int, exhaustive: bool | None = None,
                cols: _Columns | None = None) -> VerifyReport:
    if exhaustive is None:
        exhaustive = tau <= EXHAUSTIVE_BURST_MAX_TAU
    cols = cols or _Columns(code)
    found: set[Violation] = set()
    checked = 0
    for i in range(code.n):
        r_i = reach(ps, i, tau)
        seen: set[tuple[int, ...]] = set()
        for B in burst_offset_sets(ps, i, b, exhaustive):
            image = tuple(sorted({f_S(ps, j) for j in B}))
            if image in seen:
                continue
            seen.add(image)
            checked += 1
            bad = _test(cols, code, ps, i, r_i, image)
            if bad:
                i2, erased = bad
                offsets = tuple(ps.S[j] for j in erased) if i2 != i else B
                found.add(Violation("burst", i2, erased, offsets))
    return VerifyReport(sorted(found), checked)


def verify_streaming(code: BaseCode, ps: PlacementSet, p: StreamParams,
                     exhaustive_burst: bool | None = None) -> VerifyReport:
    if ps.n != code.n:
        raise ValueError(f"placement has {ps.n} coordinates but the code has n = {code.n}")
    cols = _Columns(code)
    return check_random(code, ps, p.a, p.tau, cols).merge(check_burst(code, ps, p.b, p.tau, exhaustive_burst, cols))


class Regime(str, enum.Enum):
    SDE_GCD = "SDE_GCD"
    DE_DIV = "DE_DIV"
    DE_MOD = "DE_MOD"
    UNSUPPORTED = "UNSUPPORTED"


def regime_applies(regime: Regime, p: StreamParams) -> bool:
    a, b, tau = p.a, p.b, p.tau
    if regime is Regime.SDE_GCD:
        return p.d >= a
    if regime is Regime.DE_DIV:
        return tau + 1 - a >= b and b % a == 0
    if regime is Regime.DE_MOD:
        return tau + 1 - a >= b and b % a == a - 1
    return True


def classify_regime(a: int, b: int, tau: int) -> Regime:
    """First applicable regime in the order SDE_GCD, DE_DIV, DE_MOD."""
    p = StreamParams(a, b, tau)
    for regime in (Regime.SDE_GCD, Regime.DE_DIV, Regime.DE_MOD):
        if regime_applies(regime, p):
            return regime
    return Regime.UNSUPPORTED


class StreamingCode(NamedTuple):
    code: BaseCode
    placement: PlacementSet
    regime: Regime
    field_size: int


UNSUPPORTED_HELP = (
    "no linear field size construction: needs gcd(b, tau+1-a) >= a, "
    "or tau+1-a >= b with b mod a in {0, a-1}"
)


def field_bound(regime: Regime, p: StreamParams) -> int:
    if regime is Regime.SDE_GCD:
        return (p.m + 1) * p.a
    return p.tau + 1


def build_streaming_code(a: int, b: int, tau: int, force_regime: Regime | str | None = None) -> StreamingCode:
    p = StreamParams(a, b, tau)
    if force_regime is None:
        regime = classify_regime(a, b, tau)
    else:
        regime = Regime(force_regime)
        if regime is not Regime.UNSUPPORTED and not regime_applies(regime, p):
            raise UnsupportedRegime(f"({a},{b},{tau}) is outside regime {regime.value}")
    if regime is Regime.UNSUPPORTED:
        raise UnsupportedRegime(f"unsupported regime for (a={a}, b={b}, tau={tau}): {UNSUPPORTED_HELP}")

    fs = smallest_field_for(field_bound(regime, p))
    if regime is Regime.SDE_GCD:
        code = construct_base(a, p.ell * a, (p.m + 1) * a, fs)
        ps = placement_set_sde(p)
    elif regime is Regime.DE_DIV:
        code = construct_base(a, b, tau + 1, fs)
        ps = placement_set_de(code.n)
    else:
        code = construct_modified(a, b, tau, fs)
        ps = placement_set_de(code.n)
    if code.rate != p.rate_opt:
        raise ParameterError(f"rate {code.rate} differs from the optimum {p.rate_opt}")  # construction bug
    return StreamingCode(code, ps, regime, fs.q)
