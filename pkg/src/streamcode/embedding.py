"""Placement-set geometry and the packet-level encoder.

A codeword ``c`` of the base code starting at time ``t0`` puts symbol ``c_i``
into component ``i`` of packet ``t0 + s_i``.  With placement ``S = [0 : n-1]``
this is the plain diagonal embedding.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .basecode import BaseCode
from .galois import FieldSpec


class ParameterError(ValueError):
    pass


class EncodingError(ValueError):
    pass


@dataclass(frozen=True)
class StreamParams:
    a: int
    b: int
    tau: int

    def __post_init__(self):
        if not 1 <= self.a <= self.b <= self.tau:
            raise ParameterError(f"need 1 <= a <= b <= tau, got a={self.a}, b={self.b}, tau={self.tau}")

    @property
    def window(self) -> int:
        return self.tau + 1

    @property
    def rate_opt(self) -> Fraction:
        k = self.tau + 1 - self.a
        return Fraction(k, k + self.b)

    @property
    def d(self) -> int:
        """gcd(b, tau + 1 - a), written a + g in the SDE construction."""
        return gcd(self.b, self.tau + 1 - self.a)

    @property
    def g(self) -> int:
        return self.d - self.a

    @property
    def ell(self) -> int:
        return self.b // self.d

    @property
    def m(self) -> int:
        return (self.tau + 1 - self.a) // self.d


@dataclass(frozen=True)
class PlacementSet:
    S: tuple[int, ...]
    N: int

    def __post_init__(self):
        S = self.S
        if not S or S[0] != 0 or S[-1] != self.N - 1:
            raise ParameterError(f"placement must start at 0 and end at N-1 = {self.N - 1}: {S}")
        if any(x >= y for x, y in zip(S, S[1:])):
            raise ParameterError(f"placement must be strictly increasing: {S}")

    @property
    def n(self) -> int:
        return len(self.S)

    def f(self, j: int) -> int:
        return f_S(self, j)

    def reach(self, i: int, tau: int) -> int:
        return reach(self, i, tau)

    def to_json(self) -> dict:
        return {"S": list(self.S), "N": self.N}

    @classmethod
    def from_json(cls, obj: dict) -> PlacementSet:
        return cls(tuple(int(x) for x in obj["S"]), int(obj["N"]))


def placement_set_sde(p: StreamParams) -> PlacementSet:
    """S = union of [i(a+g) : i(a+g)+a-1] for i in [0 : m+l-1]."""
    d = p.d
    if d < p.a:
        raise ParameterError(f"gcd(b, tau+1-a) = {d} < a = {p.a}; staggered placement unavailable")
    blocks = p.m + p.ell
    S = tuple(i * d + j for i in range(blocks) for j in range(p.a))
    return PlacementSet(S, (blocks - 1) * d + p.a)


def placement_set_de(n: int) -> PlacementSet:
    if n < 1:
        raise ParameterError("block length must be positive")
    return PlacementSet(tuple(range(n)), n)


def f_S(ps: PlacementSet, j: int) -> int:
    """Largest coordinate i with s_i <= j."""
    if not 0 <= j < ps.N:
        raise IndexError(f"offset {j} outside [0, {ps.N - 1}]")
    return bisect_right(ps.S, j) - 1


def reach(ps: PlacementSet, i: int, tau: int) -> int:
    """Last coordinate accessible while decoding coordinate i under delay tau."""
    return f_S(ps, min(ps.S[i] + tau, ps.N - 1))


def burst_image(ps: PlacementSet, i: int, b: int) -> set[int]:
    """f_S of the burst [s_i : min(s_i + b - 1, N - 1)]."""
    lo = ps.S[i]
    return {f_S(ps, j) for j in range(lo, min(lo + b - 1, ps.N - 1) + 1)}


@dataclass
class PacketStream:
    field: FieldSpec
    n: int
    horizon: int
    grid: list[list[int | None]]  # grid[t][i]; None marks an erased symbol

    def copy(self) -> PacketStream:
        return PacketStream(self.field, self.n, self.horizon, [list(r) for r in self.grid])

    def erase(self, times) -> PacketStream:
        out = self.copy()
        for t in times:
            if 0 <= t < self.horizon:
                out.grid[t] = [None] * self.n
        return out

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "n": self.n, "horizon": self.horizon, "grid": self.grid}

    @classmethod
    def from_json(cls, obj: dict) -> PacketStream:
        return cls(FieldSpec.from_json(obj["field"]), int(obj["n"]), int(obj["horizon"]), [list(r) for r in obj["grid"]])


def zero_forced_slots(ps: PlacementSet, k: int, horizon: int) -> list[tuple[int, int]]:
    """Message slots (t, i) belonging to codewords that start before time 0."""
    return [(t, i) for i in range(k) for t in range(min(ps.S[i], horizon))]


def encode_stream(code: BaseCode, ps: PlacementSet, messages: Sequence[Sequence[int]]) -> PacketStream:
    """Embed one codeword per start time into the packet stream.

    ``messages[t][i]`` (i < k) is the information symbol carried in component
    i of packet t; it belongs to the codeword starting at ``t - s_i``.
    Codewords starting before time 0 are all-zero, so the matching message
    slots must be zero.  Information symbols that would fall past the horizon
    are taken as zero.
    """
    if ps.n != code.n:
        raise EncodingError(f"placement has {ps.n} coordinates, code has n = {code.n}")
    horizon = len(messages)
    if horizon < ps.N:
        raise EncodingError(f"horizon {horizon} shorter than dispersion span N = {ps.N}")
    n, k, S = code.n, code.k, ps.S
    for t, msg in enumerate(messages):
        if len(msg) != k:
            raise EncodingError(f"message {t} has {len(msg)} symbols, expected k = {k}")
    for t, i in zero_forced_slots(ps, k, horizon):
        if messages[t][i]:
            raise EncodingError(f"message slot (t={t}, i={i}) belongs to a pre-stream codeword and must be 0")

    grid: list[list[int | None]] = [[0] * n for _ in range(horizon)]
    for t in range(horizon):
        for i in range(k):
            grid[t][i] = code.field.check(messages[t][i])
    for t0 in range(horizon - S[k]) if k < n else ():
        info = [messages[t0 + S[i]][i] if t0 + S[i] < horizon else 0 for i in range(k)]
        if not any(info):
            continue
        word = code.encode(info)
        for j in range(k, n):
            t = t0 + S[j]
            if t >= horizon:
                break
            grid[t][j] = word[j]
    return PacketStream(code.field, n, horizon, grid)


def codeword_at(stream: PacketStream, ps: PlacementSet, t0: int) -> list[int | None]:
    """Symbols of the codeword starting at t0 (None past the horizon or erased)."""
    out = []
    for i, s in enumerate(ps.S):
        t = t0 + s
        if t < 0:
            out.append(0)
        elif t >= stream.horizon:
            out.append(None)
        else:
            out.append(stream.grid[t][i])
    return out
