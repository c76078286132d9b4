"""Delay-constrained sequential decoder.

Time advances one packet at a time.  At time ``u`` every codeword with an
unknown symbol is punctured to the coordinates already transmitted
(``t0 + s_j <= u``); the erased columns of the punctured parity-check matrix
are reduced and every symbol whose column is outside the span of the other
erased columns is solved and written back.  Symbols recovered in one codeword
become known in every later step, which is how earlier recoveries feed later
ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .basecode import BaseCode, punctured_pc
from .channel import ErasurePattern
from .embedding import PacketStream, PlacementSet, StreamParams
from .linalg import rref_rows


class DecodeError(RuntimeError):
    """A solved symbol contradicts a parity check: encoder/decoder bug."""


@dataclass(frozen=True)
class SymbolRecovery:
    time: int       # packet the symbol belongs to
    component: int
    recovered_at: int
    used_upto: int  # latest packet time the solving codeword could see


@dataclass
class DecodeReport:
    tau: int
    horizon: int
    k: int
    erased: list[int]
    recovered: dict[int, int]            # erased time -> time its last component was recovered
    symbols: dict[tuple[int, int], SymbolRecovery]
    failures: set[tuple[int, int]]       # (time, component) missed with deadline inside the horizon
    censored: set[tuple[int, int]] = field(default_factory=set)  # deadline past the horizon, unresolved
    grid: list[list[int | None]] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def message_failures(self) -> set[tuple[int, int]]:
        return {f for f in self.failures if f[1] < self.k}

    @property
    def parity_failures(self) -> set[tuple[int, int]]:
        return {f for f in self.failures if f[1] >= self.k}

    @property
    def worst_delay(self) -> int | None:
        delays = [r - t for t, r in self.recovered.items()]
        return max(delays) if delays else None

    def to_json(self) -> dict:
        return {
            "tau": self.tau,
            "horizon": self.horizon,
            "packets": [{"erasedAt": t, "recoveredAt": self.recovered.get(t)} for t in self.erased],
            "failures": sorted(map(list, self.failures)),
            "messageFailures": sorted(map(list, self.message_failures)),
            "parityFailures": sorted(map(list, self.parity_failures)),
            "censored": sorted(map(list, self.censored)),
        }


def decode_stream(code: BaseCode, ps: PlacementSet, stream: PacketStream, e: ErasurePattern,
                  p: StreamParams) -> DecodeReport:
    if ps.n != code.n or stream.n != code.n:
        raise ValueError("code, placement and stream disagree on n")
    fs = code.field
    S, n, tau, horizon = ps.S, code.n, p.tau, stream.horizon
    grid = [list(r) for r in stream.grid]
    for t in e.erased:
        grid[t] = [None] * n

    symbols: dict[tuple[int, int], SymbolRecovery] = {}
    # symbols of codewords that started before time 0 are known zeros
    for t in e.erased:
        for i in range(n):
            if t < S[i]:
                grid[t][i] = 0
                symbols[(t, i)] = SymbolRecovery(t, i, t, t)

    starts = sorted({t - S[j] for t in e.erased for j in range(n) if t - S[j] >= 0})
    tried: dict[int, tuple] = {}

    for u in range(horizon):
        progress = True
        while progress:
            progress = False
            for t0 in starts:
                if t0 > u:
                    break
                last = max(j for j in range(n) if t0 + S[j] <= u)
                unknown = [j for j in range(last + 1) if grid[t0 + S[j]][j] is None]
                if not unknown:
                    continue
                key = (last, tuple(unknown))
                if tried.get(t0) == key:
                    continue
                tried[t0] = key
                solved = _solve_codeword(code, fs, grid, S, t0, last, unknown)
                for j, val in solved:
                    grid[t0 + S[j]][j] = val
                    symbols[(t0 + S[j], j)] = SymbolRecovery(t0 + S[j], j, u, t0 + S[last])
                    progress = True

    # every touched codeword that is fully in range must satisfy all of H
    for t0 in starts:
        if t0 + S[-1] >= horizon:
            continue
        word = [grid[t0 + S[j]][j] for j in range(n)]
        if None in word:
            continue
        for r in range(code.H.rows):
            acc = 0
            for h, c in zip(code.H.row(r), word):
                if h and c:
                    acc ^= fs.mul(h, c)
            if acc:
                raise DecodeError(f"codeword starting at t={t0} violates parity check {r}")

    recovered: dict[int, int] = {}
    failures: set[tuple[int, int]] = set()
    censored: set[tuple[int, int]] = set()
    for t in sorted(e.erased):
        times = []
        for i in range(n):
            rec = symbols.get((t, i))
            deadline = t + tau
            if rec is not None:
                times.append(rec.recovered_at)
                if rec.recovered_at > deadline:
                    failures.add((t, i))
            elif deadline < horizon:
                failures.add((t, i))
            else:
                censored.add((t, i))
        if len(times) == n:
            recovered[t] = max(times)
    return DecodeReport(tau, horizon, code.k, sorted(e.erased), recovered, symbols, failures, censored, grid)


def _solve_codeword(code, fs, grid, S, t0, last, unknown):
    H = punctured_pc(code, last)
    if H.rows == 0:
        return []
    known = [j for j in range(last + 1) if j not in set(unknown)]
    rows = []
    for r in range(H.rows):
        hr = H.row(r)
        syn = 0
        for j in known:
            if hr[j]:
                syn ^= fs.mul(hr[j], grid[t0 + S[j]][j])
        rows.append([hr[j] for j in unknown] + [syn])
    u = len(unknown)
    pivots = rref_rows(fs, rows, u)
    if any(rows[i][u] for i in range(len(pivots), len(rows))):
        raise DecodeError(f"inconsistent parity checks in codeword starting at t={t0}")
    out = []
    for r, pc in enumerate(pivots):
        if not any(rows[r][c] for c in range(u) if c != pc):
            out.append((unknown[pc], rows[r][u]))
    return out


def deadline_audit(report: DecodeReport, e: ErasurePattern, tau: int, allow_censored: bool = False) -> bool:
    """Every erased packet recovered within tau slots.

    With ``allow_censored`` packets whose deadline lies past the decoded
    horizon are excused when they are still unresolved at the horizon.
    """
    censored_times = {t for t, _ in report.censored}
    for t in e.erased:
        rec = report.recovered.get(t)
        if rec is None:
            if allow_censored and t in censored_times and not any(f[0] == t for f in report.failures):
                continue
            return False
        if rec > t + tau:
            return False
    return True


def structural_audit(report: DecodeReport) -> list[SymbolRecovery]:
    """Recoveries that consulted a packet later than the symbol's deadline."""
    return [s for s in report.symbols.values()
            if s.recovered_at <= s.time + report.tau and s.used_upto > s.time + report.tau]
