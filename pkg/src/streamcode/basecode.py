"""Scalar base codes given by parity-check matrices.

Two constructions are provided:

* :func:`construct_base` -- the ``[rho - a + r, rho - a]`` code ``C(a, r, rho)``
  built from an identity block, ``Z1``/``Z2`` halves of an ``a x 2a`` zero-band
  MDS matrix and an ``r x (rho - r)`` Cauchy block.
* :func:`construct_modified` -- the ``[tau + 1 - a + b, tau + 1 - a]`` variant
  used when ``b mod a == a - 1``.

Both place an information set on the first k coordinates; the generator is
derived as ``[I_k | P]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .galois import FieldSpec
from .linalg import (
    MatrixGF,
    MatrixError,
    cauchy_matrix,
    identity,
    inverse,
    nullspace,
    rank,
    zero_band_mds,
)


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class BaseCode:
    n: int
    k: int
    field: FieldSpec
    H: MatrixGF
    G: MatrixGF
    a: int = 0
    params: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.H.cols != self.n or self.G.cols != self.n or self.G.rows != self.k:
            raise ConstructionError("H/G shapes disagree with [n, k]")

    @property
    def rate(self):
        from fractions import Fraction
        return Fraction(self.k, self.n)

    @classmethod
    def from_parity_check(cls, H: MatrixGF, a: int = 0, params: dict | None = None) -> BaseCode:
        n = H.cols
        if rank(H) != H.rows:
            raise ConstructionError(f"parity-check matrix has rank {rank(H)} < {H.rows} rows")
        G = systematic_generator(H)
        return cls(n, n - H.rows, H.field, H, G, a, dict(params or {}))

    def encode(self, info) -> list[int]:
        """Codeword for the k information symbols (systematic)."""
        if len(info) != self.k:
            raise ValueError(f"expected {self.k} information symbols, got {len(info)}")
        fs = self.field
        out = [0] * self.n
        for r, x in enumerate(info):
            if x:
                for j, g in enumerate(self.G.row(r)):
                    if g:
                        out[j] ^= fs.mul(x, g)
        return out

    def punctured_pc(self, last: int) -> MatrixGF:
        return _punctured(self, last)

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "params": self.params,
            "n": self.n,
            "k": self.k,
            "field": self.field.to_json(),
            "H": self.H.to_json(),
            "G": self.G.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> BaseCode:
        H = MatrixGF.from_json(obj["H"])
        code = cls.from_parity_check(H, int(obj.get("a", 0)), obj.get("params"))
        if "G" in obj:
            G = MatrixGF.from_json(obj["G"])
            if (G @ H.T).data != (0,) * (G.rows * H.rows) or G.rows != code.k:
                raise ConstructionError("stored generator does not annihilate H")
        return code


def systematic_generator(H: MatrixGF) -> MatrixGF:
    """G = [I_k | P] with H G^T = 0; needs the last n-k columns of H invertible."""
    r, n = H.rows, H.cols
    k = n - r
    fs = H.field
    try:
        HB_inv = inverse(H.sub(0, r - 1, k, n - 1)) if r else None
    except MatrixError:
        raise ConstructionError("last n-k columns of H are singular; first k coordinates are not an information set")
    if r == 0:
        return identity(fs, n)
    # H_A + H_B P^T = 0  =>  P^T = H_B^{-1} H_A  (characteristic 2)
    PT = HB_inv @ H.sub(0, r - 1, 0, k - 1) if k else None
    rows = []
    for i in range(k):
        rows.append([int(i == j) for j in range(k)] + PT.col(i))
    return MatrixGF.from_rows(fs, rows, cols=n)


@lru_cache(maxsize=4096)
def _punctured(code: BaseCode, last: int) -> MatrixGF:
    if not 0 <= last < code.n:
        raise IndexError(f"coordinate {last} outside [0, {code.n - 1}]")
    return nullspace(code.G.sub(0, code.k - 1, 0, last))


def punctured_pc(code: BaseCode, last: int) -> MatrixGF:
    """Parity-check matrix of the code restricted to coordinates [0 : last].

    Computed as the null space of the punctured generator; truncating H
    directly is wrong in general.
    """
    return _punctured(code, last)


def _place(grid: list[list[int]], block: MatrixGF, r0: int, c0: int) -> None:
    for i in range(block.rows):
        for j in range(block.cols):
            grid[r0 + i][c0 + j] = block[i, j]


def construct_base(a: int, r: int, rho: int, fs: FieldSpec) -> BaseCode:
    """Parity-check code C(a, r, rho): [n = rho - a + r, k = rho - a]."""
    if a < 1 or r < 1 or r % a:
        raise ConstructionError(f"r = {r} must be a positive multiple of a = {a}")
    if r >= rho:
        raise ConstructionError(f"need r < rho, got r = {r}, rho = {rho}")
    if fs.q < max(rho, 2 * a):
        raise ConstructionError(f"field too small: GF({fs.q}) < max(rho, 2a) = {max(rho, 2 * a)}")
    ell = r // a
    n = rho - a + r
    Z = zero_band_mds(fs, a, 2 * a)
    Z1, Z2 = Z.sub(0, a - 1, 0, a - 1), Z.sub(0, a - 1, a, 2 * a - 1)
    C = cauchy_matrix(fs, r, rho - r)

    H = [[0] * n for _ in range(r)]
    _place(H, identity(fs, a), 0, 0)
    for i in range(1, ell):
        _place(H, Z1, i * a, i * a)
    _place(H, C, 0, r)
    for i in range(1, ell):
        _place(H, Z2, i * a, rho + (i - 1) * a)

    code = BaseCode.from_parity_check(
        MatrixGF.from_rows(fs, H, cols=n), a, {"construction": "base", "a": a, "r": r, "rho": rho}
    )
    assert code.k == rho - a
    return code


def construct_modified(a: int, b: int, tau: int, fs: FieldSpec) -> BaseCode:
    """Parity-check code for b = l*a + a - 1: [n = tau + 1 - a + b, k = tau + 1 - a]."""
    if a < 1 or b < a or (b - (a - 1)) % a or (b - (a - 1)) // a < 1:
        raise ConstructionError(f"need b = l*a + a - 1 with l >= 1, got a = {a}, b = {b}")
    if tau + 1 - a < b:
        raise ConstructionError(f"need tau + 1 - a >= b, got {tau + 1 - a} < {b}")
    if fs.q < tau + 1:
        raise ConstructionError(f"field too small: GF({fs.q}) < tau + 1 = {tau + 1}")
    ell = (b - (a - 1)) // a
    n = tau + 1 - a + b
    Z = zero_band_mds(fs, a, 2 * a)
    Z1, Z2 = Z.sub(0, a - 1, 0, a - 1), Z.sub(0, a - 1, a, 2 * a - 1)
    C = cauchy_matrix(fs, b, tau + 1 - b)

    H = [[0] * n for _ in range(b)]
    _place(H, identity(fs, a - 1), 0, 0)
    for i in range(1, ell + 1):
        _place(H, Z1, i * a - 1, i * a - 1)
    _place(H, C, 0, b)
    if a > 1:
        _place(H, Z2.sub(0, a - 2, 0, a - 2), a - 1, tau + 1)
    for i in range(2, ell + 1):
        _place(H, Z2, i * a - 1, tau + (i - 1) * a)

    return BaseCode.from_parity_check(
        MatrixGF.from_rows(fs, H, cols=n), a, {"construction": "modified", "a": a, "b": b, "tau": tau}
    )
