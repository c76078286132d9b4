"""Arithmetic over binary extension fields GF(2^m), 2 <= m <= 16.

Elements are plain ints in [0, q-1] whose bits are polynomial coefficients
over GF(2).  Each field uses the numerically smallest irreducible polynomial
of its degree, so every matrix built on top is bit-reproducible:

    m  poly        m  poly        m  poly
    2  0x7         7  0x83       12  0x1009
    3  0xb         8  0x11b      13  0x201b
    4  0x13        9  0x203      14  0x4021
    5  0x25       10  0x409      15  0x8003
    6  0x43       11  0x805      16  0x1002b

Multiplication goes through log/antilog tables built against the smallest
primitive element; the smallest irreducible polynomial is not always
primitive (0x11b is not), so ``x`` cannot be assumed to be a generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MIN_EXP = 2
MAX_EXP = 16


class FieldError(ValueError):
    pass


def poly_mulmod(x: int, y: int, poly: int, m: int) -> int:
    """Carry-less product of x and y reduced modulo poly (shift-and-add)."""
    r = 0
    top = 1 << m
    while y:
        if y & 1:
            r ^= x
        y >>= 1
        x <<= 1
        if x & top:
            x ^= poly
    return r


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if _poly_mod(poly, d) == 0:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(m: int) -> int:
    for poly in range((1 << m) + 1, 1 << (m + 1), 2):
        if is_irreducible(poly):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {m}")  # unreachable


@lru_cache(maxsize=None)
def _tables(m: int, poly: int) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    q = 1 << m
    order = q - 1
    for g in range(2, q):
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        ok = True
        for i in range(order):
            if i and x == 1:
                ok = False
                break
            exp[i] = x
            log[x] = i
            x = poly_mulmod(x, g, poly, m)
        if ok:
            exp[order:] = exp[:order]
            return tuple(exp), tuple(log), g
    # GF(4) with g=2 always succeeds; reaching here means poly is reducible
    raise FieldError(f"no primitive element for poly {poly:#x}")


@dataclass(frozen=True)
class FieldSpec:
    m: int
    poly: int

    def __post_init__(self):
        if not MIN_EXP <= self.m <= MAX_EXP:
            raise FieldError(f"field exponent {self.m} outside [{MIN_EXP}, {MAX_EXP}]")
        if self.poly.bit_length() - 1 != self.m or not is_irreducible(self.poly):
            raise FieldError(f"{self.poly:#x} is not an irreducible polynomial of degree {self.m}")

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def generator(self) -> int:
        return _tables(self.m, self.poly)[2]

    def elements(self) -> range:
        return range(self.q)

    def check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise FieldError(f"{x} is not an element of GF({self.q})")
        return x

    def add(self, x: int, y: int) -> int:
        return x ^ y

    sub = add

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        exp, log, _ = _tables(self.m, self.poly)
        return exp[log[x] + log[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        exp, log, _ = _tables(self.m, self.poly)
        return exp[(self.q - 1 - log[x]) % (self.q - 1)]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if e == 0:
            return 1
        if x == 0:
            return 0
        exp, log, _ = _tables(self.m, self.poly)
        return exp[(log[x] * e) % (self.q - 1)]

    def to_json(self) -> dict:
        return {"q": self.q, "poly": self.poly}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        q = int(obj["q"])
        m = q.bit_length() - 1
        if q != 1 << m:
            raise FieldError(f"field size {q} is not a power of two")
        return cls(m, int(obj.get("poly", smallest_irreducible(m))))

    def __repr__(self):
        return f"GF({self.q}, poly={self.poly:#x})"


def make_field(q: int) -> FieldSpec:
    """GF(q) with the canonical (smallest) reduction polynomial."""
    if not isinstance(q, int) or q < 1 or q & (q - 1):
        raise FieldError(f"field size {q} is not a power of two")
    m = q.bit_length() - 1
    if not MIN_EXP <= m <= MAX_EXP:
        raise FieldError(f"field size {q} outside [2^{MIN_EXP}, 2^{MAX_EXP}]")
    return FieldSpec(m, smallest_irreducible(m))


def smallest_field_for(bound: int) -> FieldSpec:
    """Smallest supported GF(2^m) with at least ``bound`` elements (never below GF(4))."""
    if bound < 2:
        raise FieldError(f"field bound must be >= 2, got {bound}")
    if bound > 1 << MAX_EXP:
        raise FieldError(f"field bound {bound} exceeds 2^{MAX_EXP}")
    m = max(MIN_EXP, (bound - 1).bit_length())
    return make_field(1 << m)


def add(fs: FieldSpec, x: int, y: int) -> int:
    return fs.add(x, y)


def mul(fs: FieldSpec, x: int, y: int) -> int:
    return fs.mul(x, y)


def inv(fs: FieldSpec, x: int) -> int:
    return fs.inv(x)
