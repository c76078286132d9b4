"""Dense matrices over GF(2^m) and the special builders (Cauchy, zero-band MDS).

Matrices are small (tens of rows/columns) so everything is plain Python
Gaussian elimination on lists of ints.  Index ranges passed to
:meth:`MatrixGF.sub` are inclusive on both ends, i.e. ``M.sub(i1, i2, j1, j2)``
is the sub-matrix with rows ``i1..i2`` and columns ``j1..j2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .galois import FieldSpec


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class MatrixGF:
    field: FieldSpec
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows * self.cols:
            raise MatrixError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.data)}")
        q = self.field.q
        if any(not 0 <= x < q for x in self.data):
            raise MatrixError(f"entry outside GF({q})")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]], cols: int | None = None) -> MatrixGF:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise MatrixError("ragged rows")
        return cls(field, len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence[int]], rows: int | None = None) -> MatrixGF:
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(field, [[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return self.data[i * self.cols + j]

    def row(self, i: int) -> list[int]:
        return list(self.data[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[int]:
        return [self.data[i * self.cols + j] for i in range(self.rows)]

    def tolist(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def sub(self, i1: int, i2: int, j1: int, j2: int) -> MatrixGF:
        """Rows i1..i2 and columns j1..j2, both inclusive."""
        return self.select(range(i1, i2 + 1), range(j1, j2 + 1))

    def select(self, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> MatrixGF:
        rs = list(range(self.rows)) if rows is None else list(rows)
        cs = list(range(self.cols)) if cols is None else list(cols)
        for j in cs:
            if not 0 <= j < self.cols:
                raise IndexError(j)
        return MatrixGF.from_rows(self.field, [[self[i, j] for j in cs] for i in rs], cols=len(cs))

    @property
    def T(self) -> MatrixGF:
        return MatrixGF.from_rows(self.field, [self.col(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other: MatrixGF) -> MatrixGF:
        if self.cols != other.rows:
            raise MatrixError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        fs = self.field
        out = []
        ocols = [other.col(j) for j in range(other.cols)]
        for i in range(self.rows):
            r = self.row(i)
            out.append([dot(fs, r, c) for c in ocols])
        return MatrixGF.from_rows(fs, out, cols=other.cols)

    def is_zero(self) -> bool:
        return not any(self.data)

    def support(self) -> list[list[bool]]:
        return [[x != 0 for x in self.row(i)] for i in range(self.rows)]

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "rows": self.rows, "cols": self.cols, "data": list(self.data)}

    @classmethod
    def from_json(cls, obj: dict) -> MatrixGF:
        return cls(FieldSpec.from_json(obj["field"]), int(obj["rows"]), int(obj["cols"]), tuple(int(x) for x in obj["data"]))

    def pretty(self) -> str:
        w = len(str(self.field.q - 1))
        return "\n".join(" ".join(f"{x:>{w}}" for x in self.row(i)) for i in range(self.rows))


def dot(fs: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    s = 0
    for x, y in zip(u, v):
        if x and y:
            s ^= fs.mul(x, y)
    return s


def identity(fs: FieldSpec, n: int) -> MatrixGF:
    return MatrixGF.from_rows(fs, [[int(i == j) for j in range(n)] for i in range(n)], cols=n)


def zeros(fs: FieldSpec, rows: int, cols: int) -> MatrixGF:
    return MatrixGF(fs, rows, cols, (0,) * (rows * cols))


def rref_rows(fs: FieldSpec, rows: list[list[int]], ncols: int | None = None) -> list[int]:
    """Reduce ``rows`` in place to reduced row-echelon form.

    Only the first ``ncols`` columns are used for pivoting (the rest ride
    along, e.g. an augmented right-hand side).  Returns the pivot columns;
    rows past ``len(pivots)`` are zero in the pivoting columns.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        f = fs.inv(pr[c])
        if f != 1:
            pr[:] = [fs.mul(f, x) for x in pr]
        for i in range(nrows):
            if i != r and rows[i][c]:
                g = rows[i][c]
                ri = rows[i]
                for j, x in enumerate(pr):
                    if x:
                        ri[j] ^= fs.mul(g, x)
        pivots.append(c)
        r += 1
    return pivots


def rank(M: MatrixGF) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(rref_rows(M.field, M.tolist()))


def column_rank(fs: FieldSpec, columns: Sequence[Sequence[int]]) -> int:
    """Rank of the matrix whose columns are ``columns`` (eliminates on the transpose)."""
    cols = [list(c) for c in columns if any(c)]
    if not cols:
        return 0
    return len(rref_rows(fs, cols))


def in_span(fs: FieldSpec, target: Sequence[int], others: Sequence[Sequence[int]]) -> bool:
    """True iff ``target`` lies in the span of ``others`` (all equal-length column vectors)."""
    n = len(target)
    if any(len(v) != n for v in others):
        raise MatrixError("vectors of different lengths")
    return column_rank(fs, list(others) + [target]) == column_rank(fs, others)


def nullspace(M: MatrixGF) -> MatrixGF:
    """Basis (as rows) of {x : M x = 0}."""
    fs = M.field
    rows = M.tolist()
    pivots = rref_rows(fs, rows, M.cols) if rows else []
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * M.cols
        v[f] = 1
        for r, p in enumerate(pivots):
            v[p] = rows[r][f]  # char 2: -x == x
        basis.append(v)
    return MatrixGF.from_rows(fs, basis, cols=M.cols)


def inverse(M: MatrixGF) -> MatrixGF:
    if M.rows != M.cols:
        raise MatrixError("inverse of a non-square matrix")
    n = M.rows
    fs = M.field
    aug = [M.row(i) + [int(i == j) for j in range(n)] for i in range(n)]
    if len(rref_rows(fs, aug, n)) < n:
        raise MatrixError("matrix is singular")
    return MatrixGF.from_rows(fs, [r[n:] for r in aug], cols=n)


def is_invertible(M: MatrixGF) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def solve(M: MatrixGF, rhs: Sequence[int]) -> list[int] | None:
    """One solution x of M x = rhs, or None if the system is inconsistent."""
    fs = M.field
    aug = [M.row(i) + [rhs[i]] for i in range(M.rows)]
    pivots = rref_rows(fs, aug, M.cols)
    if any(aug[i][M.cols] for i in range(len(pivots), M.rows)):
        return None
    x = [0] * M.cols
    for r, p in enumerate(pivots):
        x[p] = aug[r][M.cols]
    return x


def cauchy_matrix(fs: FieldSpec, k: int, n: int) -> MatrixGF:
    """k x n Cauchy matrix with entries 1/(x_i + y_j), x_i = i and y_j = k + j."""
    if k + n > fs.q:
        raise MatrixError(f"field too small: GF({fs.q}) cannot host a {k}x{n} Cauchy matrix (needs q >= {k + n})")
    return MatrixGF.from_rows(fs, [[fs.inv(i ^ (k + j)) for j in range(n)] for i in range(k)], cols=n)


def vandermonde(fs: FieldSpec, k: int, points: Sequence[int]) -> MatrixGF:
    return MatrixGF.from_rows(fs, [[fs.pow(x, i) for x in points] for i in range(k)], cols=len(points))


def zero_band(k: int, n: int, i: int) -> list[int]:
    """Columns forced to zero in row i of a k x n zero-band matrix: [i+1 : i+k-1] mod n."""
    return [(i + t) % n for t in range(1, k)]


def zero_band_mds(fs: FieldSpec, k: int, n: int) -> MatrixGF:
    """k x n zero-band MDS generator matrix with unit diagonal.

    Row i is the (unique up to scale) codeword of the Reed-Solomon code on
    evaluation points 0..n-1 that vanishes on the band of k-1 columns after i.
    """
    if not 1 <= k <= n:
        raise MatrixError(f"zero-band MDS needs 1 <= k <= n, got k={k}, n={n}")
    if n > fs.q:
        raise MatrixError(f"field too small: GF({fs.q}) < n = {n}")
    rs = vandermonde(fs, k, range(n))
    out = []
    for i in range(k):
        band = zero_band(k, n, i)
        coeffs = nullspace(rs.select(cols=band).T)
        assert coeffs.rows == 1, "k-1 columns of an MDS generator must be independent"
        v = coeffs.row(0)
        word = [dot(fs, v, rs.col(j)) for j in range(n)]
        s = fs.inv(word[i])
        out.append([fs.mul(s, x) for x in word])
    Z = MatrixGF.from_rows(fs, out, cols=n)
    bad = zero_band_violations(Z)
    if bad or not is_mds_generator(Z):
        raise MatrixError(f"zero-band construction failed for k={k}, n={n}: {bad[:3]}")
    return Z


def zero_band_violations(Z: MatrixGF) -> list[tuple[int, int]]:
    """Entries breaking the zero-band pattern (zero inside band or nonzero outside)."""
    k, n = Z.rows, Z.cols
    bad = []
    for i in range(k):
        band = set(zero_band(k, n, i))
        for j in range(n):
            if (Z[i, j] == 0) != (j in band):
                bad.append((i, j))
    return bad


def is_superregular(M: MatrixGF) -> bool:
    """Every square sub-matrix (of every size) is invertible.  Exhaustive."""
    for s in range(1, min(M.rows, M.cols) + 1):
        for rs in combinations(range(M.rows), s):
            for cs in combinations(range(M.cols), s):
                if not is_invertible(M.select(rs, cs)):
                    return False
    return True


def is_mds_generator(M: MatrixGF) -> bool:
    """Every k x k minor of the k x n matrix is nonzero.  Exhaustive."""
    if M.rows > M.cols:
        raise MatrixError("MDS generator must have rows <= cols")
    return all(is_invertible(M.select(cols=cs)) for cs in combinations(range(M.cols), M.rows))
