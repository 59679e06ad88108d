"""Exact dense rational matrices (row-major, row-vector convention)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from . import _backend


def rat(x) -> int | Fraction:
    """Canonical exact scalar: ``int`` when integral, otherwise ``Fraction``.

    Accepts ints, Fractions, and strings such as ``"3"``, ``"-2/4"``.
    """
    if type(x) is int:
        return x
    if isinstance(x, str):
        x = Fraction(x.strip())
    elif isinstance(x, bool):
        return int(x)
    elif isinstance(x, Rational):
        x = Fraction(x.numerator, x.denominator)
    else:
        raise TypeError(f"not an exact rational: {x!r}")
    return x.numerator if x.denominator == 1 else x


def rat_str(x) -> str:
    """``"num/den"`` with den > 0, in lowest terms (``"0/1"`` for zero)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class Mat:
    """An exact ``nrows x ncols`` matrix.

    Values are treated as immutable: no method mutates ``self.rows`` after
    construction.  Use :meth:`from_rows` for untrusted input (it canonicalizes
    entries); the bare constructor trusts its caller.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows, ncols=None):
        self.rows = rows
        self.nrows = len(rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        self.ncols = ncols

    @classmethod
    def from_rows(cls, rows, ncols=None) -> Mat:
        data = [[rat(x) for x in r] for r in rows]
        if ncols is None and data:
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(data, ncols if ncols is not None else 0)

    @classmethod
    def zeros(cls, nrows, ncols) -> Mat:
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n, scale=1) -> Mat:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = scale
        return cls(rows, n)

    @classmethod
    def diag_blocks(cls, blocks) -> Mat:
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        rows = []
        off = 0
        for b in blocks:
            for r in b.rows:
                rows.append([0] * off + list(r) + [0] * (m - off - b.ncols))
            off += b.ncols
        return cls(rows, m) if rows else cls.zeros(n, m)

    # -- shape helpers -------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Mat({self.nrows}x{self.ncols}: [{body}])"

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(map(tuple, self.rows))))

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return [r[j] for r in self.rows]

    def T(self) -> Mat:
        if self.nrows == 0:
            return Mat([[] for _ in range(self.ncols)], 0)
        return Mat([list(c) for c in zip(*self.rows)], self.nrows)

    def take_rows(self, idx) -> Mat:
        return Mat([self.rows[i] for i in idx], self.ncols)

    def take_cols(self, idx) -> Mat:
        idx = list(idx)
        return Mat([[r[j] for j in idx] for r in self.rows], len(idx))

    def vec(self) -> list:
        """Row-major flattening."""
        return [x for r in self.rows for x in r]

    @classmethod
    def unvec(cls, v, nrows, ncols) -> Mat:
        return cls([list(v[i * ncols:(i + 1) * ncols]) for i in range(nrows)], ncols)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    # -- arithmetic ----------------------------------------------------
    def __matmul__(self, other: Mat) -> Mat:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
            return Mat.zeros(self.nrows, other.ncols)
        return Mat(_backend.kernel.matmul(self.rows, other.rows, self.ncols, other.ncols),
                   other.ncols)

    def __add__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Mat([[_n(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                   self.ncols)

    def __sub__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Mat([[_n(a - b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                   self.ncols)

    def __neg__(self) -> Mat:
        return Mat([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> Mat:
        c = rat(c)
        return Mat([[_n(c * a) for a in r] for r in self.rows], self.ncols)

    def kron(self, other: Mat) -> Mat:
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append([_n(a * b) if a and b else 0 for a in r for b in s])
        return Mat(rows, self.ncols * other.ncols)

    def hstack(self, other: Mat) -> Mat:
        if self.nrows != other.nrows:
            raise ValueError("hstack row mismatch")
        return Mat([list(r) + list(s) for r, s in zip(self.rows, other.rows)],
                   self.ncols + other.ncols)

    def vstack(self, other: Mat) -> Mat:
        if self.ncols != other.ncols:
            raise ValueError("vstack column mismatch")
        return Mat(self.rows + other.rows, self.ncols)

    def trace(self):
        return _n(sum(self.rows[i][i] for i in range(min(self.nrows, self.ncols))))


def vecmat(v, m: Mat) -> list:
    """Row vector times matrix."""
    if len(v) != m.nrows:
        raise ValueError("shape mismatch in vecmat")
    acc = [0] * m.ncols
    for x, r in zip(v, m.rows):
        if x:
            for j, y in enumerate(r):
                if y:
                    acc[j] += x * y
    return [_n(a) if a else 0 for a in acc]


def lincomb(coeffs, mats, nrows, ncols) -> Mat:
    """Sum of ``c_i * M_i``."""
    acc = [[0] * ncols for _ in range(nrows)]
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i, r in enumerate(m.rows):
            ai = acc[i]
            for j, y in enumerate(r):
                if y:
                    ai[j] += c * y
    return Mat([[_n(a) if a else 0 for a in r] for r in acc], ncols)


def _n(x):
    if type(x) is not int and x.denominator == 1:
        return x.numerator
    return x
