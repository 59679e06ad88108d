"""Exact rational linear algebra.

Row-vector convention: vectors are rows, a matrix acts by right
multiplication, so ``kernel_basis(m)`` is the *left* kernel
``{v : v @ m == 0}``.
"""

from __future__ import annotations

from . import _backend
from .matrix import Mat, lincomb, rat, rat_str, vecmat

__all__ = [
    "Mat", "rat", "rat_str", "vecmat", "lincomb", "backend_name", "rref", "rank",
    "kernel_basis", "nullspace", "solve_linear", "invert", "row_basis",
    "Subspace", "Quotient", "Coordinates",
]


def backend_name() -> str:
    return _backend.name


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    if m.nrows == 0 or m.ncols == 0:
        return Mat([], m.ncols), []
    rows, piv = _backend.kernel.rref(m.rows, m.ncols)
    return Mat(rows, m.ncols), piv


def rank(m: Mat) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    return _backend.kernel.rank(m.rows, m.ncols)


def _null_from_rref(R: Mat, piv: list[int], ncols: int) -> Mat:
    pivset = set(piv)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for r, p in enumerate(piv):
            x = R.rows[r][f]
            if x:
                v[p] = -x
        out.append(v)
    return Mat(out, ncols)


def nullspace(a: Mat) -> Mat:
    """Basis (as rows) of ``{x : a x^T = 0}``, i.e. the right null space."""
    R, piv = rref(a)
    return _null_from_rref(R, piv, a.ncols)


def kernel_basis(m: Mat) -> Mat:
    """Rows spanning the left kernel ``{v : v @ m = 0}``; ``nrows = m.nrows - rank``."""
    if m.ncols == 0:
        return Mat.identity(m.nrows)
    return nullspace(m.T())


def row_basis(m: Mat) -> Mat:
    """RREF basis of the row space."""
    return rref(m)[0]


def solve_linear(system: Mat, rhs: Mat) -> Mat | None:
    """One solution ``X`` of ``X @ system == rhs``, or ``None`` if inconsistent.

    Underdetermined systems return the particular solution with free
    coordinates set to zero; the homogeneous part is ``kernel_basis(system)``.
    """
    if system.ncols != rhs.ncols:
        raise ValueError(f"shape mismatch: system {system.shape}, rhs {rhs.shape}")
    n = system.nrows
    if rhs.nrows == 0:
        return Mat([], n)
    # column form: system^T X^T = rhs^T
    aug = system.T().hstack(rhs.T()) if system.ncols else Mat([], n + rhs.nrows)
    R, piv = rref(aug)
    if any(p >= n for p in piv):
        return None
    sol = [[0] * n for _ in range(rhs.nrows)]
    for r, p in enumerate(piv):
        row = R.rows[r]
        for k in range(rhs.nrows):
            sol[k][p] = row[n + k]
    return Mat(sol, n)


def invert(m: Mat) -> Mat | None:
    if not m.is_square():
        raise ValueError(f"cannot invert non-square {m.shape}")
    n = m.nrows
    if n == 0:
        return Mat([], 0)
    R, piv = rref(m.hstack(Mat.identity(n)))
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    return Mat([r[n:] for r in R.rows], n)


class Subspace:
    """A subspace of ``K^n`` held as an RREF basis; coordinates are read off pivots."""

    __slots__ = ("basis", "pivots", "ambient")

    def __init__(self, gens: Mat):
        self.ambient = gens.ncols
        self.basis, self.pivots = rref(gens)

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def coords(self, v) -> list:
        return [v[p] for p in self.pivots]

    def coords_mat(self, m: Mat) -> Mat:
        return m.take_cols(self.pivots)

    def contains(self, v) -> bool:
        return vecmat(self.coords(v), self.basis) == list(v)

    def contains_all(self, m: Mat) -> bool:
        return self.coords_mat(m) @ self.basis == m if m.nrows else True

    def restrict(self, op: Mat) -> Mat:
        """Matrix of an operator that leaves the subspace invariant, in basis coords."""
        return self.coords_mat(self.basis @ op)


class Quotient:
    """``K^n / span(relations)`` with a normal-form projection and a section.

    The quotient basis is the non-pivot coordinates of the RREF of the
    relation rows; ``proj`` (n x q) sends a vector to its class and
    ``section`` (q x n) picks unit-vector representatives.
    """

    __slots__ = ("ambient", "relations", "free", "proj", "section")

    def __init__(self, relations: Mat):
        n = relations.ncols
        self.ambient = n
        R, piv = rref(relations)
        self.relations = R
        pivset = set(piv)
        self.free = [j for j in range(n) if j not in pivset]
        col_of = {j: c for c, j in enumerate(self.free)}
        q = len(self.free)
        proj = [[0] * q for _ in range(n)]
        for j in self.free:
            proj[j][col_of[j]] = 1
        for r, p in enumerate(piv):
            row = R.rows[r]
            pr = proj[p]
            for j in self.free:
                x = row[j]
                if x:
                    pr[col_of[j]] = -x
        self.proj = Mat(proj, q)
        sec = [[0] * n for _ in range(q)]
        for c, j in enumerate(self.free):
            sec[c][j] = 1
        self.section = Mat(sec, n)

    @property
    def dim(self) -> int:
        return len(self.free)


class Coordinates:
    """Coordinates with respect to an arbitrary (independent) family of rows."""

    __slots__ = ("basis", "cols", "inv")

    def __init__(self, basis: Mat):
        self.basis = basis
        _, piv = rref(basis)
        if len(piv) != basis.nrows:
            raise ValueError("basis rows are linearly dependent")
        self.cols = piv
        inv = invert(basis.take_cols(piv))
        self.inv = inv

    def of(self, v) -> list:
        if not self.cols:
            return []
        return vecmat([v[c] for c in self.cols], self.inv)

    def of_mat(self, m: Mat) -> Mat:
        if not self.cols:
            return Mat([[] for _ in range(m.nrows)], 0)
        return m.take_cols(self.cols) @ self.inv
