"""Finite-dimensional unital algebras over the rationals, by structure constants.

Basis elements ``b_0 .. b_{n-1}`` multiply as ``b_i b_j = sum_k c[i][j][k] b_k``.
Every algebra carries a declared complete set of orthogonal idempotents; the
module-theoretic code assumes they are primitive and split (checked by
:func:`validate_idempotents`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .linalg import Mat, Subspace, kernel_basis, rank, rat, row_basis, vecmat


class AlgebraError(ValueError):
    pass


class ZeroQuotientError(AlgebraError):
    """The ideal is the whole algebra; the quotient would be the zero ring."""


@dataclass
class Report:
    """Outcome of a validation: ``ok`` plus itemized failures."""

    ok: bool = True
    failures: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.failures.append(msg)

    def __bool__(self):
        return self.ok


class Algebra:
    """Associative unital algebra presented by (sparse) structure constants.

    ``table[i][j]`` is a list of ``(k, c)`` pairs with ``c != 0``.
    """

    def __init__(self, dim, table, unit, idempotents, labels=None, name=None, meta=None):
        self.dim = dim
        self.table = table
        self.unit = tuple(rat(x) for x in unit)
        self.idempotents = [tuple(rat(x) for x in f) for f in idempotents]
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(dim)]
        self.name = name
        self.meta = dict(meta or {})
        self._cache = {}

    @classmethod
    def from_dense(cls, consts, unit, idempotents, labels=None, name=None, meta=None):
        n = len(consts)
        table = [[[(k, rat(c)) for k, c in enumerate(consts[i][j]) if c] for j in range(n)]
                 for i in range(n)]
        return cls(n, table, unit, idempotents, labels, name, meta)

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim})"

    # -- elements --------------------------------------------------------
    def basis_vector(self, i) -> list:
        v = [0] * self.dim
        v[i] = 1
        return v

    def mul(self, a, b) -> list:
        """Product of two coefficient rows."""
        out = [0] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            ti = self.table[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in ti[j]:
                    out[k] += xy * c
        return [rat(v) if v else 0 for v in out]

    def element(self, coeffs) -> AlgebraElement:
        return AlgebraElement(self, tuple(rat(x) for x in coeffs))

    def const(self, i, j, k):
        for kk, c in self.table[i][j]:
            if kk == k:
                return c
        return 0

    def dense_consts(self) -> list:
        n = self.dim
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, v in self.table[i][j]:
                    c[i][j][k] = v
        return c

    # -- regular representations --------------------------------------
    @cached_property
    def left_mats(self) -> list[Mat]:
        """``L_a``: row ``j`` is ``b_a * b_j`` (so ``a.x = x @ L_a``)."""
        n = self.dim
        mats = []
        for a in range(n):
            rows = [[0] * n for _ in range(n)]
            for j in range(n):
                for k, c in self.table[a][j]:
                    rows[j][k] = c
            mats.append(Mat(rows, n))
        return mats

    @cached_property
    def right_mats(self) -> list[Mat]:
        """``R_a``: row ``j`` is ``b_j * b_a`` (so ``x.a = x @ R_a``)."""
        n = self.dim
        mats = []
        for a in range(n):
            rows = [[0] * n for _ in range(n)]
            for j in range(n):
                for k, c in self.table[j][a]:
                    rows[j][k] = c
            mats.append(Mat(rows, n))
        return mats

    def left_mult(self, a) -> Mat:
        return _combine(a, self.left_mats, self.dim)

    def right_mult(self, a) -> Mat:
        return _combine(a, self.right_mats, self.dim)

    # -- structure -----------------------------------------------------
    @cached_property
    def opposite(self) -> Algebra:
        n = self.dim
        table = [[self.table[j][i] for j in range(n)] for i in range(n)]
        op = Algebra(n, table, self.unit, self.idempotents, self.labels,
                     name=f"({self.name})^op" if self.name else None, meta={"opposite_of": self.name})
        op.__dict__["opposite"] = self
        return op

    @cached_property
    def radical(self) -> Mat:
        """Basis rows of the Jacobson radical (kernel of the trace form; char 0)."""
        n = self.dim
        traces = [self.left_mats[k].trace() for k in range(n)]
        form = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                form[i][j] = rat(sum(c * traces[k] for k, c in self.table[i][j]))
        return row_basis(kernel_basis(Mat(form, n)))

    @cached_property
    def radical_square(self) -> Mat:
        J = self.radical
        prods = [self.mul(x, y) for x in J.rows for y in J.rows]
        return row_basis(Mat(prods, self.dim)) if prods else Mat([], self.dim)

    @cached_property
    def generators(self) -> list[list]:
        """Coefficient rows generating the algebra: idempotents plus arrows.

        Arrows are ``f_s x f_t`` for ``x`` in the radical, chosen independent
        modulo the radical squared.  Falls back to the full basis if this set
        does not generate (checked by closure).
        """
        gens = [list(f) for f in self.idempotents]
        span = [list(r) for r in self.radical_square.rows]
        r0 = len(span) and rank(Mat(span, self.dim))
        for x in self.radical.rows:
            for f in self.idempotents:
                fx = self.mul(f, x)
                for g in self.idempotents:
                    y = self.mul(fx, g)
                    if not any(y):
                        continue
                    r1 = rank(Mat(span + [y], self.dim))
                    if r1 > r0:
                        span.append(y)
                        gens.append(y)
                        r0 = r1
        if _generated_dim(self, gens) == self.dim:
            return gens
        return [self.basis_vector(i) for i in range(self.dim)]

    @cached_property
    def idempotent_classes(self) -> list[list[int]]:
        """Declared idempotents grouped by isomorphism of ``f A`` (via ``f (A/J) g != 0``)."""
        J = Subspace(self.radical) if self.radical.nrows else None
        r = len(self.idempotents)
        parent = list(range(r))

        def find(i):
            while parent[i] != i:
                i = parent[i]
            return i

        for s in range(r):
            for t in range(s + 1, r):
                fAg = [self.mul(self.mul(self.idempotents[s], self.basis_vector(k)), self.idempotents[t])
                       for k in range(self.dim)]
                fAg = [v for v in fAg if any(v)]
                gAf = [self.mul(self.mul(self.idempotents[t], self.basis_vector(k)), self.idempotents[s])
                       for k in range(self.dim)]
                gAf = [v for v in gAf if any(v)]
                outside = any(J is None or not J.contains(v) for v in fAg + gAf)
                if outside:
                    parent[find(t)] = find(s)
        classes = {}
        for s in range(r):
            classes.setdefault(find(s), []).append(s)
        return sorted(classes.values())

    def is_commutative(self) -> bool:
        n = self.dim
        return all(sorted(self.table[i][j]) == sorted(self.table[j][i])
                   for i in range(n) for j in range(i + 1, n))


class AlgebraElement:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: Algebra, coeffs):
        if len(coeffs) != algebra.dim:
            raise AlgebraError("coefficient length differs from algebra dimension")
        self.algebra = algebra
        self.coeffs = tuple(coeffs)

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise AlgebraError("elements of different algebras")

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, tuple(self.algebra.mul(self.coeffs, other.coeffs)))
        c = rat(other)
        return AlgebraElement(self.algebra, tuple(rat(c * x) for x in self.coeffs))

    __rmul__ = __mul__

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, tuple(rat(a + b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, tuple(rat(a - b) for a, b in zip(self.coeffs, other.coeffs)))

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and other.algebra is self.algebra
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*{self.algebra.labels[i]}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def _combine(coeffs, mats, n) -> Mat:
    from .linalg import lincomb

    return lincomb(coeffs, mats, n, n)


def _generated_dim(A: Algebra, gens) -> int:
    """Dimension of the unital subalgebra generated by ``gens``."""
    span = Subspace(Mat([list(A.unit)] + [list(g) for g in gens], A.dim))
    while True:
        new = [A.mul(x, g) for x in span.basis.rows for g in gens]
        grown = Subspace(span.basis.vstack(Mat(new, A.dim))) if new else span
        if grown.dim == span.dim:
            return span.dim
        span = grown


# ----------------------------------------------------------------------------
# validation


def check_presentation(A: Algebra) -> Report:
    """Associativity, unit laws, idempotent identities (splitness is separate)."""
    rep = Report()
    n = A.dim
    if len(A.table) != n or any(len(r) != n for r in A.table):
        rep.fail("structure tensor has wrong shape")
        return rep
    for i in range(n):
        for j in range(n):
            bij = [0] * n
            for k, c in A.table[i][j]:
                bij[k] = c
            for k in range(n):
                left = A.mul(bij, A.basis_vector(k))
                bjk = [0] * n
                for m, c in A.table[j][k]:
                    bjk[m] = c
                right = A.mul(A.basis_vector(i), bjk)
                if left != right:
                    bad = next(l for l in range(n) if left[l] != right[l])
                    rep.fail(f"associativity fails at (i,j,k,l)=({i},{j},{k},{bad})")
                    if len(rep.failures) > 20:
                        return rep
    u = list(A.unit)
    for j in range(n):
        bj = A.basis_vector(j)
        if A.mul(u, bj) != bj:
            rep.fail(f"left unit law fails at basis element {j}")
        if A.mul(bj, u) != bj:
            rep.fail(f"right unit law fails at basis element {j}")
    fs = [list(f) for f in A.idempotents]
    for s, f in enumerate(fs):
        if A.mul(f, f) != f:
            rep.fail(f"idempotent {s} is not idempotent")
        for t, g in enumerate(fs):
            if s != t and any(A.mul(f, g)):
                rep.fail(f"idempotents {s},{t} not orthogonal")
    total = [rat(sum(col)) for col in zip(*fs)] if fs else [0] * n
    if total != u:
        rep.fail("idempotents do not sum to the unit")
    return rep


def validate_idempotents(A: Algebra) -> Report:
    """Orthogonality, completeness, and primitivity ``dim f (A/J) f == 1``."""
    rep = Report()
    base = check_presentation(A)
    for msg in base.failures:
        if "idempotent" in msg:
            rep.fail(msg)
    J = Subspace(A.radical)
    for s, f in enumerate(A.idempotents):
        fAf = [A.mul(A.mul(f, A.basis_vector(k)), f) for k in range(A.dim)]
        fAf = row_basis(Mat(fAf, A.dim))
        if J.dim:
            d = rank(fAf.vstack(J.basis)) - J.dim
        else:
            d = fAf.nrows
        if d != 1:
            rep.fail(f"idempotent {s} not primitive/split: dim f(A/J)f = {d}")
    return rep


# ----------------------------------------------------------------------------
# constructions


def opposite_algebra(A: Algebra) -> Algebra:
    return A.opposite


def tensor_algebras(A: Algebra, B: Algebra, name=None) -> Algebra:
    """``A (x)_K B`` with basis ``(i, j) -> i * dim B + j``; idempotents ``f_s (x) g_t``."""
    n, m = A.dim, B.dim
    table = [[None] * (n * m) for _ in range(n * m)]
    for i1, j1 in itertools.product(range(n), range(m)):
        for i2, j2 in itertools.product(range(n), range(m)):
            out = []
            for k, c in A.table[i1][i2]:
                for l, d in B.table[j1][j2]:
                    out.append((k * m + l, rat(c * d)))
            table[i1 * m + j1][i2 * m + j2] = out
    unit = [rat(a * b) for a in A.unit for b in B.unit]
    idem = [[rat(a * b) for a in f for b in g] for f in A.idempotents for g in B.idempotents]
    labels = [f"{a}*{b}" for a in A.labels for b in B.labels]
    meta = {"tensor_of": (A.name, B.name)}
    return Algebra(n * m, table, unit, idem, labels,
                   name=name or f"{A.name}(x){B.name}", meta=meta)


def enveloping_algebra(A: Algebra) -> Algebra:
    """``A^op (x)_K A``; basis index ``(i, j) -> i * n + j``."""
    return tensor_algebras(A.opposite, A, name=f"{A.name}^e")


def radical(A: Algebra) -> Mat:
    return A.radical


def center(A: Algebra) -> Mat:
    """Basis rows of ``{z : z b_i = b_i z for all i}``."""
    n = A.dim
    cols = n * n
    rows = []
    for a in range(n):
        r = [0] * cols
        for i in range(n):
            for k, c in A.table[a][i]:
                r[i * n + k] += c
            for k, c in A.table[i][a]:
                r[i * n + k] -= c
        rows.append(r)
    return row_basis(kernel_basis(Mat(rows, cols)))


@dataclass
class Corner:
    """``eAe`` presented on its own basis, with the inclusion into ``A``."""

    algebra: Algebra
    inclusion: Mat  # rows: basis of eAe as coefficient rows of A
    space: Subspace
    e: tuple

    def to_ambient(self, coeffs) -> list:
        return vecmat(list(coeffs), self.inclusion)

    def from_ambient(self, v) -> list:
        return self.space.coords(v)


def idempotent_subalgebra(A: Algebra, e) -> Corner:
    e = [rat(x) for x in (e.coeffs if isinstance(e, AlgebraElement) else e)]
    if A.mul(e, e) != e:
        raise AlgebraError("not an idempotent")
    gens = [A.mul(A.mul(e, A.basis_vector(k)), e) for k in range(A.dim)]
    space = Subspace(Mat(gens, A.dim))
    B = space.basis
    d = space.dim
    table = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            p = A.mul(B.rows[i], B.rows[j])
            table[i][j] = [(k, c) for k, c in enumerate(space.coords(p)) if c]
    unit = space.coords(e)
    subs = []
    for f in A.idempotents:
        f = list(f)
        if A.mul(A.mul(e, f), e) == f and any(f):
            subs.append(space.coords(f))
    total = [rat(sum(c)) for c in zip(*subs)] if subs else None
    idem = subs if total == unit else [unit]
    labels = []
    for row in B.rows:
        nz = [i for i, x in enumerate(row) if x]
        labels.append(A.labels[nz[0]] if len(nz) == 1 and row[nz[0]] == 1 else
                      "+".join(A.labels[i] for i in nz))
    sub = Algebra(d, table, unit, idem, labels, name=f"e{A.name}e", meta={"corner_of": A.name})
    return Corner(sub, B, space, tuple(e))


def ideal_closure(A: Algebra, generators) -> Subspace:
    """Two-sided ideal generated by the given coefficient rows."""
    gens = [list(g.coeffs if isinstance(g, AlgebraElement) else g) for g in generators]
    gens = [g for g in gens if any(g)]
    if not gens:
        return Subspace(Mat([], A.dim))
    span = Subspace(Mat(gens, A.dim))
    while True:
        new = []
        for x in span.basis.rows:
            new.append(x)
            for i in range(A.dim):
                new.append(vecmat(x, A.right_mats[i]))
                new.append(vecmat(x, A.left_mats[i]))
        grown = Subspace(Mat(new, A.dim))
        if grown.dim == span.dim:
            return span
        span = grown


@dataclass
class QuotientAlgebra:
    algebra: Algebra
    ideal: Subspace
    proj: Mat  # n x q
    free: list


def quotient_by_ideal(A: Algebra, generators) -> QuotientAlgebra:
    from .linalg import Quotient

    I = ideal_closure(A, generators)
    if I.dim == A.dim:
        raise ZeroQuotientError("the ideal is the whole algebra")
    Q = Quotient(I.basis)
    q = Q.dim
    table = [[None] * q for _ in range(q)]
    for a, i in enumerate(Q.free):
        for b, j in enumerate(Q.free):
            p = vecmat(_table_row(A, i, j), Q.proj)
            table[a][b] = [(k, c) for k, c in enumerate(p) if c]
    unit = vecmat(list(A.unit), Q.proj)
    idem = [vecmat(list(f), Q.proj) for f in A.idempotents]
    idem = [f for f in idem if any(f)]
    labels = [A.labels[i] for i in Q.free]
    B = Algebra(q, table, unit, idem, labels, name=f"{A.name}/I", meta={"quotient_of": A.name})
    return QuotientAlgebra(B, I, Q.proj, Q.free)


def _table_row(A: Algebra, i, j) -> list:
    out = [0] * A.dim
    for k, c in A.table[i][j]:
        out[k] = c
    return out


def two_sided_ideal_of_idempotent(A: Algebra, e) -> Subspace:
    """Basis of ``A e A``."""
    e = list(e.coeffs if isinstance(e, AlgebraElement) else e)
    return ideal_closure(A, [e])
