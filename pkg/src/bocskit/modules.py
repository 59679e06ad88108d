"""Right modules, bimodules, hom spaces, duals and tensor products.

Conventions: module elements are row vectors; an algebra element ``a`` acts
on a right module by ``v.a = v @ rho(a)``, so ``rho(a) rho(b) = rho(ab)``.  A
left action is stored the same way, ``a.v = v @ lam(a)``, which makes ``lam``
multiplicative for the opposite algebra.  A homomorphism ``M -> N`` is a
``dim M x dim N`` matrix ``F`` with ``m |-> m @ F``; composition "f then g" is
``F @ G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import Algebra, Report
from .linalg import (Coordinates, Mat, Quotient, Subspace, kernel_basis, lincomb,
                     rank, rat, row_basis, vecmat)

_GROUND = None


def ground_field() -> Algebra:
    """The one-dimensional algebra ``K``."""
    global _GROUND
    if _GROUND is None:
        _GROUND = Algebra(1, [[[(0, 1)]]], [1], [[1]], ["1"], name="K")
    return _GROUND


class ModuleError(ValueError):
    pass


class Module:
    """A finite-dimensional right module: one action matrix per basis element."""

    def __init__(self, algebra: Algebra, dim: int, action, name=None):
        if len(action) != algebra.dim:
            raise ModuleError("need one action matrix per algebra basis element")
        self.algebra = algebra
        self.dim = dim
        self.action = list(action)
        self.name = name

    def __repr__(self):
        return f"Module({self.name or '?'}, dim={self.dim}, over {self.algebra.name})"

    def act(self, coeffs) -> Mat:
        return lincomb(coeffs, self.action, self.dim, self.dim)

    @cached_property
    def gen_actions(self) -> list[Mat]:
        return [self.act(g) for g in self.algebra.generators]

    def check(self) -> Report:
        """Unit acts as identity and ``rho(b_i) rho(b_j) = sum_k c_ijk rho(b_k)``."""
        rep = Report()
        A = self.algebra
        if any(m.shape != (self.dim, self.dim) for m in self.action):
            rep.fail("action matrix of wrong shape")
            return rep
        if self.act(A.unit) != Mat.identity(self.dim):
            rep.fail("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = lincomb([c for _, c in A.table[i][j]], [self.action[k] for k, _ in A.table[i][j]],
                              self.dim, self.dim)
                if lhs != rhs:
                    rep.fail(f"not multiplicative at ({i},{j})")
        return rep

    def with_name(self, name) -> Module:
        return Module(self.algebra, self.dim, self.action, name)


class Bimodule:
    """An (L, R)-bimodule: left action ``lact`` over L, right action ``ract`` over R."""

    def __init__(self, left: Algebra, right: Algebra, dim: int, lact, ract, name=None):
        if len(lact) != left.dim or len(ract) != right.dim:
            raise ModuleError("action lists do not match algebra dimensions")
        self.left = left
        self.right = right
        self.dim = dim
        self.lact = list(lact)
        self.ract = list(ract)
        self.name = name
        self.tensor = None  # TensorSpace when built by tensor_over

    def __repr__(self):
        return f"Bimodule({self.name or '?'}, dim={self.dim}, {self.left.name}-{self.right.name})"

    def left_act(self, coeffs) -> Mat:
        return lincomb(coeffs, self.lact, self.dim, self.dim)

    def right_act(self, coeffs) -> Mat:
        return lincomb(coeffs, self.ract, self.dim, self.dim)

    @cached_property
    def left_gen_actions(self) -> list[Mat]:
        return [self.left_act(g) for g in self.left.generators]

    @cached_property
    def right_gen_actions(self) -> list[Mat]:
        return [self.right_act(g) for g in self.right.generators]

    def right_module(self) -> Module:
        return Module(self.right, self.dim, self.ract, self.name)

    def left_module(self) -> Module:
        """The left structure as a right module over ``L^op``."""
        return Module(self.left.opposite, self.dim, self.lact, self.name)

    def enveloping_module(self, envelope: Algebra) -> Module:
        """Right module over ``L^op (x) R`` (basis ``(i, j) -> i * dim R + j``)."""
        acts = [l @ r for l in self.lact for r in self.ract]
        return Module(envelope, self.dim, acts, self.name)

    def check(self) -> Report:
        rep = Report()
        for msg in self.right_module().check().failures:
            rep.fail("right: " + msg)
        for msg in self.left_module().check().failures:
            rep.fail("left: " + msg)
        for a in self.left_gen_actions:
            for b in self.right_gen_actions:
                if a @ b != b @ a:
                    rep.fail("left and right actions do not commute")
                    return rep
        return rep


@dataclass
class ModuleHom:
    source: Module
    target: Module
    matrix: Mat

    def is_hom(self) -> bool:
        return is_hom(self.source, self.target, self.matrix)

    def then(self, other: ModuleHom) -> ModuleHom:
        """``other o self``."""
        return ModuleHom(self.source, other.target, self.matrix @ other.matrix)


def as_bimodule(M: Module) -> Bimodule:
    """A right A-module as a (K, A)-bimodule."""
    K = ground_field()
    return Bimodule(K, M.algebra, M.dim, [Mat.identity(M.dim)], M.action, M.name)


def as_left_bimodule(M: Module) -> Bimodule:
    """A right ``A^op``-module (= left A-module) as an (A, K)-bimodule."""
    K = ground_field()
    return Bimodule(M.algebra.opposite, K, M.dim, M.action, [Mat.identity(M.dim)], M.name)


# ----------------------------------------------------------------------------
# regular and dual modules


def regular_module(A: Algebra) -> Module:
    cache = A._cache
    if "regular" not in cache:
        cache["regular"] = Module(A, A.dim, A.right_mats, name=f"{A.name}_{A.name}")
    return cache["regular"]


def regular_bimodule(A: Algebra) -> Bimodule:
    cache = A._cache
    if "regular_bimodule" not in cache:
        cache["regular_bimodule"] = Bimodule(A, A, A.dim, A.left_mats, A.right_mats, name=A.name)
    return cache["regular_bimodule"]


def dual_module(M: Module) -> Module:
    """``D(M)``: a right module over ``A^op`` with action ``rho(a)^T``."""
    return Module(M.algebra.opposite, M.dim, [m.T() for m in M.action],
                  name=f"D({M.name})" if M.name else None)


def dual_bimodule(W: Bimodule) -> Bimodule:
    """``D(W)``: left action from W's right action, right action from W's left."""
    return Bimodule(W.right, W.left, W.dim, [m.T() for m in W.ract], [m.T() for m in W.lact],
                    name=f"D({W.name})" if W.name else None)


def dual_regular_bimodule(A: Algebra) -> Bimodule:
    cache = A._cache
    if "DA" not in cache:
        cache["DA"] = dual_bimodule(regular_bimodule(A))
    return cache["DA"]


def dual_hom(F: Mat) -> Mat:
    return F.T()


# ----------------------------------------------------------------------------
# hom spaces


def intertwiners(pairs, dx: int, dy: int) -> list[Mat]:
    """Basis of ``{F : X F = F Y for all (X, Y) in pairs}`` (``F`` is dx x dy).

    Constraints are imposed one pair at a time on the current solution
    space, which keeps every system small; the result is in RREF.
    """
    n = dx * dy
    if n == 0:
        return []
    basis = [Mat.unvec(v, dx, dy) for v in Mat.identity(n).rows]
    for X, Y in pairs:
        C = Mat([(X @ F - F @ Y).vec() for F in basis], n)
        if C.is_zero():
            continue
        K = kernel_basis(C)
        if K.nrows == 0:
            return []
        flat = row_basis(K @ Mat([F.vec() for F in basis], n))
        basis = [Mat.unvec(v, dx, dy) for v in flat.rows]
    return basis


def hom_basis(M: Module, N: Module) -> list[Mat]:
    if M.algebra is not N.algebra:
        raise ModuleError("modules over different algebras")
    return intertwiners(list(zip(M.gen_actions, N.gen_actions)), M.dim, N.dim)


def hom_space(M: Module, N: Module) -> list[ModuleHom]:
    return [ModuleHom(M, N, F) for F in hom_basis(M, N)]


def bimodule_hom_basis(V: Bimodule, W: Bimodule) -> list[Mat]:
    if V.left is not W.left or V.right is not W.right:
        raise ModuleError("bimodules over different algebras")
    pairs = list(zip(V.left_gen_actions, W.left_gen_actions))
    pairs += list(zip(V.right_gen_actions, W.right_gen_actions))
    return intertwiners(pairs, V.dim, W.dim)


def is_hom(M: Module, N: Module, F: Mat) -> bool:
    if F.shape != (M.dim, N.dim):
        return False
    return all(X @ F == F @ Y for X, Y in zip(M.gen_actions, N.gen_actions))


def is_bimodule_hom(V: Bimodule, W: Bimodule, F: Mat) -> bool:
    if F.shape != (V.dim, W.dim):
        return False
    return (all(X @ F == F @ Y for X, Y in zip(V.left_gen_actions, W.left_gen_actions))
            and all(X @ F == F @ Y for X, Y in zip(V.right_gen_actions, W.right_gen_actions)))


# ----------------------------------------------------------------------------
# sub, quotient, sums


def submodule(M: Module, gens: Mat, name=None) -> tuple[Module, Mat]:
    """Submodule spanned by the rows of ``gens`` (must be invariant).

    Returns the module and its inclusion matrix (basis rows in M).
    """
    S = Subspace(gens) if gens.nrows else Subspace(Mat([], M.dim))
    acts = [S.restrict(a) for a in M.action] if S.dim else [Mat([], 0) for _ in M.action]
    if S.dim and not all(S.contains_all(S.basis @ a) for a in M.gen_actions):
        raise ModuleError("subspace is not a submodule")
    return Module(M.algebra, S.dim, acts, name), S.basis


def generated_submodule(M: Module, vectors) -> Subspace:
    """Smallest submodule containing the given rows."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return Subspace(Mat([], M.dim))
    span = Subspace(Mat(vecs, M.dim))
    while True:
        new = list(span.basis.rows)
        for a in M.gen_actions:
            new.extend((span.basis @ a).rows)
        grown = Subspace(Mat(new, M.dim))
        if grown.dim == span.dim:
            return span
        span = grown


@dataclass
class QuotientModule:
    module: Module
    proj: Mat  # dim M x dim Q
    section: Mat  # dim Q x dim M


def quotient_module(M: Module, sub: Mat, name=None) -> QuotientModule:
    Q = Quotient(sub if sub.nrows else Mat([], M.dim))
    acts = [Q.section @ a @ Q.proj for a in M.action]
    return QuotientModule(Module(M.algebra, Q.dim, acts, name), Q.proj, Q.section)


def kernel_of(F: Mat) -> Mat:
    """Basis rows of ``{v : v F = 0}``."""
    return row_basis(kernel_basis(F)) if F.nrows else Mat([], 0)


def image_of(F: Mat) -> Mat:
    return row_basis(F)


def direct_sum(mods, name=None) -> tuple[Module, list[Mat], list[Mat]]:
    """Block-diagonal sum with inclusions and projections."""
    A = mods[0].algebra
    dim = sum(m.dim for m in mods)
    acts = [Mat.diag_blocks([m.action[i] for m in mods]) if dim else Mat([], 0)
            for i in range(A.dim)]
    incs, projs = [], []
    off = 0
    for m in mods:
        inc = [[0] * dim for _ in range(m.dim)]
        for r in range(m.dim):
            inc[r][off + r] = 1
        I = Mat(inc, dim)
        incs.append(I)
        projs.append(I.T() if m.dim else Mat([[] for _ in range(dim)], 0))
        off += m.dim
    return Module(A, dim, acts, name), incs, projs


def zero_module(A: Algebra) -> Module:
    return Module(A, 0, [Mat([], 0) for _ in range(A.dim)], name="0")


def annihilator(M: Module) -> Mat:
    """Basis rows of ``{a : M.a = 0}``."""
    A = M.algebra
    if M.dim == 0:
        return Mat.identity(A.dim)
    flat = Mat([m.vec() for m in M.action], M.dim * M.dim)
    return row_basis(kernel_basis(flat))


def is_faithful(M: Module) -> bool:
    return annihilator(M).nrows == 0


def weight_dims(M: Module) -> list[int]:
    """``dim M f_s`` for each declared idempotent."""
    return [rank(M.act(f)) if M.dim else 0 for f in M.algebra.idempotents]


# ----------------------------------------------------------------------------
# tensor products


@dataclass
class TensorSpace:
    """``X (x)_C Y`` as a quotient of the Kronecker space ``X (x)_K Y``.

    Kronecker index ``(x, y) -> x * dim Y + y``.  ``pairs[q]`` is the Kronecker
    pair whose unit vector represents quotient basis element ``q``.
    """

    left: Bimodule
    right: Bimodule
    quotient: Quotient
    pairs: list

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def proj(self) -> Mat:
        return self.quotient.proj

    @property
    def section(self) -> Mat:
        return self.quotient.section

    def project(self, kron_vec) -> list:
        return vecmat(kron_vec, self.proj)

    def elem(self, x, y) -> list:
        """Class of ``x (x) y`` for row vectors ``x`` in X and ``y`` in Y."""
        dy = self.right.dim
        out = [0] * self.dim
        prow = self.proj.rows
        for i, a in enumerate(x):
            if not a:
                continue
            base = i * dy
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for q, c in enumerate(prow[base + j]):
                    if c:
                        out[q] += ab * c
        return [rat(v) if v else 0 for v in out]


def _induced(pairs, dy, proj: Mat, op_left: Mat | None, op_right: Mat | None) -> Mat:
    """Matrix of ``op_left (x) op_right`` on the quotient, in quotient coordinates."""
    q = proj.ncols
    rows = []
    prow = proj.rows
    for (x, y) in pairs:
        acc = [0] * q
        xs = [(x, 1)] if op_left is None else [(i, c) for i, c in enumerate(op_left.rows[x]) if c]
        ys = [(y, 1)] if op_right is None else [(j, c) for j, c in enumerate(op_right.rows[y]) if c]
        for i, a in xs:
            for j, b in ys:
                ab = a * b
                for t, v in enumerate(prow[i * dy + j]):
                    if v:
                        acc[t] += ab * v
        rows.append([rat(v) if v else 0 for v in acc])
    return Mat(rows, q)


def tensor_over(X: Bimodule, Y: Bimodule, name=None) -> Bimodule:
    """``X (x)_C Y`` for an (L, C)-bimodule X and a (C, R)-bimodule Y.

    Relations ``x.c (x) y - x (x) c.y`` are imposed for algebra generators c;
    these span the full relation space.
    """
    if X.right is not Y.left:
        raise ModuleError("middle algebras differ")
    dx, dy = X.dim, Y.dim
    n = dx * dy
    rels = []
    for rc, lc in zip(X.right_gen_actions, Y.left_gen_actions):
        for x in range(dx):
            xr = rc.rows[x]
            for y in range(dy):
                row = [0] * n
                for xp, a in enumerate(xr):
                    if a:
                        row[xp * dy + y] += a
                for yp, b in enumerate(lc.rows[y]):
                    if b:
                        row[x * dy + yp] -= b
                if any(row):
                    rels.append(row)
    Q = Quotient(Mat(rels, n)) if rels else Quotient(Mat([], n))
    pairs = [divmod(j, dy) for j in Q.free]
    lact = [_induced(pairs, dy, Q.proj, l, None) for l in X.lact]
    ract = [_induced(pairs, dy, Q.proj, None, r) for r in Y.ract]
    T = Bimodule(X.left, Y.right, Q.dim, lact, ract, name=name)
    T.tensor = TensorSpace(X, Y, Q, pairs)
    return T


def tensor_of_homs(f: Mat, g: Mat, src: Bimodule, tgt: Bimodule, check=False) -> Mat:
    """Induced map ``f (x) g : src -> tgt`` between tensor bimodules."""
    S, T = src.tensor, tgt.tensor
    if S is None or T is None:
        raise ModuleError("tensor_of_homs needs tensor bimodules")
    if f.shape != (S.left.dim, T.left.dim) or g.shape != (S.right.dim, T.right.dim):
        raise ModuleError("hom shapes do not match the tensor factors")
    out = _induced(S.pairs, T.right.dim, T.proj, f, g)
    if check:
        # relation space must land in the relation space
        rel = S.quotient.relations
        if rel.nrows:
            image = rel @ f.kron(g) @ T.proj
            if not image.is_zero():
                raise ModuleError("f (x) g is not well defined on the tensor product")
    return out


def kronecker_bimodule(V: Bimodule, W: Bimodule, left: Algebra, right: Algebra, name=None) -> Bimodule:
    """``V (x)_K W`` over ``L1 (x) L2`` and ``R1 (x) R2``."""
    lact = [a.kron(b) for a in V.lact for b in W.lact]
    ract = [a.kron(b) for a in V.ract for b in W.ract]
    return Bimodule(left, right, V.dim * W.dim, lact, ract, name=name)


# ----------------------------------------------------------------------------
# hom modules


class HomModule(Module):
    """``Hom_R(W, N)`` for an (L, R)-bimodule W: a right L-module via ``(f.a)(w) = f(a.w)``.

    ``basis[h]`` is a ``dim W x dim N`` matrix; elements are coordinate rows.
    """

    def __init__(self, W: Bimodule, N: Module, name=None):
        if W.right is not N.algebra:
            raise ModuleError("Hom_A(W, N) needs W's right algebra to match N's")
        basis = intertwiners(list(zip(W.right_gen_actions, N.gen_actions)), W.dim, N.dim)
        self.source = W
        self.target = N
        self.basis = basis
        self.flat = Mat([b.vec() for b in basis], W.dim * N.dim)
        self.coords = Coordinates(self.flat) if basis else None
        acts = []
        for la in W.lact:
            if basis:
                moved = Mat([(la @ b).vec() for b in basis], W.dim * N.dim)
                acts.append(self.coords.of_mat(moved))
            else:
                acts.append(Mat([], 0))
        super().__init__(W.left, len(basis), acts, name=name)

    def realize(self, coords) -> Mat:
        """Concrete ``dim W x dim N`` matrix of the hom with these coordinates."""
        W, N = self.source, self.target
        if not self.basis:
            return Mat.zeros(W.dim, N.dim)
        return Mat.unvec(vecmat(list(coords), self.flat), W.dim, N.dim)

    def coordinates(self, F: Mat) -> list:
        if not self.basis:
            return []
        return self.coords.of(F.vec())

    def coordinates_many(self, flats: Mat) -> Mat:
        """Rows of ``flats`` are vectorized homs; returns their coordinate rows."""
        if not self.basis:
            return Mat([[] for _ in range(flats.nrows)], 0)
        return self.coords.of_mat(flats)

    def induced(self, other: HomModule, G: Mat) -> Mat:
        """``Hom(W, g)``: post-composition with ``g : N -> N'`` in coordinates."""
        if not self.basis:
            return Mat([], other.dim)
        moved = Mat([(b @ G).vec() for b in self.basis], self.source.dim * G.ncols)
        return other.coordinates_many(moved)


def hom_module(W: Bimodule, N: Module, name=None) -> HomModule:
    return HomModule(W, N, name=name)


def restrict_to_corner(M: Module, corner) -> Module:
    """``M e`` as a right ``eAe``-module (action matrices cut to the corner basis)."""
    Me = row_basis(M.act(corner.e)) if M.dim else Mat([], 0)
    S = Subspace(Me) if Me.nrows else None
    acts = []
    for row in corner.inclusion.rows:
        op = M.act(row)
        acts.append(S.restrict(op) if S else Mat([], 0))
    return Module(corner.algebra, Me.nrows, acts, name=f"{M.name}e" if M.name else None)
