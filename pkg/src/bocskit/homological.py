"""Covers, hulls, minimal resolutions, Ext, dominant dimension, Nakayama functors."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Algebra, Report, quotient_by_ideal, two_sided_ideal_of_idempotent
from .linalg import Mat, invert, kernel_basis, rank, row_basis
from .modules import (Bimodule, HomModule, Module, as_bimodule, dual_bimodule, dual_module,
                      dual_regular_bimodule, hom_basis, intertwiners, kernel_of,
                      quotient_module, regular_module, submodule, tensor_of_homs, tensor_over,
                      zero_module)


def _radical_of(M: Module) -> Mat:
    """Basis rows of ``M J``."""
    A = M.algebra
    if M.dim == 0 or A.radical.nrows == 0:
        return Mat([], M.dim)
    rows = []
    for j in A.radical.rows:
        rows.extend(M.act(j).rows)
    return row_basis(Mat(rows, M.dim))


def socle(M: Module) -> Mat:
    """Basis rows of ``{m : m J = 0}``."""
    A = M.algebra
    if M.dim == 0:
        return Mat([], 0)
    if A.radical.nrows == 0:
        return Mat.identity(M.dim)
    big = M.act(A.radical.rows[0])
    for j in A.radical.rows[1:]:
        big = big.hstack(M.act(j))
    return row_basis(kernel_basis(big))


def socle_module(M: Module) -> Module:
    return submodule(M, socle(M))[0]


@dataclass
class Top:
    module: Module
    proj: Mat
    multiplicities: list  # per idempotent class representative


def top(M: Module) -> Top:
    A = M.algebra
    q = quotient_module(M, _radical_of(M))
    reps = [cls[0] for cls in A.idempotent_classes]
    mult = [rank(q.module.act(A.idempotents[s])) if q.module.dim else 0 for s in reps]
    return Top(q.module, q.proj, mult)


def socle_multiplicities(M: Module) -> list:
    S = socle_module(M)
    A = M.algebra
    return [rank(S.act(A.idempotents[cls[0]])) if S.dim else 0 for cls in A.idempotent_classes]


def simple_module(A: Algebra, s: int) -> Module:
    from .corpus import projective_module

    P, _ = projective_module(A, s)
    return top(P).module.with_name(f"S{s}")


# ----------------------------------------------------------------------------
# projective covers and injective hulls


@dataclass
class Cover:
    module: Module  # P
    map: Mat  # P -> M
    summands: list  # idempotent index of each f A summand


def projective_cover(M: Module) -> Cover:
    """``P = (+) f_s A`` mapping onto ``M``; lifts a basis of the top, so it is minimal."""
    from .corpus import projective_module
    from .modules import direct_sum

    A = M.algebra
    if M.dim == 0:
        return Cover(zero_module(A), Mat([], 0), [])
    rad = _radical_of(M)
    span = [list(r) for r in rad.rows]
    r0 = len(span)
    blocks, mods, summands = [], [], []
    for cls in A.idempotent_classes:
        s = cls[0]
        f = A.idempotents[s]
        for v in row_basis(M.act(f)).rows:
            r1 = rank(Mat(span + [v], M.dim))
            if r1 == r0:
                continue
            span.append(list(v))
            r0 = r1
            P, basis = projective_module(A, s)
            # x in f A (ambient coords) goes to v . x
            blocks.append(Mat([_apply(M, v, x) for x in basis.rows], M.dim))
            mods.append(P)
            summands.append(s)
    P, _, _ = direct_sum(mods, name="P")
    pi = blocks[0]
    for b in blocks[1:]:
        pi = pi.vstack(b)
    return Cover(P, pi, summands)


def _apply(M: Module, v, a) -> list:
    from .linalg import vecmat

    return vecmat(list(v), M.act(a))


@dataclass
class Hull:
    module: Module  # I
    map: Mat  # M -> I
    summands: list  # idempotent index of each D(A f_s) summand


def injective_hull(M: Module) -> Hull:
    """``I = D(P)`` where ``P -> D(M)`` is a projective cover over ``A^op``."""
    c = projective_cover(dual_module(M))
    I = dual_module(c.module)
    return Hull(I.with_name("I"), c.map.T() if M.dim else Mat([], I.dim), c.summands)


def is_projective(M: Module) -> bool:
    return projective_cover(M).module.dim == M.dim


def is_injective(M: Module) -> bool:
    return injective_hull(M).module.dim == M.dim


# ----------------------------------------------------------------------------
# resolutions


@dataclass
class Resolution:
    """``terms[k]`` with ``maps[k]``.

    Injective: ``maps[0] : M -> I_0`` and ``maps[k] : I_{k-1} -> I_k``.
    Projective: ``maps[0] : P_0 -> M`` and ``maps[k] : P_k -> P_{k-1}``.
    ``terminated`` means the next cokernel (kernel) is zero.  ``syzygies[k]``
    is the cokernel of ``maps[k]`` (kernel, for projective resolutions).
    """

    kind: str
    module: Module
    terms: list = field(default_factory=list)
    maps: list = field(default_factory=list)
    terminated: bool = False
    syzygies: list = field(default_factory=list)

    def __len__(self):
        return len(self.terms)

    def check_exact(self) -> Report:
        rep = Report()
        inj = self.kind == "injective"
        dims = [self.module.dim] + [t.dim for t in self.terms]
        ranks = [rank(m) if m.nrows and m.ncols else 0 for m in self.maps]
        if inj:
            if self.maps and ranks[0] != self.module.dim:
                rep.fail("M -> I_0 is not injective")
        elif self.maps and ranks[0] != self.module.dim:
            rep.fail("P_0 -> M is not surjective")
        for k in range(1, len(self.maps)):
            a, b = self.maps[k - 1], self.maps[k]
            comp = (a @ b) if inj else (b @ a)
            if comp.nrows and comp.ncols and not comp.is_zero():
                rep.fail(f"composite at node {k - 1} is nonzero")
            # image of the incoming map equals kernel of the outgoing one
            if ranks[k - 1] + ranks[k] != dims[k]:
                rep.fail(f"not exact at node {k - 1}")
        if self.terminated and self.maps:
            last = ranks[-1]
            if last != dims[-1]:
                rep.fail("resolution claims to terminate but last map is not onto/into")
        return rep


def minimal_injective_resolution(M: Module, cap: int) -> Resolution:
    res = Resolution("injective", M)
    cur, into = M, None  # into: previous term -> cur (a quotient map)
    if M.dim == 0:
        res.terminated = True
        return res
    for _ in range(cap):
        h = injective_hull(cur)
        res.terms.append(h.module)
        res.maps.append(h.map if into is None else into @ h.map)
        q = quotient_module(h.module, row_basis(h.map))
        res.syzygies.append(q.module)
        if q.module.dim == 0:
            res.terminated = True
            return res
        cur, into = q.module, q.proj
    return res


def minimal_projective_resolution(M: Module, cap: int) -> Resolution:
    res = Resolution("projective", M)
    cur, out = M, None  # out: cur -> previous term (an inclusion)
    if M.dim == 0:
        res.terminated = True
        return res
    for _ in range(cap):
        c = projective_cover(cur)
        res.terms.append(c.module)
        res.maps.append(c.map if out is None else c.map @ out)
        K = kernel_of(c.map)
        if K.nrows == 0:
            res.terminated = True
            return res
        cur, out = submodule(c.module, K)
        res.syzygies.append(cur)
    return res


# ----------------------------------------------------------------------------
# Ext and dominant dimension


def ext_dims(X: Module, M: Module, upto: int) -> tuple[list[int], bool]:
    """``[dim Ext^i(X, M) for i < upto]`` and whether the resolution of X ended in range."""
    res = minimal_projective_resolution(X, upto + 1)
    homs = [hom_basis(P, M) for P in res.terms]
    n = len(res.terms)

    def delta_rank(i):
        # Hom(P_i, M) -> Hom(P_{i+1}, M), F |-> d_{i+1} F
        if i < 0 or i + 1 >= n or not homs[i]:
            return 0
        d = res.maps[i + 1]
        imgs = [(d @ F).vec() for F in homs[i]]
        return rank(Mat(imgs, len(imgs[0]))) if imgs[0] else 0

    out = []
    for i in range(upto):
        h = len(homs[i]) if i < n else 0
        out.append(h - delta_rank(i) - delta_rank(i - 1))
    return out, res.terminated


def ext_dim(X: Module, M: Module, i: int) -> int:
    return ext_dims(X, M, i + 1)[0][i]


@dataclass(frozen=True)
class DomDim:
    """A dominant dimension: ``finite`` (with value), ``atleast`` (value = cap) or ``infinite``."""

    kind: str
    value: int | None = None

    @classmethod
    def finite(cls, n):
        return cls("finite", n)

    @classmethod
    def atleast(cls, cap):
        return cls("atleast", cap)

    @classmethod
    def infinite(cls):
        return cls("infinite")

    def __str__(self):
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "atleast":
            return f">={self.value}"
        return "infinite"

    def to_json(self):
        return self.value if self.kind == "finite" else str(self)

    def at_least(self, k: int) -> bool | None:
        """``domdim >= k``; ``None`` if the cap is too low to tell."""
        if self.kind == "infinite":
            return True
        if self.kind == "finite":
            return self.value >= k
        return True if self.value >= k else None

    def compatible(self, other: DomDim) -> bool:
        """Equal, or both beyond what was resolved (``>=cap`` against ``>=cap``/infinite)."""
        if self == other:
            return True
        vague = {"atleast", "infinite"}
        if self.kind in vague and other.kind in vague:
            lo = min(d.value for d in (self, other) if d.kind == "atleast")
            return all(d.kind != "atleast" or d.value >= lo for d in (self, other))
        return False


def dominant_dimension(M: Module, cap: int = 8) -> DomDim:
    """Number of leading projective terms in the minimal injective resolution.

    Infinite is reported when the resolution stops, or when a cosyzygy
    repeats up to isomorphism while every term so far is projective (the
    resolution is then periodic).
    """
    from .iso import iso_modules

    if cap < 1:
        raise ValueError("cap must be >= 1")
    res = minimal_injective_resolution(M, cap)
    seen = [M]
    for k, I in enumerate(res.terms):
        if not is_projective(I):
            return DomDim.finite(k)
        if k < len(res.syzygies):
            Z = res.syzygies[k]
            if any(Z.dim == Y.dim and iso_modules(Z, Y).is_iso for Y in seen):
                return DomDim.infinite()
            seen.append(Z)
    if res.terminated:
        return DomDim.infinite()
    return DomDim.atleast(cap)


def dominant_dimension_via_ext(M: Module, e, cap: int = 8) -> DomDim:
    """``inf{i : Ext^i(A/AeA, M) != 0}`` for ``eA`` minimal faithful projective-injective."""
    A = M.algebra
    X = quotient_by_ideal_module(A, e)
    if X.dim == 0 or M.dim == 0:
        return DomDim.infinite()
    dims, terminated = ext_dims(X, M, cap)
    for i, d in enumerate(dims):
        if d:
            return DomDim.finite(i)
    return DomDim.infinite() if terminated else DomDim.atleast(cap)


def quotient_by_ideal_module(A: Algebra, e) -> Module:
    """``A/AeA`` as a right A-module."""
    I = two_sided_ideal_of_idempotent(A, e)
    return quotient_module(regular_module(A), I.basis if I.dim else Mat([], A.dim)).module


def quotient_algebra_dim(A: Algebra, e) -> int:
    """``dim A/AeA`` (0 when ``AeA = A``)."""
    from .algebra import ZeroQuotientError

    try:
        return quotient_by_ideal(A, [list(e)]).algebra.dim
    except ZeroQuotientError:
        return 0


# ----------------------------------------------------------------------------
# Nakayama functors


def nakayama(M: Module) -> Module:
    """``nu(M) = M (x)_A D(A)``; the tensor data is kept on ``.tensor_bimodule``."""
    T = tensor_over(as_bimodule(M), dual_regular_bimodule(M.algebra))
    N = T.right_module()
    N.name = f"nu({M.name})" if M.name else None
    N.tensor_bimodule = T
    return N


def nakayama_map(F: Mat, src: Module, tgt: Module) -> Mat:
    """``nu(f)`` for ``f : M -> N``, given ``src = nakayama(M)`` and ``tgt = nakayama(N)``."""
    D = dual_regular_bimodule(src.algebra)
    return tensor_of_homs(F, Mat.identity(D.dim), src.tensor_bimodule, tgt.tensor_bimodule)


def nakayama_inverse(M: Module) -> HomModule:
    """``nu^{-1}(M) = Hom_A(D(A), M)``."""
    return HomModule(dual_regular_bimodule(M.algebra), M,
                     name=f"nu-({M.name})" if M.name else None)


def nakayama_inverse_map(F: Mat, src: HomModule, tgt: HomModule) -> Mat:
    return src.induced(tgt, F)


def check_nakayama_exactness(M: Module) -> Report:
    """Apply ``nu^{-1}`` to ``0 -> M -> I_0 -> I_1``; the result must be exact at ``nu^{-1}(M)``
    and ``nu^{-1}(I_0)``."""
    rep = Report()
    res = minimal_injective_resolution(M, 2)
    if not res.terms:
        return rep
    H = nakayama_inverse(M)
    H0 = nakayama_inverse(res.terms[0])
    d0 = nakayama_inverse_map(res.maps[0], H, H0)
    r0 = rank(d0) if d0.nrows and d0.ncols else 0
    if r0 != H.dim:
        rep.fail("nu^-1(M) -> nu^-1(I_0) is not injective")
    if len(res.terms) > 1:
        H1 = nakayama_inverse(res.terms[1])
        d1 = nakayama_inverse_map(res.maps[1], H0, H1)
        r1 = rank(d1) if d1.nrows and d1.ncols else 0
        if d0.nrows and d1.ncols and not (d0 @ d1).is_zero():
            rep.fail("composite nu^-1(I_0) map is nonzero")
        if r0 + r1 != H0.dim:
            rep.fail("not exact at nu^-1(I_0)")
    elif H0.dim != r0:
        rep.fail("not exact at nu^-1(I_0)")
    return rep


def hom_tensor_duality_iso(Y: Bimodule, Z: Bimodule) -> tuple[Mat, Report]:
    """``Hom_A(Y, D(Z)) -> D(Y (x)_A Z)``, ``f |-> (y (x) z |-> f(y)(z))``.

    Returned in the bases (intertwiner basis of the hom space) x (dual of the
    tensor quotient basis), together with a report checking invertibility and
    linearity for both outer actions.
    """
    rep = Report()
    DZ = dual_bimodule(Z)
    basis = intertwiners(list(zip(Y.right_gen_actions, DZ.right_gen_actions)), Y.dim, Z.dim)
    T = tensor_over(Y, Z)
    pairs = T.tensor.pairs
    Phi = Mat([[F.rows[y][z] for y, z in pairs] for F in basis], T.dim)
    if len(basis) != T.dim or (T.dim and invert(Phi) is None):
        rep.fail(f"not invertible: dim Hom = {len(basis)}, dim D(Y(x)Z) = {T.dim}")
        return Phi, rep
    if not basis:
        return Phi, rep
    from .linalg import Coordinates

    coords = Coordinates(Mat([F.vec() for F in basis], Y.dim * Z.dim))
    DT = dual_bimodule(T)
    # (f.a)(y) = f(a.y) matches the right action of D(T) (left action of T)
    for a, t in zip(Y.lact, DT.ract):
        moved = coords.of_mat(Mat([(a @ F).vec() for F in basis], Y.dim * Z.dim))
        if moved @ Phi != Phi @ t:
            rep.fail("not right linear")
            break
    # (a.f)(y) = a.f(y) in D(Z) matches the left action of D(T)
    for a, t in zip(DZ.lact, DT.lact):
        moved = coords.of_mat(Mat([(F @ a).vec() for F in basis], Y.dim * Z.dim))
        if moved @ Phi != Phi @ t:
            rep.fail("not left linear")
            break
    return Phi, rep
