"""Corings (bocses), their axioms, and the module category of a bocs.

A coring on ``A`` is an A-bimodule ``W`` with bimodule maps
``mu : W -> W (x)_A W`` and ``eps : W -> A`` satisfying counit and
coassociativity laws.  All maps are matrices against the stored quotient
bases of the tensor products, so every axiom is a matrix equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Algebra, Report, idempotent_subalgebra, tensor_algebras, two_sided_ideal_of_idempotent
from .linalg import Mat, invert, rank, solve_linear, vecmat
from .modules import (Bimodule, HomModule, Module, ModuleHom, dual_regular_bimodule, hom_basis,
                      is_bimodule_hom, kronecker_bimodule, regular_bimodule, restrict_to_corner,
                      tensor_of_homs, tensor_over)
from .linalg import Subspace, row_basis


class CoringError(ValueError):
    pass


class Coring:
    """``(A, W, mu, eps)``; ``verified`` is None (unchecked), True, or False."""

    def __init__(self, algebra: Algebra, W: Bimodule, mu: Mat, eps: Mat, name=None):
        if W.left is not algebra or W.right is not algebra:
            raise CoringError("W must be an A-bimodule")
        self.algebra = algebra
        self.W = W
        self.mu = mu
        self.eps = eps
        self.name = name
        self.verified = None
        self.report = None
        self.idempotent = None  # e when built from Ae (x)_eAe eA
        self.origin = None  # (source coring, theta) when transported

    def __repr__(self):
        return f"Coring({self.name or '?'}, dim W={self.W.dim}, verified={self.verified})"

    def _get(self, key, build):
        cache = self.__dict__.setdefault("_tensors", {})
        if key not in cache:
            cache[key] = build()
        return cache[key]

    @property
    def WW(self) -> Bimodule:
        return self._get("WW", lambda: tensor_over(self.W, self.W))

    @property
    def WA(self) -> Bimodule:
        return self._get("WA", lambda: tensor_over(self.W, regular_bimodule(self.algebra)))

    @property
    def AW(self) -> Bimodule:
        return self._get("AW", lambda: tensor_over(regular_bimodule(self.algebra), self.W))

    @property
    def WW_W(self) -> Bimodule:
        return self._get("WW_W", lambda: tensor_over(self.WW, self.W))

    @property
    def W_WW(self) -> Bimodule:
        return self._get("W_WW", lambda: tensor_over(self.W, self.WW))

    def c_left(self) -> Mat:
        """``W -> W (x)_A A``, ``w |-> w (x) 1``."""
        T = self.WA.tensor
        u = list(self.algebra.unit)
        return Mat([T.elem(_unit(self.W.dim, w), u) for w in range(self.W.dim)], T.dim)

    def c_right(self) -> Mat:
        """``W -> A (x)_A W``, ``w |-> 1 (x) w``."""
        T = self.AW.tensor
        u = list(self.algebra.unit)
        return Mat([T.elem(u, _unit(self.W.dim, w)) for w in range(self.W.dim)], T.dim)

    def associator(self) -> Mat:
        """``(W (x) W) (x) W -> W (x) (W (x) W)`` on quotient bases."""
        L, R, P = self.WW_W.tensor, self.W_WW.tensor, self.WW.tensor
        dW = self.W.dim
        rows = []
        for q, w3 in L.pairs:
            w1, w2 = P.pairs[q]
            inner = P.proj.rows[w2 * dW + w3]  # class of w2 (x) w3
            acc = [0] * R.dim
            for qq, c in enumerate(inner):
                if c:
                    for t, v in enumerate(R.proj.rows[w1 * P.dim + qq]):
                        if v:
                            acc[t] += c * v
            rows.append(acc)
        return Mat.from_rows(rows, R.dim)


def _unit(n, i) -> list:
    v = [0] * n
    v[i] = 1
    return v


# ----------------------------------------------------------------------------
# axioms


def verify_coring_axioms(C: Coring) -> Report:
    """Bimodule linearity of ``mu`` and ``eps``, both counit laws, coassociativity."""
    rep = Report()
    A, W = C.algebra, C.W
    R = regular_bimodule(A)
    I = Mat.identity(W.dim)
    if C.mu.shape != (W.dim, C.WW.dim) or C.eps.shape != (W.dim, A.dim):
        rep.fail("mu or eps has the wrong shape")
    else:
        if not is_bimodule_hom(W, C.WW, C.mu):
            rep.fail("mu is not a bimodule map")
        if not is_bimodule_hom(W, R, C.eps):
            rep.fail("eps is not a bimodule map")
        left = C.mu @ tensor_of_homs(I, C.eps, C.WW, C.WA)
        if left != C.c_left():
            rep.fail("counit law (1 (x) eps) mu = c_l fails")
        right = C.mu @ tensor_of_homs(C.eps, I, C.WW, C.AW)
        if right != C.c_right():
            rep.fail("counit law (eps (x) 1) mu = c_r fails")
        lhs = C.mu @ tensor_of_homs(C.mu, I, C.WW, C.WW_W) @ C.associator()
        rhs = C.mu @ tensor_of_homs(I, C.mu, C.WW, C.W_WW)
        if lhs != rhs:
            rep.fail("coassociativity (mu (x) 1) mu = (1 (x) mu) mu fails")
    C.verified = rep.ok
    C.report = rep
    return rep


# ----------------------------------------------------------------------------
# constructions


def trivial_coring(A: Algebra) -> Coring:
    """``(A, A)`` with ``mu(a) = a (x) 1`` and ``eps = id``."""
    W = regular_bimodule(A)
    C = Coring(A, W, Mat([], 0), Mat.identity(A.dim), name=f"trivial({A.name})")
    C.mu = Mat([C.WW.tensor.elem(_unit(A.dim, a), list(A.unit)) for a in range(A.dim)], C.WW.dim)
    C.idempotent = tuple(A.unit)
    verify_coring_axioms(C)
    return C


@dataclass
class IdempotentBimodules:
    """``Ae`` as an (A, eAe)-bimodule and ``eA`` as an (eAe, A)-bimodule."""

    corner: object
    Ae: Bimodule
    eA: Bimodule
    Ae_basis: Mat  # rows in A coordinates
    eA_basis: Mat


def idempotent_bimodules(A: Algebra, e) -> IdempotentBimodules:
    e = list(e)
    corner = idempotent_subalgebra(A, e)
    E = corner.algebra
    Ae_basis = row_basis(A.right_mult(e))
    eA_basis = row_basis(A.left_mult(e))
    SAe, SeA = Subspace(Ae_basis), Subspace(eA_basis)
    # left A on Ae: x |-> a x ; right eAe on Ae: x |-> x c
    Ae = Bimodule(A, E, SAe.dim,
                  [SAe.restrict(L) for L in A.left_mats],
                  [SAe.restrict(A.right_mult(c)) for c in corner.inclusion.rows], name="Ae")
    eA = Bimodule(E, A, SeA.dim,
                  [SeA.restrict(A.left_mult(c)) for c in corner.inclusion.rows],
                  [SeA.restrict(R) for R in A.right_mats], name="eA")
    return IdempotentBimodules(corner, Ae, eA, SAe.basis, SeA.basis)


def coring_from_idempotent(A: Algebra, e) -> Coring:
    """``W = Ae (x)_eAe eA`` with ``mu(x (x) y) = (x (x) e) (x) (e (x) y)``, ``eps(x (x) y) = xy``.

    The probasis of ``eA`` is ``{e}`` with dual probasis ``x |-> e x``.
    """
    e = [x for x in e]
    ib = idempotent_bimodules(A, e)
    W = tensor_over(ib.Ae, ib.eA, name="Ae(x)eA")
    T = W.tensor
    SAe, SeA = Subspace(ib.Ae_basis), Subspace(ib.eA_basis)
    e_in_Ae, e_in_eA = SAe.coords(e), SeA.coords(e)
    C = Coring(A, W, Mat([], 0), Mat([], 0), name=f"Ae(x)eA({A.name})")
    WW = C.WW.tensor
    mu_rows, eps_rows = [], []
    for x, y in T.pairs:
        u = T.elem(_unit(ib.Ae.dim, x), e_in_eA)
        v = T.elem(e_in_Ae, _unit(ib.eA.dim, y))
        mu_rows.append(WW.elem(u, v))
        eps_rows.append(A.mul(ib.Ae_basis.rows[x], ib.eA_basis.rows[y]))
    C.mu = Mat(mu_rows, WW.dim)
    C.eps = Mat(eps_rows, A.dim)
    C.idempotent = tuple(e)
    C.bimodules = ib
    verify_coring_axioms(C)
    return C


def transport_coring(C: Coring, theta: Mat, target: Bimodule, name=None) -> Coring:
    """Move ``C`` along an invertible bimodule map ``theta : W -> target``."""
    if not is_bimodule_hom(C.W, target, theta):
        raise CoringError("theta is not a bimodule map")
    inv = invert(theta) if theta.is_square() else None
    if inv is None:
        raise CoringError("theta is not invertible")
    D = Coring(C.algebra, target, Mat([], 0), inv @ C.eps, name=name)
    D.mu = inv @ C.mu @ tensor_of_homs(theta, theta, C.WW, D.WW)
    D.idempotent = C.idempotent
    D.origin = (C, theta)
    verify_coring_axioms(D)
    return D


def tensor_corings(C1: Coring, C2: Coring, algebra: Algebra | None = None) -> Coring:
    """``(A1 (x) A2, W1 (x) W2)`` with ``mu = mu1 (x) mu2`` (middle factors swapped) and
    ``eps = eps1 (x) eps2``."""
    A1, A2 = C1.algebra, C2.algebra
    A = algebra or tensor_algebras(A1, A2)
    W = kronecker_bimodule(C1.W, C2.W, A, A, name="W1(x)W2")
    C = Coring(A, W, Mat([], 0), C1.eps.kron(C2.eps), name=f"{C1.name}(x){C2.name}")
    d2 = C2.W.dim
    T1, T2 = C1.WW.tensor, C2.WW.tensor
    WWt = C.WW.tensor
    dW = W.dim
    rows = []
    for w1 in range(C1.W.dim):
        m1 = [(T1.pairs[q], c) for q, c in enumerate(C1.mu.rows[w1]) if c]
        for w2 in range(d2):
            m2 = [(T2.pairs[q], c) for q, c in enumerate(C2.mu.rows[w2]) if c]
            kron = {}
            for (a1, b1), c in m1:
                for (a2, b2), d in m2:
                    key = (a1 * d2 + a2) * dW + (b1 * d2 + b2)
                    kron[key] = kron.get(key, 0) + c * d
            acc = [0] * WWt.dim
            for key, v in kron.items():
                for t, p in enumerate(WWt.proj.rows[key]):
                    if p:
                        acc[t] += v * p
            rows.append(acc)
    C.mu = Mat.from_rows(rows, WWt.dim)
    if C1.idempotent is not None and C2.idempotent is not None:
        C.idempotent = tuple(a * b for a in C1.idempotent for b in C2.idempotent)
    verify_coring_axioms(C)
    return C


def dual_identification(C: Coring) -> Mat | None:
    """Identity matrix as a bimodule map from ``C.W`` onto ``D(A)`` when it is one."""
    D = dual_regular_bimodule(C.algebra)
    I = Mat.identity(C.W.dim)
    return I if C.W.dim == D.dim and is_bimodule_hom(C.W, D, I) else None


def central_multiple(C1: Coring, C2: Coring) -> list | None:
    """An invertible central ``z`` with ``mu2 = mu1 . (z *)``, or None.

    Exploratory: two comultiplications on the same ``W`` are expected to
    differ by such a factor.  Not used by any verdict.
    """
    from .algebra import center

    if C1.W.lact != C2.W.lact or C1.W.ract != C2.W.ract:
        raise CoringError("corings live on different bimodules")
    A = C1.algebra
    Z = center(A)
    system = Mat([(C1.W.left_act(z) @ C1.mu).vec() for z in Z.rows], C1.mu.nrows * C1.mu.ncols)
    sol = solve_linear(system, Mat([C2.mu.vec()], system.ncols))
    if sol is None:
        return None
    z = vecmat(sol.rows[0], Z)
    return z if invert(A.left_mult(z)) is not None else None


@dataclass
class BocsVerdict:
    exists: bool | None
    coring: Coring | None
    report: object  # GendoReport
    evidence: dict = field(default_factory=dict)


def decide_bocs_existence(A: Algebra, seed: int = 0, cap: int = 8) -> BocsVerdict:
    """A coring on ``(A, D(A))`` exists iff ``A`` is gendo-symmetric; build one if so."""
    from .gendo import classify, da_coring

    rep = classify(A, seed=seed, cap=cap)
    if rep.is_gendo_symmetric is None:
        return BocsVerdict(None, None, rep, {"reason": "isomorphism search undecided"})
    if not rep.is_gendo_symmetric:
        ev = dict(rep.tensor_route)
        ev["reason"] = "D(A) (x)_A D(A) is not isomorphic to D(A)"
        return BocsVerdict(False, None, rep, ev)
    C = da_coring(A, seed=seed, report=rep)
    ok = C.verified and rank(C.mu) == C.W.dim and C.mu.is_square()
    return BocsVerdict(True, C, rep, {"axioms": C.report.ok, "mu_invertible": ok})


# ----------------------------------------------------------------------------
# the module category


@dataclass
class BocsHom:
    """An element of ``Hom_A(M, Hom_A(W, N))`` (rows: basis of M, columns: coordinates)."""

    source: Module
    target: Module
    matrix: Mat

    def __eq__(self, other):
        return (isinstance(other, BocsHom) and self.source is other.source
                and self.target is other.target and self.matrix == other.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


class BocsCategory:
    """Modules over the bocs ``(A, W)``: ``Hom_B(M, N) = Hom_A(M, Hom_A(W, N))``."""

    def __init__(self, C: Coring):
        self.coring = C
        self.algebra = C.algebra
        self.W = C.W
        self._hom_modules = {}
        self._sections = None

    def H(self, N: Module) -> HomModule:
        """``Hom_A(W, N)``, cached per module object."""
        key = id(N)
        hit = self._hom_modules.get(key)
        if hit is None or hit[0] is not N:
            hit = (N, HomModule(self.W, N, name=f"H({N.name})" if N.name else None))
            self._hom_modules[key] = hit
        return hit[1]

    # -- structure maps ------------------------------------------------
    def _through_mu(self, Y: Mat, HL: HomModule) -> list:
        """Given ``Y`` (dim W x dim H(L)), the hom ``w |-> sum mu(w) -> Y(w1)(w2)`` in H(L)."""
        L = HL.target
        if HL.dim == 0 or L.dim == 0:
            return [0] * HL.dim
        V = Y @ HL.flat  # row w1: (w2, l) flattened
        P = self.coring.WW.tensor
        Vq = Mat([V.rows[w1][w2 * L.dim:(w2 + 1) * L.dim] for w1, w2 in P.pairs], L.dim)
        R = self.coring.mu @ Vq
        return HL.coordinates(R)

    def lam(self, M: Module) -> Mat:
        """``Hom(mu, M) psi : H(H(M)) -> H(M)``."""
        HM = self.H(M)
        HHM = self.H(HM)
        rows = [self._through_mu(HHM.realize(_unit(HHM.dim, h)), HM) for h in range(HHM.dim)]
        return Mat(rows, HM.dim)

    # -- category operations ------------------------------------------
    def hom_space(self, M: Module, N: Module) -> list[BocsHom]:
        return [BocsHom(M, N, F) for F in hom_basis(M, self.H(N))]

    def compose(self, g: BocsHom, f: BocsHom) -> BocsHom:
        """``g * f = Hom(mu, L) psi Hom(W, g) f``."""
        if f.target is not g.source:
            raise CoringError("bocs morphisms are not composable")
        M, N, L = f.source, f.target, g.target
        HN, HL = self.H(N), self.H(L)
        rows = []
        for m in range(M.dim):
            Fm = HN.realize(f.matrix.rows[m])  # W -> N
            rows.append(self._through_mu(Fm @ g.matrix, HL))
        return BocsHom(M, L, Mat(rows, HL.dim))

    def identity(self, M: Module) -> BocsHom:
        """``1_M = Hom(eps, M) xi``: ``m |-> (w |-> m . eps(w))``."""
        HM = self.H(M)
        eps = self.coring.eps
        rows = []
        for m in range(M.dim):
            U = Mat([vecmat(_unit(M.dim, m), M.act(eps.rows[w])) for w in range(self.W.dim)], M.dim)
            rows.append(HM.coordinates(U))
        return BocsHom(M, M, Mat(rows, HM.dim))

    def map_IM(self, M: Module) -> Mat:
        """``I_M : M -> Hom(W, M)``, ``u_m(ae (x) eb) = m aeb``, moved to W through theta."""
        C = self.coring
        HM = self.H(M)
        if C.origin is None or C.origin[0].idempotent is None:
            return self.identity(M).matrix
        src, theta = C.origin
        inv = invert(theta)
        rows = []
        for m in range(M.dim):
            Up = Mat([vecmat(_unit(M.dim, m), M.act(src.eps.rows[w])) for w in range(src.W.dim)],
                     M.dim)  # on Ae (x) eA: x (x) y |-> m . xy
            rows.append(HM.coordinates(inv @ Up))
        return Mat(rows, HM.dim)

    def IM_flags(self, M: Module) -> dict:
        I = self.map_IM(M)
        r = rank(I) if I.nrows and I.ncols else 0
        return {"injective": r == M.dim, "bijective": r == M.dim == self.H(M).dim}

    def phi(self, f: ModuleHom | Mat, M: Module, N: Module) -> BocsHom:
        """``phi(f) = I_N f``."""
        F = f.matrix if isinstance(f, ModuleHom) else f
        return BocsHom(M, N, F @ self.map_IM(N))

    def is_zero(self, M: Module) -> bool:
        """``M`` is zero in the bocs category iff ``AeA`` annihilates it."""
        e = self.coring.idempotent
        if e is None:
            raise CoringError("coring has no idempotent attached")
        if M.dim == 0:
            return True
        I = two_sided_ideal_of_idempotent(self.algebra, e)
        return all(M.act(v).is_zero() for v in I.basis.rows)

    def canonical_iso(self, M: Module) -> tuple[BocsHom, BocsHom]:
        """``f = Lambda^{-1} I_M : M -> nu^{-1}(M)`` and ``g = id : nu^{-1}(M) -> M``."""
        HM = self.H(M)
        Lam = self.lam(M)
        inv = invert(Lam)
        if inv is None:
            raise CoringError("Hom(mu, M) psi is not invertible")
        f = BocsHom(M, HM, self.map_IM(M) @ inv)
        g = BocsHom(HM, M, Mat.identity(HM.dim))
        if self.compose(g, f).matrix != self.identity(M).matrix:
            raise CoringError("g * f != 1_M")
        if self.compose(f, g).matrix != self.identity(HM).matrix:
            raise CoringError("f * g != 1")
        return f, g

    def is_isomorphic(self, M: Module, N: Module, seed: int = 0) -> dict:
        """Decide ``M ~= N`` in the bocs category through ``nu^{-1}``."""
        from .iso import iso_modules

        HM, HN = self.H(M), self.H(N)
        r = iso_modules(HM, HN, seed=seed)
        out = {"status": r.status, "method": r.method, "attempts": r.attempts}
        if not r.is_iso:
            return out
        fM, gM = self.canonical_iso(M)
        fN, gN = self.canonical_iso(N)
        h, hinv = r.witness, invert(r.witness)
        F = self.compose(gN, self.compose(self.phi(h, HM, HN), fM))
        G = self.compose(gM, self.compose(self.phi(hinv, HN, HM), fN))
        if (self.compose(G, F).matrix != self.identity(M).matrix
                or self.compose(F, G).matrix != self.identity(N).matrix):
            raise CoringError("bocs isomorphism witnesses are not mutually inverse")
        out["forward"], out["backward"] = F, G
        return out

    def corner_restriction(self, M: Module) -> Module:
        e = self.coring.idempotent
        corner = self.__dict__.get("_corner")
        if corner is None:
            corner = self._corner = idempotent_subalgebra(self.algebra, e)
        return restrict_to_corner(M, corner)

    def eAe_equivalence_check(self, modules) -> dict:
        """``dim Hom_B(M, N)`` against ``dim Hom_eAe(nu^{-1}(M) e, nu^{-1}(N) e)`` for all pairs."""
        restricted = [self.corner_restriction(self.H(M)) for M in modules]
        bocs = [[len(self.hom_space(M, N)) for N in modules] for M in modules]
        corner = [[len(hom_basis(X, Y)) for Y in restricted] for X in restricted]
        return {"bocs": bocs, "corner": corner, "agree": bocs == corner}

    def endomorphism_ring_iso(self, M: Module, cap: int = 8) -> dict:
        """``h |-> I_M h`` from ``End_A(M)`` to ``End_B(M)``; needs ``domdim M >= 2``."""
        from .homological import dominant_dimension

        if not dominant_dimension(M, cap).at_least(2):
            raise CoringError("endomorphism ring map needs dominant dimension >= 2")
        ends = hom_basis(M, M)
        imgs = [self.phi(h, M, M) for h in ends]
        target = self.hom_space(M, M)
        HM = self.H(M)
        flat = [im.matrix.vec() for im in imgs]
        bij = len(ends) == len(target) and (not flat or rank(Mat(flat, M.dim * HM.dim)) == len(ends))
        mult = all(self.compose(imgs[a], imgs[b]).matrix == self.phi(ends[b] @ ends[a], M, M).matrix
                   for a in range(len(ends)) for b in range(len(ends)))
        unit = self.phi(Mat.identity(M.dim), M, M).matrix == self.identity(M).matrix
        return {"dim": len(ends), "bijective": bij, "multiplicative": mult, "unital": unit,
                "images": imgs}


def hom_mu_psi_invertible(B: BocsCategory, M: Module) -> bool:
    L = B.lam(M)
    return L.is_square() and (L.nrows == 0 or invert(L) is not None)


__all__ = ["Coring", "CoringError", "BocsCategory", "BocsHom", "BocsVerdict", "trivial_coring",
           "coring_from_idempotent", "transport_coring", "tensor_corings", "verify_coring_axioms",
           "decide_bocs_existence", "dual_identification", "idempotent_bimodules",
           "hom_mu_psi_invertible"]
