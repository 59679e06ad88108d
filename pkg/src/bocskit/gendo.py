"""Morita and gendo-symmetric classification, and the ring structures on Hom(D(A), A)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import Algebra, Report, center
from .bocs import (BocsCategory, Coring, CoringError, coring_from_idempotent, idempotent_bimodules,
                   transport_coring)
from .homological import (DomDim, dominant_dimension, is_injective,
                          nakayama_inverse)
from .iso import decompose_module, iso_bimodules, iso_modules
from .linalg import Mat, Subspace, invert, rank, solve_linear, vecmat
from .modules import (Bimodule, bimodule_hom_basis, dual_bimodule, dual_module, dual_regular_bimodule,
                      is_faithful, regular_bimodule, regular_module, submodule, tensor_of_homs,
                      tensor_over)


class GendoError(ValueError):
    pass


class UndecidedError(RuntimeError):
    pass


def projective_injective_classes(A: Algebra, seed: int = 0) -> dict:
    """Idempotent class representatives ``s`` with ``f_s A`` injective, with the matching
    ``D(A f_t)`` and an isomorphism witness."""
    from .corpus import injective_module, projective_module

    out = {}
    reps = [cls[0] for cls in A.idempotent_classes]
    for s in reps:
        P, _ = projective_module(A, s)
        if not is_injective(P):
            continue
        for t in reps:
            r = iso_modules(P, injective_module(A, t), seed=seed)
            if r.is_iso:
                out[s] = {"dual_of": t, "witness": r.witness}
                break
        else:
            raise GendoError(f"P{s} is injective but matches no D(Ae_t)")
    return out


def _idempotent_sum(A: Algebra, idx) -> tuple:
    v = [0] * A.dim
    for s in idx:
        for k, x in enumerate(A.idempotents[s]):
            v[k] += x
    return tuple(v)


def right_ideal_module(A: Algebra, e):
    from .linalg import row_basis

    return submodule(regular_module(A), row_basis(A.left_mult(list(e))), name="eA")[0]


def left_ideal_module(A: Algebra, e):
    """``Ae`` as a right ``A^op``-module."""
    from .linalg import row_basis

    return submodule(regular_module(A.opposite), row_basis(A.right_mult(list(e))), name="Ae")[0]


def minimal_faithful_idempotent(A: Algebra, seed: int = 0) -> tuple | None:
    """Sum of one idempotent per projective-injective class, if that ``eA`` is faithful."""
    classes = projective_injective_classes(A, seed)
    if not classes:
        return None
    e = _idempotent_sum(A, sorted(classes))
    return e if is_faithful(right_ideal_module(A, e)) else None


# ----------------------------------------------------------------------------
# classification


@dataclass
class GendoReport:
    algebra: str
    projective_injective: list
    idempotent: tuple | None
    idempotent_indices: list
    dominant_dim: DomDim
    is_morita: bool | None
    is_gendo_symmetric: bool | None
    corner_route: dict = field(default_factory=dict)
    tensor_route: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    seed: int = 0

    def check_invariants(self) -> Report:
        rep = Report()
        if self.is_gendo_symmetric and not self.is_morita:
            rep.fail("gendo-symmetric but not Morita")
        if self.is_morita and not self.dominant_dim.at_least(2):
            rep.fail("Morita but dominant dimension < 2")
        if (self.idempotent is not None) != bool(self.dominant_dim.at_least(1)):
            rep.fail("minimal faithful idempotent present iff domdim >= 1 fails")
        return rep


def corner_bimodules(A: Algebra, e) -> tuple[Bimodule, Bimodule]:
    """``D(Ae)`` and ``eA`` as (eAe, A)-bimodules over the same corner algebra object."""
    ib = idempotent_bimodules(A, e)
    return dual_bimodule(ib.Ae), ib.eA


def classify(A: Algebra, seed: int = 0, cap: int = 8) -> GendoReport:
    """Decide Morita and gendo-symmetric; two gendo routes must agree."""
    key = ("classify", seed, cap)
    if key in A._cache:
        return A._cache[key]
    pic = projective_injective_classes(A, seed)
    e = minimal_faithful_idempotent(A, seed)
    dd = dominant_dimension(regular_module(A), cap)
    rep = GendoReport(A.name, sorted(pic), e, sorted(pic) if e is not None else [], dd,
                      None, None, seed=seed)
    two = dd.at_least(2)
    # corner route: domdim >= 2 and D(Ae) ~= eA as (eAe, A)-bimodules
    if e is None or two is False:
        rep.is_morita = False
        corner_verdict = False
        rep.corner_route = {"reason": "no minimal faithful projective-injective" if e is None
                            else "dominant dimension < 2"}
    else:
        # Ae as an A^op-module is the right ideal e A^op
        r_mod = iso_modules(dual_module(right_ideal_module(A.opposite, e)),
                            right_ideal_module(A, e), seed=seed)
        rep.is_morita = r_mod.is_iso if r_mod.decided else None
        DAe_b, eA_b = corner_bimodules(A, e)
        r_bi = iso_bimodules(DAe_b, eA_b, seed=seed)
        corner_verdict = r_bi.is_iso if r_bi.decided else None
        rep.corner_route = {"status": r_bi.status, "method": r_bi.method,
                            "attempts": r_bi.attempts}
        if r_bi.is_iso:
            rep.witnesses["D(Ae)->eA"] = r_bi.witness
    # tensor route: D(A) (x)_A D(A) ~= D(A) as bimodules
    D = dual_regular_bimodule(A)
    T = _dd_tensor(A)
    r_t = iso_bimodules(T, D, seed=seed)
    tensor_verdict = r_t.is_iso if r_t.decided else None
    rep.tensor_route = {"dim_DA": D.dim, "dim_DA_tensor_DA": T.dim, "status": r_t.status,
                        "method": r_t.method, "attempts": r_t.attempts}
    if r_t.is_iso:
        rep.witnesses["D(A)(x)D(A)->D(A)"] = r_t.witness
    if corner_verdict is None or tensor_verdict is None:
        rep.is_gendo_symmetric = None
    elif corner_verdict != tensor_verdict:
        raise GendoError(f"gendo-symmetric routes disagree for {A.name}: "
                         f"corner={corner_verdict}, tensor={tensor_verdict}")
    else:
        rep.is_gendo_symmetric = corner_verdict
    A._cache[key] = rep
    return rep


def _dd_tensor(A: Algebra) -> Bimodule:
    if "DxD" not in A._cache:
        D = dual_regular_bimodule(A)
        A._cache["DxD"] = tensor_over(D, D)
    return A._cache["DxD"]


def build_da_iso(A: Algebra, e, seed: int = 0) -> tuple[Coring, Mat]:
    """``theta : Ae (x)_eAe eA -> D(A)``, an explicit bimodule isomorphism."""
    C = coring_from_idempotent(A, e)
    r = iso_bimodules(C.W, dual_regular_bimodule(A), seed=seed)
    if r.status == "undecided":
        raise UndecidedError("bimodule isomorphism search undecided")
    if not r.is_iso:
        raise GendoError("Ae (x) eA is not isomorphic to D(A): algebra is not gendo-symmetric")
    return C, r.witness


def da_coring(A: Algebra, seed: int = 0, report: GendoReport | None = None) -> Coring:
    """The coring on ``(A, D(A))``, fixed once per (algebra, seed)."""
    key = ("da_coring", seed)
    if key in A._cache:
        return A._cache[key]
    rep = report or classify(A, seed=seed)
    if not rep.is_gendo_symmetric:
        raise GendoError(f"{A.name} is not gendo-symmetric; no coring on (A, D(A))")
    src, theta = build_da_iso(A, rep.idempotent, seed)
    C = transport_coring(src, theta, dual_regular_bimodule(A), name=f"D({A.name})")
    if not C.verified:
        raise CoringError("transported coring fails the axioms: " + "; ".join(C.report.failures))
    A._cache[key] = C
    return C


def bocs_category(A: Algebra, seed: int = 0) -> BocsCategory:
    key = ("bocs_category", seed)
    if key not in A._cache:
        A._cache[key] = BocsCategory(da_coring(A, seed))
    return A._cache[key]


# ----------------------------------------------------------------------------
# ring structures


@dataclass
class ZetaReport:
    images: list  # zeta(b_i), each dim W x dim A
    bijective: bool
    anti_multiplicative: bool
    unit_ok: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return self.bijective and self.anti_multiplicative and self.unit_ok


def right_product(C: Coring, F: Mat, G: Mat) -> Mat:
    """``f *r g = g (f (x) id_W) mu`` on ``Hom_A(W, A)`` (``c_r^{-1}`` identifies A (x) W with W)."""
    key = "_cr_inv"
    if key not in C.__dict__:
        C.__dict__[key] = invert(C.c_right())
    step = tensor_of_homs(F, Mat.identity(C.W.dim), C.WW, C.AW)
    return C.mu @ step @ C.__dict__[key] @ G


def zeta_anti_iso(A: Algebra, seed: int = 0) -> ZetaReport:
    """``zeta(a) = eps(a . -)``; checks ``zeta(ab) = zeta(b) *r zeta(a)`` on all basis pairs."""
    C = da_coring(A, seed)
    W = C.W
    imgs = [W.lact[a] @ C.eps for a in range(A.dim)]
    homs = len(bimodule_hom_basis_right(W, A))
    flat = Mat([z.vec() for z in imgs], W.dim * A.dim)
    bij = homs == A.dim and rank(flat) == A.dim
    fails = []
    for a in range(A.dim):
        for b in range(A.dim):
            ab = A.mul(A.basis_vector(a), A.basis_vector(b))
            lhs = W.left_act(ab) @ C.eps
            rhs = right_product(C, imgs[b], imgs[a])
            if lhs != rhs:
                fails.append((a, b))
    unit_ok = W.left_act(A.unit) @ C.eps == C.eps
    return ZetaReport(imgs, bij, not fails, unit_ok, fails)


def bimodule_hom_basis_right(W: Bimodule, A: Algebra) -> list[Mat]:
    """Basis of ``Hom_A(W, A)`` (right A-linear maps)."""
    from .modules import hom_basis

    return hom_basis(W.right_module(), regular_module(A))


@dataclass
class CenterReport:
    dim: int
    center_dim: int
    psi: Mat  # rows: coordinates in Z(A) basis of psi(f_i)
    bijective: bool
    multiplicative: bool
    unital: bool

    @property
    def ok(self):
        return self.bijective and self.multiplicative and self.unital and self.dim == self.center_dim


def coring_end_center(A: Algebra, seed: int = 0) -> CenterReport:
    """``Hom_{A^e}(D(A), A)`` with ``(f*g)(c) = sum f(c1) g(c2)`` is isomorphic to ``Z(A)``."""
    C = da_coring(A, seed)
    W = C.W
    R = regular_bimodule(A)
    basis = bimodule_hom_basis(W, R)
    P = C.WW.tensor

    def star(F, G):
        rows = []
        vals = [A.mul(F.rows[w1], G.rows[w2]) for w1, w2 in P.pairs]
        for w in range(W.dim):
            acc = [0] * A.dim
            for q, c in enumerate(C.mu.rows[w]):
                if c:
                    for k, v in enumerate(vals[q]):
                        if v:
                            acc[k] += c * v
            rows.append(acc)
        return Mat.from_rows(rows, A.dim)

    src, theta = C.origin
    e = list(C.idempotent)
    ib = src.bimodules
    ee = src.W.tensor.elem(Subspace(ib.Ae_basis).coords(e), Subspace(ib.eA_basis).coords(e))
    w0 = vecmat(ee, theta)  # theta(e (x) e) in D(A)
    Z = center(A)
    # z |-> eze is injective on Z(A); invert it on the image
    eze = Mat([A.mul(A.mul(e, list(z)), e) for z in Z.rows], A.dim)

    def psi(F):
        val = vecmat(w0, F)
        x = solve_linear(eze, Mat([val], A.dim))
        if x is None:
            raise GendoError("psi(f) is not of the form eze")
        return x.rows[0]

    coords = [psi(F) for F in basis]
    psi_mat = Mat(coords, Z.nrows) if coords else Mat([], Z.nrows)
    bij = len(basis) == Z.nrows and (not coords or rank(psi_mat) == Z.nrows)

    def to_alg(zc):
        return vecmat(zc, Z)

    mult = True
    for a in range(len(basis)):
        for b in range(len(basis)):
            lhs = to_alg(psi(star(basis[a], basis[b])))
            rhs = A.mul(to_alg(coords[a]), to_alg(coords[b]))
            if lhs != rhs:
                mult = False
    unital = to_alg(psi(C.eps)) == list(A.unit)
    return CenterReport(len(basis), Z.nrows, psi_mat, bij, mult, unital)


# ----------------------------------------------------------------------------
# consistency checks


def check_faithful_hom_criterion(A: Algebra) -> dict:
    """``Hom_A(D(A), A)`` faithful  vs.  some idempotent ``e`` with ``eA``, ``Ae`` faithful injective."""
    direct = is_faithful(nakayama_inverse(regular_module(A)))
    found = None
    r = len(A.idempotents)
    for k in range(1, r + 1):
        for idx in itertools.combinations(range(r), k):
            e = _idempotent_sum(A, idx)
            eA = right_ideal_module(A, e)
            Ae = left_ideal_module(A, e)
            if is_faithful(eA) and is_faithful(Ae) and is_injective(eA) and is_injective(Ae):
                found = list(idx)
                break
        if found is not None:
            break
    return {"hom_faithful": direct, "idempotent_exists": found is not None, "idempotent": found,
            "agree": direct == (found is not None)}


def check_regular_summand(A: Algebra, seed: int = 0, cap: int = 8) -> dict:
    """If ``nu^{-1}(A) ~= A + X`` then ``X = 0`` and ``domdim A >= 2``."""
    H = nakayama_inverse(regular_module(A))
    parts_H = [s.module for s in decompose_module(H, seed).summands]
    parts_A = [s.module for s in decompose_module(regular_module(A), seed).summands]
    unused = list(range(len(parts_H)))
    detected = True
    for P in parts_A:
        hit = next((i for i in unused if iso_modules(P, parts_H[i], seed=seed).is_iso), None)
        if hit is None:
            detected = False
            break
        unused.remove(hit)
    dd = dominant_dimension(regular_module(A), cap)
    leftover = sum(parts_H[i].dim for i in unused) if detected else None
    ok = (not detected) or (leftover == 0 and bool(dd.at_least(2)))
    return {"detected": detected, "complement_dim": leftover, "domdim": str(dd), "ok": ok}


def check_dom2_criterion(A: Algebra, modules, seed: int = 0, cap: int = 8) -> dict:
    """``domdim M >= 2  <=>  nu^{-1}(M) ~= M`` for each module."""
    rows = {}
    ok = True
    for M in modules:
        dd = dominant_dimension(M, cap)
        iso = iso_modules(nakayama_inverse(M), M, seed=seed)
        agree = bool(dd.at_least(2)) == iso.is_iso and iso.decided
        rows[M.name] = {"domdim": str(dd), "iso": iso.status, "agree": agree}
        ok = ok and agree
    return {"modules": rows, "ok": ok}


__all__ = ["GendoReport", "classify", "minimal_faithful_idempotent", "build_da_iso", "da_coring",
           "bocs_category", "zeta_anti_iso", "coring_end_center", "check_faithful_hom_criterion",
           "check_regular_summand", "check_dom2_criterion", "projective_injective_classes",
           "right_product", "UndecidedError", "GendoError"]
