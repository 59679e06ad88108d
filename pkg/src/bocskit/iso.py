"""Isomorphism testing and direct-sum decomposition of modules.

Both routines search a hom space for a good element: a random rational
combination of basis maps is invertible with high probability whenever an
invertible one exists.  Seeds make every run reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import Mat, invert, kernel_basis, lincomb, rank, row_basis
from .modules import (Bimodule, Module, bimodule_hom_basis, hom_basis, is_bimodule_hom, is_hom,
                      submodule, weight_dims)

ATTEMPTS = 32
COEFF_RANGE = 8
GRID_LIMIT = 4096


@dataclass
class IsoResult:
    """``status`` is ``"iso"``, ``"not_iso"`` or ``"undecided"``."""

    status: str
    witness: Mat | None = None
    attempts: int = 0
    method: str = ""
    seed: int = 0

    @property
    def is_iso(self) -> bool:
        return self.status == "iso"

    @property
    def decided(self) -> bool:
        return self.status != "undecided"

    def __bool__(self):
        return self.is_iso


def _search(basis: list[Mat], n: int, seed: int, verify) -> IsoResult:
    """Look for an invertible element of ``span(basis)`` (all ``n x n``)."""
    h = len(basis)
    if n == 0:
        return IsoResult("iso", Mat([], 0), 0, "empty", seed)
    if h == 0:
        return IsoResult("not_iso", None, 0, "hom space is zero", seed)
    tried = 0
    # basis elements first: often an identity or permutation is among them
    for B in basis:
        tried += 1
        if rank(B) == n:
            return _accept(B, tried, "basis element", seed, verify)
    rng = random.Random(seed)
    for _ in range(ATTEMPTS):
        tried += 1
        coeffs = [rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in range(h)]
        if not any(coeffs):
            continue
        F = lincomb(coeffs, basis, n, n)
        if rank(F) == n:
            return _accept(F, tried, "random combination", seed, verify)
    # det(sum x_i B_i) is homogeneous of degree n; with x_0 = 1 a nonzero value
    # must occur on the grid {0..n}^(h-1) unless the determinant vanishes identically
    if h <= 3 or (n + 1) ** (h - 1) <= GRID_LIMIT:
        for rest in itertools.product(range(n + 1), repeat=h - 1):
            tried += 1
            F = lincomb((1,) + rest, basis, n, n)
            if rank(F) == n:
                return _accept(F, tried, "grid", seed, verify)
        return IsoResult("not_iso", None, tried, "grid exhausted: determinant vanishes", seed)
    return IsoResult("undecided", None, tried, "random search exhausted", seed)


def _accept(F, tried, method, seed, verify) -> IsoResult:
    if not verify(F) or invert(F) is None:
        raise AssertionError("isomorphism witness failed verification")
    return IsoResult("iso", F, tried, method, seed)


def _multiplicity_profile(M: Module):
    from .homological import socle_multiplicities, top

    return (M.dim, tuple(weight_dims(M)), tuple(top(M).multiplicities),
            tuple(socle_multiplicities(M)))


def iso_modules(M: Module, N: Module, seed: int = 0) -> IsoResult:
    """Decide ``M ~= N`` with a verified witness ``M -> N`` when they are."""
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    if M.dim != N.dim:
        return IsoResult("not_iso", None, 0, "dimensions differ", seed)
    if M.dim == 0:
        return IsoResult("iso", Mat([], 0), 0, "zero modules", seed)
    if _multiplicity_profile(M) != _multiplicity_profile(N):
        return IsoResult("not_iso", None, 0, "composition/top/socle data differ", seed)
    basis = hom_basis(M, N)
    if len(basis) != len(hom_basis(M, M)) or len(basis) != len(hom_basis(N, N)):
        return IsoResult("not_iso", None, 0, "hom dimensions differ", seed)
    return _search(basis, M.dim, seed, lambda F: is_hom(M, N, F))


def iso_bimodules(V: Bimodule, W: Bimodule, seed: int = 0) -> IsoResult:
    if V.dim != W.dim:
        return IsoResult("not_iso", None, 0, "dimensions differ", seed)
    if V.dim == 0:
        return IsoResult("iso", Mat([], 0), 0, "zero bimodules", seed)
    basis = bimodule_hom_basis(V, W)
    if len(basis) != len(bimodule_hom_basis(V, V)):
        return IsoResult("not_iso", None, 0, "hom dimensions differ", seed)
    return _search(basis, V.dim, seed, lambda F: is_bimodule_hom(V, W, F))


# ----------------------------------------------------------------------------
# decomposition


def charpoly(F: Mat) -> list:
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(tI - F)`` (Faddeev-LeVerrier)."""
    n = F.nrows
    coeffs = [1]
    Mk = Mat.zeros(n, n)
    I = Mat.identity(n)
    for k in range(1, n + 1):
        Mk = F @ Mk + I.scale(coeffs[-1])
        c = -Fraction((F @ Mk).trace()) / k
        coeffs.append(c.numerator if c.denominator == 1 else c)
    return coeffs


def _poly_at(coeffs, F: Mat) -> Mat:
    """``p(F)`` by Horner, ``coeffs`` highest degree first."""
    n = F.nrows
    acc = Mat.zeros(n, n)
    I = Mat.identity(n)
    for c in coeffs:
        acc = acc @ F + I.scale(c)
    return acc


def _factor(coeffs) -> list[tuple[list, int]]:
    import sympy  # slow to import; only needed when a module actually splits

    t = sympy.Symbol("t")
    p = sympy.Poly([sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction)
                    else sympy.Integer(c) for c in coeffs], t, domain="QQ")
    _, facs = p.factor_list()
    out = []
    for q, k in facs:
        out.append(([Fraction(int(c.p), int(c.q)) for c in q.all_coeffs()], k))
    return out


@dataclass
class Summand:
    module: Module
    inclusion: Mat  # summand -> M
    projection: Mat  # M -> summand
    certified: bool  # End is local (trace-form test)


@dataclass
class Decomposition:
    summands: list = field(default_factory=list)
    possibly_indecomposable: list = field(default_factory=list)  # indices of unsplit, uncertified
    attempts: int = 0
    seed: int = 0

    def verify(self, M: Module) -> bool:
        n = M.dim
        total = Mat.zeros(n, n)
        for s in self.summands:
            if not is_hom(s.module, M, s.inclusion) or not is_hom(M, s.module, s.projection):
                return False
            if s.inclusion @ s.projection != Mat.identity(s.module.dim):
                return False
            total = total + s.projection @ s.inclusion
        return total == Mat.identity(n)


def _local_rank(M: Module, E: list[Mat]) -> int:
    """Rank of the trace form ``(a, b) -> tr(ab)`` on ``End(M)``: ``dim End/rad`` for split ends."""
    n = len(E)
    G = [[(E[a] @ E[b]).trace() for b in range(n)] for a in range(n)]
    return rank(Mat(G, n))


def _split(M: Module, E: list[Mat], rng: random.Random, budget: int):
    """Find an endomorphism with two coprime factors; return its primary components."""
    n = M.dim
    tried = 0
    cands = iter(E)
    while tried < budget:
        F = next(cands, None)
        if F is None:
            coeffs = [rng.randint(-COEFF_RANGE, COEFF_RANGE) for _ in E]
            F = lincomb(coeffs, E, n, n)
        tried += 1
        facs = _factor(charpoly(F))
        if len(facs) < 2:
            continue
        parts = []
        for q, k in facs:
            parts.append(row_basis(kernel_basis(_pow(_poly_at(q, F), k))))
        return parts, tried
    return None, tried


def _pow(F: Mat, k: int) -> Mat:
    out = F
    for _ in range(k - 1):
        out = out @ F
    return out


def decompose_module(M: Module, seed: int = 0, budget: int = ATTEMPTS) -> Decomposition:
    """Split ``M`` into indecomposable summands with verified inclusions and projections."""
    rng = random.Random(seed)
    dec = Decomposition(seed=seed)
    stack = [(M, Mat.identity(M.dim))]  # (module, its basis rows in M)
    pieces = []
    while stack:
        N, emb = stack.pop()
        if N.dim == 0:
            continue
        E = hom_basis(N, N)
        if _local_rank(N, E) == 1:
            pieces.append((N, emb, True))
            continue
        parts, tried = _split(N, E, rng, budget)
        dec.attempts += tried
        if parts is None:
            pieces.append((N, emb, False))
            continue
        for K in reversed(parts):
            sub, basis = submodule(N, K)
            stack.append((sub, basis @ emb))
    if not pieces:
        return dec
    # projections: coordinates with respect to the stacked summand bases
    big = pieces[0][1]
    for _, emb, _ in pieces[1:]:
        big = big.vstack(emb)
    inv = invert(big)
    off = 0
    for idx, (N, emb, ok) in enumerate(pieces):
        proj = inv.take_cols(range(off, off + N.dim))
        off += N.dim
        dec.summands.append(Summand(N.with_name(f"{M.name}[{idx}]" if M.name else None),
                                    emb, proj, ok))
        if not ok:
            dec.possibly_indecomposable.append(idx)
    return dec


def is_indecomposable(M: Module) -> bool | None:
    """True if ``End(M)`` is certified local, else None when no split was found."""
    if M.dim == 0:
        return False
    dec = decompose_module(M)
    if len(dec.summands) > 1:
        return False
    return True if dec.summands[0].certified else None


__all__ = ["IsoResult", "iso_modules", "iso_bimodules", "decompose_module", "Decomposition",
           "Summand", "charpoly", "is_indecomposable"]
