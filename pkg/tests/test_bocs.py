import random
from fractions import Fraction

import pytest

from bocskit.bocs import (BocsHom, Coring, central_multiple, coring_from_idempotent, decide_bocs_existence,
                          dual_identification, hom_mu_psi_invertible, tensor_corings,
                          transport_coring, trivial_coring, verify_coring_axioms)
from bocskit.corpus import by_name, module_catalog
from bocskit.algebra import center
from bocskit.gendo import bocs_category, classify, da_coring
from bocskit.homological import dominant_dimension
from bocskit.iso import iso_bimodules
from bocskit.linalg import Mat, lincomb
from bocskit.modules import direct_sum, dual_regular_bimodule, regular_module, zero_module

SEED = 20240601


def mutated(C: Coring, mu=None, eps=None) -> Coring:
    D = Coring(C.algebra, C.W, C.mu if mu is None else mu, C.eps if eps is None else eps)
    verify_coring_axioms(D)
    return D


# ----------------------------------------------------------------------------
# corings


@pytest.mark.parametrize("name", ["kx:1", "kx:2", "kupisch:[2,3]:cyclic", "kupisch:[2,1]:linear"])
def test_trivial_coring(name):
    C = trivial_coring(by_name(name))
    assert C.verified and C.report.ok


def test_idempotent_coring_unit_is_trivial(B5):
    C = coring_from_idempotent(B5, B5.unit)
    T = trivial_coring(B5)
    assert C.verified and C.W.dim == T.W.dim == B5.dim
    assert iso_bimodules(C.W, T.W).is_iso


def test_idempotent_coring_B5(B5):
    C = coring_from_idempotent(B5, B5.idempotents[1])
    assert C.verified and C.W.dim == 5


def test_idempotent_coring_T2(T2):
    e = classify(T2).idempotent
    C = coring_from_idempotent(T2, e)
    assert C.verified
    D = dual_regular_bimodule(T2)
    assert C.W.dim != D.dim or not iso_bimodules(C.W, D).is_iso


def test_transport(B5):
    C = coring_from_idempotent(B5, B5.idempotents[1])
    same = transport_coring(C, Mat.identity(C.W.dim), C.W)
    assert same.verified and same.mu == C.mu and same.eps == C.eps
    twice = transport_coring(C, Mat.identity(C.W.dim, 2), C.W)
    assert twice.verified and twice.eps == C.eps.scale(Fraction(1, 2))
    D = da_coring(B5)
    assert D.verified and D.W.dim == 5 and dual_identification(D) is not None


def test_comultiplications_differ_by_central_unit(B5):
    C = da_coring(B5)
    assert central_multiple(C, C) == list(B5.unit)
    Z = center(B5)
    r = next(z for z in Z.rows if list(z) != list(B5.unit) and B5.mul(z, z) == [0] * B5.dim)
    z = [u + x for u, x in zip(B5.unit, r)]
    other = transport_coring(C, C.W.left_act(z), C.W)
    assert other.verified and other.mu != C.mu
    assert central_multiple(C, other) == z
    broken = mutated(C, mu=Mat.zeros(C.mu.nrows, C.mu.ncols))
    assert central_multiple(C, broken) is None


def test_tensor_coring():
    B5, A2 = by_name("kupisch:[2,3]:cyclic"), by_name("kx:2")
    BA = by_name("tensor:kupisch:[2,3]:cyclic:kx:2")
    C = tensor_corings(da_coring(B5), da_coring(A2), algebra=BA)
    assert C.verified and C.W.dim == 10
    assert dual_identification(C) is not None  # D(B5) (x) D(A2) is D(B5 (x) A2) on the nose
    assert iso_bimodules(C.W, dual_regular_bimodule(BA)).is_iso


@pytest.mark.parametrize("name", ["kx:2", "kupisch:[2,3]:cyclic"])
def test_mutations_fail_counit(name):
    C = da_coring(by_name(name))
    bad = mutated(C, eps=C.eps.scale(2))
    assert not bad.verified
    assert any("counit" in f for f in bad.report.failures)
    zero = mutated(C, mu=Mat.zeros(C.mu.nrows, C.mu.ncols))
    assert not zero.verified
    assert any("counit" in f for f in zero.report.failures)


# ----------------------------------------------------------------------------
# existence


@pytest.mark.parametrize("name,exists", [("kupisch:[2,3]:cyclic", True), ("kx:2", True),
                                         ("auslander:kx:3", True),
                                         ("tensor:kupisch:[2,3]:cyclic:kx:2", True),
                                         ("kupisch:[2,1]:linear", False)])
def test_decide_bocs_existence(name, exists):
    A = by_name(name)
    v = decide_bocs_existence(A)
    assert v.exists is exists
    assert v.exists == classify(A).is_gendo_symmetric
    if exists:
        assert v.coring.verified and dual_identification(v.coring) is not None
    else:
        assert v.coring is None
        assert v.evidence["dim_DA_tensor_DA"] != v.evidence["dim_DA"]


# ----------------------------------------------------------------------------
# the module category of (B5, D(B5))


@pytest.fixture(scope="module")
def cat():
    B5 = by_name("kupisch:[2,3]:cyclic")
    return B5, bocs_category(B5), list(module_catalog(B5))


def test_identity_examples(cat):
    B5, K, mods = cat
    assert K.identity(zero_module(B5)).matrix.nrows == 0
    S0 = module_catalog(B5).get("S0")
    assert K.identity(S0).is_zero() and K.is_zero(S0)
    assert not K.is_zero(module_catalog(B5).get("P1"))
    assert K.is_zero(zero_module(B5))
    R = regular_module(B5)
    assert K.identity(R).matrix == K.phi(Mat.identity(R.dim), R, R).matrix


def test_IM_sweep(cat):
    _, K, mods = cat
    for M in mods:
        dd = dominant_dimension(M)
        flags = K.IM_flags(M)
        assert K.map_IM(M) == K.identity(M).matrix, M.name
        assert flags["injective"] == bool(dd.at_least(1)), M.name
        assert flags["bijective"] == bool(dd.at_least(2)), M.name


def test_lambda_invertible(cat):
    _, K, mods = cat
    for M in mods + [regular_module(K.algebra)]:
        assert hom_mu_psi_invertible(K, M), M.name


def test_canonical_iso(cat):
    B5, K, mods = cat
    S1 = module_catalog(B5).get("S1")
    f, g = K.canonical_iso(S1)
    assert K.compose(g, f).matrix == K.identity(S1).matrix
    S0 = module_catalog(B5).get("S0")
    f, g = K.canonical_iso(S0)
    assert f.is_zero() and K.identity(S0).is_zero()


def test_bocs_isomorphism_classes(cat):
    B5, K, mods = cat
    get = module_catalog(B5).get
    assert K.is_isomorphic(get("S1"), get("D(Ae0)"))["status"] == "iso"
    assert K.is_isomorphic(get("S1"), get("P0"))["status"] == "iso"
    assert K.is_isomorphic(get("P0"), get("P1"))["status"] == "not_iso"
    r = K.is_isomorphic(get("P1"), get("P1"))
    assert r["status"] == "iso"


def test_eAe_check(cat):
    _, K, mods = cat
    r = K.eAe_equivalence_check(mods)
    assert r["agree"] and len(r["bocs"]) == 5


def test_endomorphism_ring_iso(cat):
    B5, K, mods = cat
    r = K.endomorphism_ring_iso(regular_module(B5))
    assert r["bijective"] and r["multiplicative"] and r["unital"] and r["dim"] == 5
    P, _, _ = direct_sum([module_catalog(B5).get("P0"), module_catalog(B5).get("P1")])
    r = K.endomorphism_ring_iso(P)
    assert r["bijective"] and r["multiplicative"] and r["unital"]
    with pytest.raises(Exception):
        K.endomorphism_ring_iso(module_catalog(B5).get("S1"))


def _random_hom(K, M, N, rng):
    basis = K.hom_space(M, N)
    HN = K.H(N)
    if not basis:
        return BocsHom(M, N, Mat.zeros(M.dim, HN.dim))
    coeffs = [rng.randint(-3, 3) for _ in basis]
    return BocsHom(M, N, lincomb(coeffs, [b.matrix for b in basis], M.dim, HN.dim))


def test_associativity_and_units(cat):
    _, K, mods = cat
    rng = random.Random(SEED)
    for _ in range(120):
        M, N, L, P = (rng.choice(mods) for _ in range(4))
        f, g, h = _random_hom(K, M, N, rng), _random_hom(K, N, L, rng), _random_hom(K, L, P, rng)
        assert K.compose(h, K.compose(g, f)).matrix == K.compose(K.compose(h, g), f).matrix
        assert K.compose(K.identity(N), f).matrix == f.matrix
        assert K.compose(f, K.identity(M)).matrix == f.matrix


def test_phi_functorial(cat):
    _, K, mods = cat
    from bocskit.modules import hom_basis

    rng = random.Random(SEED + 1)
    for _ in range(120):
        M, N, L = (rng.choice(mods) for _ in range(3))
        bf, bg = hom_basis(M, N), hom_basis(N, L)
        F = lincomb([rng.randint(-3, 3) for _ in bf], bf, M.dim, N.dim) if bf else Mat.zeros(M.dim, N.dim)
        G = lincomb([rng.randint(-3, 3) for _ in bg], bg, N.dim, L.dim) if bg else Mat.zeros(N.dim, L.dim)
        lhs = K.phi(F @ G, M, L).matrix
        rhs = K.compose(K.phi(G, N, L), K.phi(F, M, N)).matrix
        assert lhs == rhs
