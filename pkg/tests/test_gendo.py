import pytest

from bocskit.algebra import center
from bocskit.corpus import CORPUS, by_name, module_catalog
from bocskit.gendo import (GendoError, build_da_iso, check_dom2_criterion, check_faithful_hom_criterion,
                           check_regular_summand, classify, coring_end_center,
                           minimal_faithful_idempotent, zeta_anti_iso)
from bocskit.linalg import invert
from bocskit.modules import dual_regular_bimodule, is_bimodule_hom, regular_module

NAMES = [n for n, _ in CORPUS]
GENDO = [n for n in NAMES if n != "kupisch:[2,1]:linear"]


def test_minimal_faithful_idempotents(A2, B5):
    assert minimal_faithful_idempotent(A2) == A2.unit
    assert minimal_faithful_idempotent(B5) == B5.idempotents[1]
    assert classify(B5).idempotent_indices == [1]
    KK = by_name("kupisch:[1,1]:linear")
    assert minimal_faithful_idempotent(KK) == KK.unit


@pytest.mark.parametrize("name,expected", [(n, True) for n in GENDO] + [("kupisch:[2,1]:linear", False)])
def test_classify(name, expected):
    g = classify(by_name(name))
    assert g.is_gendo_symmetric is expected
    assert g.check_invariants().ok
    # classify raises if the corner and tensor routes disagree
    corner_iso = g.corner_route.get("status") == "iso"
    assert corner_iso == (g.tensor_route["status"] == "iso") == expected


def test_B5_classification(B5):
    g = classify(B5)
    assert g.is_morita and g.idempotent_indices == [1]
    assert str(g.dominant_dim) == "2"


def test_T2_classification(T2):
    g = classify(T2)
    assert g.is_gendo_symmetric is False and g.is_morita is False
    assert str(g.dominant_dim) == "1"
    with pytest.raises(GendoError):
        build_da_iso(T2, g.idempotent)


@pytest.mark.parametrize("name", ["kx:2", "kupisch:[2,3]:cyclic"])
def test_da_iso(name):
    A = by_name(name)
    C, theta = build_da_iso(A, classify(A).idempotent)
    D = dual_regular_bimodule(A)
    assert theta.shape == (A.dim, A.dim) and invert(theta) is not None
    assert is_bimodule_hom(C.W, D, theta)


@pytest.mark.parametrize("name", ["kx:2", "kupisch:[2,3]:cyclic"])
def test_zeta(name):
    z = zeta_anti_iso(by_name(name))
    assert z.bijective and z.anti_multiplicative and z.unit_ok and not z.failures


@pytest.mark.parametrize("name", ["kx:2", "kupisch:[2,3]:cyclic", "kx:3", "auslander:kx:3",
                                  "tensor:kupisch:[2,3]:cyclic:kx:2", "matrix:2"])
def test_center_ring_iso(name):
    A = by_name(name)
    c = coring_end_center(A)
    assert c.ok
    assert c.dim == center(A).nrows


@pytest.mark.parametrize("name", NAMES)
def test_faithful_hom_criterion(name):
    assert check_faithful_hom_criterion(by_name(name))["agree"]


@pytest.mark.parametrize("name", NAMES)
def test_regular_summand_forces_domdim_two(name):
    r = check_regular_summand(by_name(name))
    assert r["ok"]
    if r["detected"]:
        assert r["complement_dim"] == 0


@pytest.mark.parametrize("name", GENDO)
def test_dom2_criterion(name):
    A = by_name(name)
    mods = list(module_catalog(A)) + [regular_module(A).with_name("A")]
    r = check_dom2_criterion(A, mods)
    assert r["ok"], r
