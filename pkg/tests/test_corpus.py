import pytest

from bocskit.algebra import check_presentation
from bocskit.corpus import (CorpusError, auslander, by_name, endomorphism_algebra, list_names,
                            module_catalog, nakayama_from_kupisch, radical_power_modules,
                            truncated_poly)
from bocskit.gendo import classify
from bocskit.corpus import projective_module
from bocskit.iso import iso_modules
from bocskit.modules import regular_module


def test_B5_shape(B5):
    assert B5.dim == 5
    assert [projective_module(B5, s)[0].dim for s in range(2)] == [2, 3]


def test_one_vertex_is_truncated_poly():
    A = nakayama_from_kupisch([3], cyclic=True)
    assert A.table == truncated_poly(3).table


def test_T2(T2):
    assert T2.dim == 3 and check_presentation(T2).ok


@pytest.mark.parametrize("series,cyclic", [([2, 0], True), ([3, 1], True), ([3, 1], False),
                                           ([2, 2], False), ([], True), ([1, 3], True)])
def test_inadmissible_series(series, cyclic):
    with pytest.raises(CorpusError):
        nakayama_from_kupisch(series, cyclic)


def test_truncated_poly():
    assert truncated_poly(1).dim == 1
    assert truncated_poly(2).dim == 2
    A3 = truncated_poly(3)
    assert A3.dim == 3 and A3.radical.nrows == 2
    with pytest.raises(CorpusError):
        truncated_poly(0)


def test_auslander_of_A2_matches_B5(B5):
    """The Auslander algebra of K[x]/(x^2) has projectives of dims 2 and 3 and is gendo-symmetric."""
    A = auslander(2)
    assert A.dim == 5 and check_presentation(A).ok
    assert sorted(projective_module(A, s)[0].dim for s in range(2)) == [2, 3]
    g, h = classify(A), classify(B5)
    assert g.is_gendo_symmetric == h.is_gendo_symmetric is True
    assert str(g.dominant_dim) == str(h.dominant_dim) == "2"
    assert [m.dim for m in module_catalog(A)] != [] and len(module_catalog(A)) == 5


def test_end_of_regular_is_algebra():
    A = truncated_poly(3)
    E = endomorphism_algebra([regular_module(A)]).algebra
    assert E.dim == A.dim and E.is_commutative()


def test_auslander_3():
    A = auslander(3)
    assert check_presentation(A).ok
    assert A.dim == 14
    assert classify(A).is_gendo_symmetric is True
    assert [M.dim for M in radical_power_modules(3)] == [3, 2, 1]


@pytest.mark.parametrize("name,count", [("kupisch:[2,3]:cyclic", 5), ("kx:2", 2), ("kx:3", 3),
                                        ("kupisch:[2,1]:linear", 3)])
def test_catalog_sizes(name, count):
    cat = module_catalog(by_name(name))
    assert cat.complete and len(cat) == count


def test_B5_catalog_names(B5):
    assert sorted(module_catalog(B5).names()) == sorted(["P0", "P1", "S0", "S1", "D(Ae0)"])


def test_catalog_pairwise_distinct_everywhere():
    for name, _ in list_names():
        cat = list(module_catalog(by_name(name)))
        for i, M in enumerate(cat):
            for N in cat[i + 1:]:
                assert not iso_modules(M, N).is_iso, (name, M.name, N.name)


def test_incomplete_catalog_flagged():
    cat = module_catalog(by_name("matrix:2"))
    assert not cat.complete and len(cat) == 1


def test_names_cached_and_parsed():
    assert by_name("kx:2") is by_name(" kx:2 ")
    A = by_name("tensor:kupisch:[2,3]:cyclic:kx:2")
    assert A.dim == 10
    for bad in ("kx", "kx:two", "kupisch:[2,3]", "nope:1", "kx:2:extra", "auslander:3"):
        with pytest.raises(CorpusError):
            by_name(bad)
