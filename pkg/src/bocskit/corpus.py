"""Test algebras and their module catalogs.

Names understood by :func:`by_name`::

    kupisch:[2,3]:cyclic     Nakayama algebra from a Kupisch series
    kx:n                     K[x]/(x^n)
    auslander:kx:n           End of the indecomposables of K[x]/(x^n)
    tensor:<a>:<b>           tensor product of two named algebras
    matrix:n                 full n x n matrix algebra
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import Algebra, tensor_algebras
from .linalg import Coordinates, Mat
from .modules import (Module, dual_module, hom_basis, quotient_module, regular_module,
                      submodule)


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class KupischSpec:
    series: tuple
    cyclic: bool

    def validate(self) -> None:
        c, n = self.series, len(self.series)
        if n == 0 or any(not isinstance(x, int) or x < 1 for x in c):
            raise CorpusError("Kupisch series must be a nonempty list of positive integers")
        if self.cyclic:
            if n > 1 and any(x < 2 for x in c):
                raise CorpusError("cyclic Kupisch series needs every entry >= 2")
            pairs = [(c[i], c[(i + 1) % n]) for i in range(n)]
        else:
            if any(c[i] > n - i for i in range(n)):
                raise CorpusError("linear Kupisch series: paths would run past the last vertex")
            pairs = [(c[i], c[i + 1]) for i in range(n - 1)]
        for a, b in pairs:
            if b < a - 1:
                raise CorpusError(f"inadmissible Kupisch series {list(c)}: need c(i+1) >= c(i) - 1")


def nakayama_from_kupisch(series, cyclic=True, name=None) -> Algebra:
    """Paths ``(i, l)`` of length ``l < c_i`` from vertex ``i`` along arrows ``i -> i+1``.

    Products concatenate left to right: ``(i, l) * (j, m) = (i, l + m)`` when
    path ``(i, l)`` ends at ``j`` and ``l + m < c_i``, else 0.
    """
    spec = KupischSpec(tuple(series), bool(cyclic))
    spec.validate()
    c, n = spec.series, len(spec.series)
    paths = [(i, l) for i in range(n) for l in range(c[i])]
    index = {p: k for k, p in enumerate(paths)}
    dim = len(paths)

    def end(i, l):
        return (i + l) % n if cyclic else i + l

    table = [[[] for _ in range(dim)] for _ in range(dim)]
    for (i, l), a in index.items():
        for (j, m), b in index.items():
            if end(i, l) == j and l + m < c[i]:
                table[a][b] = [(index[(i, l + m)], 1)]
    labels = []
    for i, l in paths:
        labels.append(f"e{i}" if l == 0 else "".join(f"a{end(i, t)}" for t in range(l)))
    unit = [1 if l == 0 else 0 for _, l in paths]
    idem = [[1 if p == (i, 0) else 0 for p in paths] for i in range(n)]
    kind = "cyclic" if cyclic else "linear"
    nm = name or f"kupisch:[{','.join(map(str, c))}]:{kind}"
    return Algebra(dim, table, unit, idem, labels, name=nm,
                   meta={"kupisch": list(c), "cyclic": bool(cyclic), "paths": paths})


def truncated_poly(n: int) -> Algebra:
    if n < 1:
        raise CorpusError("K[x]/(x^n) needs n >= 1")
    A = nakayama_from_kupisch([n], cyclic=True, name=f"kx:{n}")
    A.labels = ["1"] + ["x" if k == 1 else f"x^{k}" for k in range(1, n)]
    return A


def matrix_algebra(n: int) -> Algebra:
    """Full matrix algebra ``M_n(K)`` with matrix units ``E_ij`` (index ``i*n+j``)."""
    dim = n * n
    table = [[[] for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for l in range(n):
                table[i * n + j][j * n + l] = [(i * n + l, 1)]
    unit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    idem = [[1 if (i, j) == (s, s) else 0 for i in range(n) for j in range(n)] for s in range(n)]
    labels = [f"E{i}{j}" for i in range(n) for j in range(n)]
    return Algebra(dim, table, unit, idem, labels, name=f"matrix:{n}")


@dataclass
class EndomorphismAlgebra:
    algebra: Algebra
    blocks: dict  # (i, j) -> list of basis indices for Hom(M_i, M_j)
    maps: list  # basis index -> (i, j, matrix)
    idempotents: list = field(default_factory=list)


def endomorphism_algebra(modules, name=None) -> EndomorphismAlgebra:
    """``End(M_1 + ... + M_r)`` on the union of hom-space bases.

    Multiplication is composition ``b * b' = b o b'`` (apply ``b'`` first), so
    the summand identities are the declared idempotents.
    """
    if not modules:
        raise CorpusError("need at least one module")
    r = len(modules)
    maps, blocks = [], {}
    for i in range(r):
        for j in range(r):
            idx = []
            for F in hom_basis(modules[i], modules[j]):
                idx.append(len(maps))
                maps.append((i, j, F))
            blocks[(i, j)] = idx
    coords = {key: Coordinates(Mat([maps[k][2].vec() for k in idx],
                                   modules[key[0]].dim * modules[key[1]].dim))
              for key, idx in blocks.items() if idx}
    dim = len(maps)
    table = [[[] for _ in range(dim)] for _ in range(dim)]
    for a, (i, j, F) in enumerate(maps):
        for b, (k, l, G) in enumerate(maps):
            if l != i:
                continue
            # b' = G : M_k -> M_i, then b = F : M_i -> M_j
            P = G @ F
            if P.is_zero():
                continue
            cs = coords[(k, j)].of(P.vec())
            table[a][b] = [(blocks[(k, j)][t], c) for t, c in enumerate(cs) if c]
    idem = []
    for i in range(r):
        v = [0] * dim
        cs = coords[(i, i)].of(Mat.identity(modules[i].dim).vec())
        for t, c in enumerate(cs):
            v[blocks[(i, i)][t]] = c
        idem.append(v)
    unit = [sum(col) for col in zip(*idem)]
    labels = [f"h{i}{j}_{blocks[(i, j)].index(a)}" for a, (i, j, _) in enumerate(maps)]
    A = Algebra(dim, table, unit, idem, labels, name=name or "End")
    return EndomorphismAlgebra(A, blocks, maps, idem)


def radical_power_modules(n: int) -> list[Module]:
    """``[A, J, J^2, ..., J^{n-1}]`` over ``K[x]/(x^n)``."""
    A = truncated_poly(n)
    R = regular_module(A)
    mods = [R.with_name("A")]
    for k in range(1, n):
        rows = [[1 if t == s else 0 for t in range(n)] for s in range(k, n)]
        M, _ = submodule(R, Mat(rows, n), name=f"J^{k}")
        mods.append(M)
    return mods


def auslander(n: int) -> Algebra:
    E = endomorphism_algebra(radical_power_modules(n), name=f"auslander:kx:{n}")
    return E.algebra


# ----------------------------------------------------------------------------
# names


def _parse(tokens: list[str]) -> tuple[Algebra, list[str]]:
    if not tokens:
        raise CorpusError("unexpected end of corpus name")
    head, rest = tokens[0], tokens[1:]
    try:
        if head == "kupisch":
            if len(rest) < 2 or rest[1] not in ("cyclic", "linear"):
                raise CorpusError("expected kupisch:[c0,...]:cyclic|linear")
            series = json.loads(rest[0])
            if not isinstance(series, list):
                raise CorpusError("Kupisch series must be a list")
            return _cached_kupisch(tuple(series), rest[1] == "cyclic"), rest[2:]
        if head == "kx":
            return _cached_kx(int(rest[0])), rest[1:]
        if head == "matrix":
            return _cached_matrix(int(rest[0])), rest[1:]
        if head == "auslander":
            if rest[:1] != ["kx"] or len(rest) < 2:
                raise CorpusError("expected auslander:kx:n")
            return _cached_auslander(int(rest[1])), rest[2:]
        if head == "tensor":
            a, rest = _parse(rest)
            b, rest = _parse(rest)
            return _cached_tensor(a.name, b.name), rest
    except (IndexError, ValueError) as exc:
        if isinstance(exc, CorpusError):
            raise
        raise CorpusError(f"malformed corpus name near {head!r}: {exc}") from None
    raise CorpusError(f"unknown corpus constructor {head!r}")


@lru_cache(maxsize=None)
def _cached_kupisch(series, cyclic):
    return nakayama_from_kupisch(list(series), cyclic)


@lru_cache(maxsize=None)
def _cached_kx(n):
    return truncated_poly(n)


@lru_cache(maxsize=None)
def _cached_matrix(n):
    return matrix_algebra(n)


@lru_cache(maxsize=None)
def _cached_auslander(n):
    return auslander(n)


@lru_cache(maxsize=None)
def _cached_tensor(a, b):
    return tensor_algebras(by_name(a), by_name(b), name=f"tensor:{a}:{b}")


def by_name(name: str) -> Algebra:
    """Construct (and cache) a corpus algebra from its name."""
    alg, rest = _parse(name.strip().split(":"))
    if rest:
        raise CorpusError(f"trailing tokens in corpus name: {':'.join(rest)!r}")
    return alg


CORPUS = [
    ("kupisch:[2,3]:cyclic", "B5, the Auslander algebra of K[x]/(x^2)"),
    ("kupisch:[2,1]:linear", "T2, upper triangular 2x2 matrices"),
    ("kx:1", "the ground field"),
    ("kx:2", "A2 = K[x]/(x^2)"),
    ("kx:3", "K[x]/(x^3)"),
    ("auslander:kx:2", "Auslander algebra of K[x]/(x^2) built as an endomorphism ring"),
    ("auslander:kx:3", "Auslander algebra of K[x]/(x^3)"),
    ("tensor:kupisch:[2,3]:cyclic:kx:2", "B5 (x) A2"),
    ("kupisch:[1,1]:linear", "K x K"),
    ("matrix:2", "M_2(K)"),
]


def list_names() -> list[tuple[str, str]]:
    return list(CORPUS)


# ----------------------------------------------------------------------------
# module catalogs


@dataclass
class Catalog:
    algebra: Algebra
    modules: list  # Module objects, each with .name
    complete: bool  # True when this is every indecomposable

    def __iter__(self):
        return iter(self.modules)

    def __len__(self):
        return len(self.modules)

    def names(self) -> list[str]:
        return [m.name for m in self.modules]

    def get(self, name: str) -> Module:
        for m in self.modules:
            if m.name == name:
                return m
        raise KeyError(name)


def projective_module(A: Algebra, s: int) -> tuple[Module, Mat]:
    """``f_s A`` as a submodule of the regular module (with its basis rows)."""
    from .linalg import row_basis

    rows = row_basis(A.left_mult(A.idempotents[s]))
    return submodule(regular_module(A), rows, name=f"P{s}")


def injective_module(A: Algebra, s: int) -> Module:
    """``D(A f_s)``."""
    from .linalg import row_basis

    rows = row_basis(A.right_mult(A.idempotents[s]))
    Ae, _ = submodule(regular_module(A.opposite), rows)
    return dual_module(Ae).with_name(f"D(Ae{s})")


def _nakayama_catalog(A: Algebra) -> Catalog:
    c = A.meta["kupisch"]
    n = len(c)
    cyclic = A.meta["cyclic"]
    paths = A.meta["paths"]
    R = regular_module(A)
    mods = []
    for i in range(n):
        for k in range(1, c[i] + 1):
            rows = [[1 if p == (i, l) else 0 for p in paths] for l in range(c[i])]
            P, _ = submodule(R, Mat(rows, A.dim))
            # inside P (basis ordered by path length) the submodule P J^k is the tail
            tail = [[1 if t == s else 0 for t in range(c[i])] for s in range(k, c[i])]
            Q = quotient_module(P, Mat(tail, c[i]) if tail else Mat([], c[i])).module
            if k == c[i]:
                name = f"P{i}"
            elif k == 1:
                name = f"S{i}"
            else:
                soc = (i + k - 1) % n if cyclic else i + k - 1
                name = f"M{i}_{k}"
                if _is_injective_uniserial(c, n, cyclic, i, k):
                    name = f"D(Ae{soc})"
            mods.append(Q.with_name(name))
    return Catalog(A, mods, complete=True)


def _is_injective_uniserial(c, n, cyclic, i, k) -> bool:
    # e_i A / e_i A J^k is injective iff it is not a proper quotient of a longer
    # uniserial with the same socle, i.e. the predecessor vertex cannot extend it
    if cyclic:
        prev = (i - 1) % n
    elif i == 0:
        return True
    else:
        prev = i - 1
    return c[prev] < k + 1


def module_catalog(A: Algebra, seed: int = 0) -> Catalog:
    """Named modules over a corpus algebra.

    Nakayama algebras get every indecomposable.  Anything else gets its
    simples, indecomposable projectives and indecomposable injectives, with
    isomorphic duplicates removed (``complete`` is then False).
    """
    cache = A._cache
    if "catalog" in cache:
        return cache["catalog"]
    if "kupisch" in A.meta:
        cat = _nakayama_catalog(A)
    else:
        from .homological import simple_module
        from .iso import iso_modules

        reps = [cls[0] for cls in A.idempotent_classes]
        candidates = [simple_module(A, s) for s in reps]
        candidates += [projective_module(A, s)[0] for s in reps]
        candidates += [injective_module(A, s) for s in reps]
        found = []
        for M in candidates:
            if not any(iso_modules(M, N, seed=seed).is_iso for N in found):
                found.append(M)
        cat = Catalog(A, found, complete=False)
    cache["catalog"] = cat
    return cat


def bimodule_catalog(A: Algebra) -> list:
    """Standard A-bimodules: ``A``, ``D(A)``, ``D(A) (x)_A D(A)`` and ``D(S_i) (x)_K S_j``."""
    from .homological import simple_module
    from .modules import (as_bimodule, as_left_bimodule, dual_regular_bimodule, regular_bimodule,
                          tensor_over)

    cache = A._cache
    if "bimodule_catalog" not in cache:
        D = dual_regular_bimodule(A)
        out = [regular_bimodule(A), D, tensor_over(D, D, name="D(A)(x)D(A)")]
        simples = [simple_module(A, cls[0]) for cls in A.idempotent_classes]
        for S in simples:
            left = as_left_bimodule(dual_module(S))
            for T in simples:
                out.append(tensor_over(left, as_bimodule(T), name=f"D({S.name})(x){T.name}"))
        cache["bimodule_catalog"] = out
    return cache["bimodule_catalog"]
