"""Acceptance suite: one PASS/FAIL line per criterion, all checks exact.

Run directly (``python tests/test_acceptance.py``) or through pytest.
"""

import json
import random
import subprocess
import sys
import tempfile
import time
from pathlib import Path

import pytest

from bocskit.algebra import center
from bocskit.bocs import (BocsHom, Coring, coring_from_idempotent, decide_bocs_existence,
                          dual_identification, hom_mu_psi_invertible, tensor_corings,
                          transport_coring, trivial_coring, verify_coring_axioms)
from bocskit.corpus import CORPUS, bimodule_catalog, by_name, module_catalog, projective_module
from bocskit.gendo import (bocs_category, check_dom2_criterion, check_regular_summand, classify,
                           coring_end_center, da_coring, zeta_anti_iso)
from bocskit.homological import (DomDim, dominant_dimension, dominant_dimension_via_ext,
                                 hom_tensor_duality_iso, nakayama_inverse)
from bocskit.iso import iso_modules
from bocskit.linalg import Mat, lincomb
from bocskit.algebra import two_sided_ideal_of_idempotent
from bocskit.modules import dual_bimodule, hom_basis, intertwiners, regular_module, tensor_over
from bocskit.serialize import reverify

B5_NAME = "kupisch:[2,3]:cyclic"
SEED = 20240601


class Checks:
    """Collects named sub-checks; a criterion passes when all of them hold."""

    def __init__(self):
        self.failed = []

    def __call__(self, cond, label):
        if not cond:
            self.failed.append(label)

    @property
    def ok(self):
        return not self.failed


# ----------------------------------------------------------------------------


def criterion_1(c: Checks):
    B5 = by_name(B5_NAME)
    cat = module_catalog(B5)
    get = cat.get
    c([projective_module(B5, s)[0].dim for s in range(2)] == [2, 3], "dim e0B = 2, dim e1B = 3")
    g = classify(B5)
    c(g.projective_injective == [1] and g.idempotent_indices == [1], "e1B unique minimal faithful proj-inj")
    mods = list(cat)
    c(cat.complete and len(mods) == 5, "catalog has 5 indecomposables")
    c(all(iso_modules(M, N).status == "not_iso" for i, M in enumerate(mods) for N in mods[i + 1:]),
      "catalog pairwise non-isomorphic")
    c(dominant_dimension(get("S1")) == DomDim.finite(1), "domdim S1 = 1")
    c(dominant_dimension(get("D(Ae0)")) == DomDim.finite(0), "domdim D(Be0) = 0")
    ideal = two_sided_ideal_of_idempotent(B5, B5.idempotents[1])
    killed = [M.name for M in mods if all(M.act(v).is_zero() for v in ideal.basis.rows)]
    c(killed == ["S0"], "S0 unique module annihilated by Be1B")
    P0 = get("P0")
    c(iso_modules(nakayama_inverse(get("S1")), P0).is_iso, "nu^-1(S1) ~= e0B")
    c(iso_modules(nakayama_inverse(get("D(Ae0)")), P0).is_iso, "nu^-1(D(Be0)) ~= e0B")


def criterion_2(c: Checks):
    cases = {B5_NAME: True, "kx:2": True, "auslander:kx:3": True,
             "tensor:kupisch:[2,3]:cyclic:kx:2": True, "kupisch:[2,1]:linear": False}
    for name, expected in cases.items():
        A = by_name(name)
        v = decide_bocs_existence(A, seed=SEED)
        c(v.exists is expected, f"{name}: verdict {v.exists}")
        c(v.exists == classify(A, seed=SEED).is_gendo_symmetric, f"{name}: agrees with classify")
        if expected:
            c(v.coring is not None and v.coring.verified, f"{name}: coring verified")
            c(v.coring is not None and dual_identification(v.coring) is not None, f"{name}: W = D(A)")


def criterion_3(c: Checks):
    B5, A2, T2 = by_name(B5_NAME), by_name("kx:2"), by_name("kupisch:[2,1]:linear")
    built = {}
    for name, _ in CORPUS:
        built[f"trivial {name}"] = trivial_coring(by_name(name))
    built["idempotent B5 e1"] = coring_from_idempotent(B5, B5.idempotents[1])
    built["idempotent B5 unit"] = coring_from_idempotent(B5, B5.unit)
    built["idempotent T2"] = coring_from_idempotent(T2, classify(T2).idempotent)
    built["transported B5"] = da_coring(B5)
    built["transported A2"] = da_coring(A2)
    C = built["idempotent B5 e1"]
    built["transported 2*id"] = transport_coring(C, Mat.identity(C.W.dim, 2), C.W)
    built["tensor B5 (x) A2"] = tensor_corings(da_coring(B5), da_coring(A2),
                                               algebra=by_name("tensor:kupisch:[2,3]:cyclic:kx:2"))
    for label, D in built.items():
        c(verify_coring_axioms(D).ok, f"{label}: axioms")
    for label in ("transported B5", "transported A2"):
        D = built[label]
        eps2 = Coring(D.algebra, D.W, D.mu, D.eps.scale(2))
        r = verify_coring_axioms(eps2)
        c(not r.ok and any("counit" in f for f in r.failures), f"{label}: eps scaled fails counit")
        mu0 = Coring(D.algebra, D.W, Mat.zeros(D.mu.nrows, D.mu.ncols), D.eps)
        r = verify_coring_axioms(mu0)
        c(not r.ok and any("counit" in f for f in r.failures), f"{label}: mu zeroed fails counit")


def criterion_4(c: Checks):
    B5 = by_name(B5_NAME)
    K = bocs_category(B5)
    for M in module_catalog(B5):
        dd = dominant_dimension(M)
        flags = K.IM_flags(M)
        c(flags["injective"] == bool(dd.at_least(1)), f"{M.name}: injective iff domdim >= 1")
        c(flags["bijective"] == bool(dd.at_least(2)), f"{M.name}: bijective iff domdim >= 2")


def bocs_partition(K, mods):
    zero = sorted(M.name for M in mods if K.identity(M).is_zero())
    classes = []
    for M in mods:
        if M.name in zero:
            continue
        for cls in classes:
            if K.is_isomorphic(cls[0], M)["status"] == "iso":
                cls.append(M)
                break
        else:
            classes.append([M])
    return zero, sorted(sorted(M.name for M in cls) for cls in classes)


def criterion_5(c: Checks):
    B5 = by_name(B5_NAME)
    K = bocs_category(B5)
    mods = list(module_catalog(B5))
    zero, classes = bocs_partition(K, mods)
    c(zero == ["S0"], f"zero objects {zero}")
    c(classes == sorted([sorted(["S1", "P0", "D(Ae0)"]), ["P1"]]), f"classes {classes}")
    r = K.eAe_equivalence_check(mods)
    c(r["agree"] and len(r["bocs"]) == 5 and all(len(row) == 5 for row in r["bocs"]),
      "eAe 5x5 hom-dimension matrices agree")


def criterion_6(c: Checks):
    for name, _ in CORPUS:
        A = by_name(name)
        g = classify(A)
        if not g.is_morita:
            continue
        for M in list(module_catalog(A)) + [regular_module(A)]:
            a, b = dominant_dimension(M), dominant_dimension_via_ext(M, g.idempotent)
            c(a == b, f"{name} {M.name}: {a} vs {b}")
    B5 = by_name(B5_NAME)
    R = regular_module(B5)
    e = classify(B5).idempotent
    c(dominant_dimension(R) == dominant_dimension_via_ext(R, e) == DomDim.finite(2), "domdim B5 = 2")


def criterion_7(c: Checks):
    for name in (B5_NAME, "kx:2"):
        z = zeta_anti_iso(by_name(name))
        c(z.bijective and z.anti_multiplicative and z.unit_ok, f"{name}: zeta anti-isomorphism")
    B5 = by_name(B5_NAME)
    r = coring_end_center(B5)
    c(r.ok, "Hom_{A^e}(D(A), A) ring-isomorphic to Z(A)")
    c(r.dim == center(B5).nrows == 2, f"dimension {r.dim} = dim Z(B5)")


def _random_bocs_hom(K, M, N, rng):
    basis = K.hom_space(M, N)
    HN = K.H(N)
    if not basis:
        return BocsHom(M, N, Mat.zeros(M.dim, HN.dim))
    return BocsHom(M, N, lincomb([rng.randint(-3, 3) for _ in basis], [b.matrix for b in basis],
                                 M.dim, HN.dim))


def criterion_8(c: Checks):
    B5 = by_name(B5_NAME)
    K = bocs_category(B5)
    mods = list(module_catalog(B5))
    rng = random.Random(SEED)
    assoc = units = 0
    for _ in range(100):
        M, N, L, P = (rng.choice(mods) for _ in range(4))
        f, g, h = (_random_bocs_hom(K, M, N, rng), _random_bocs_hom(K, N, L, rng),
                   _random_bocs_hom(K, L, P, rng))
        assoc += K.compose(h, K.compose(g, f)).matrix == K.compose(K.compose(h, g), f).matrix
        units += (K.compose(K.identity(N), f).matrix == f.matrix == K.compose(f, K.identity(M)).matrix)
    c(assoc == 100, f"associativity {assoc}/100")
    c(units == 100, f"unit laws {units}/100")
    func = 0
    for _ in range(100):
        M, N, L = (rng.choice(mods) for _ in range(3))
        bf, bg = hom_basis(M, N), hom_basis(N, L)
        F = lincomb([rng.randint(-3, 3) for _ in bf], bf, M.dim, N.dim) if bf else Mat.zeros(M.dim, N.dim)
        G = lincomb([rng.randint(-3, 3) for _ in bg], bg, N.dim, L.dim) if bg else Mat.zeros(N.dim, L.dim)
        func += K.phi(F @ G, M, L).matrix == K.compose(K.phi(G, N, L), K.phi(F, M, N)).matrix
    c(func == 100, f"phi functoriality {func}/100")
    for M in mods + [regular_module(B5)]:
        c(hom_mu_psi_invertible(K, M), f"Hom(mu, {M.name}) psi invertible")
    bims = bimodule_catalog(B5)
    for Y in bims:
        for Z in bims:
            DY, DZ = dual_bimodule(Y), dual_bimodule(Z)
            right = intertwiners(list(zip(Y.right_gen_actions, DZ.right_gen_actions)), Y.dim, Z.dim)
            left = intertwiners(list(zip(Z.left_gen_actions, DY.left_gen_actions)), Z.dim, Y.dim)
            c(len(right) == len(left) == tensor_over(Y, Z).dim, f"duality dims {Y.name}, {Z.name}")
            c(hom_tensor_duality_iso(Y, Z)[1].ok, f"duality iso {Y.name}, {Z.name}")
    for name, _ in CORPUS:
        A = by_name(name)
        c(check_regular_summand(A)["ok"], f"{name}: regular summand of nu^-1(A)")
        if classify(A).is_gendo_symmetric:
            mods_A = list(module_catalog(A)) + [regular_module(A).with_name("A")]
            c(check_dom2_criterion(A, mods_A)["ok"], f"{name}: Dom2 iff nu^-1(M) ~= M")


CLI_RUNS = [["analyze", B5_NAME], ["gendo", B5_NAME], ["bocs", B5_NAME],
            ["domdim", B5_NAME, "--module", "S1"], ["domdim", B5_NAME],
            ["gendo", "kupisch:[2,1]:linear"], ["bocs", "kx:2"], ["corpus", "list"]]


def criterion_9(c: Checks):
    with tempfile.TemporaryDirectory() as tmp:
        for cmd in CLI_RUNS:
            blobs = []
            for k in range(2):
                out = Path(tmp) / f"{k}.json"
                extra = [] if cmd[0] == "corpus" else ["--seed", str(SEED)]
                subprocess.run([sys.executable, "-m", "bocskit", *cmd, *extra, "--json", "--out", str(out)],
                               capture_output=True)
                blobs.append(out.read_bytes() if out.exists() else b"")
            label = " ".join(cmd)
            c(blobs[0] != b"" and blobs[0] == blobs[1], f"{label}: byte-identical")
            if cmd[0] in ("gendo", "bocs") and blobs[0]:
                rep = json.loads(blobs[0])
                c(reverify(rep) == [], f"{label}: witnesses re-verify")
                path = Path(tmp) / "0.json"
                r = subprocess.run([sys.executable, "-m", "bocskit", "verify", str(path)], capture_output=True)
                c(r.returncode == 0, f"{label}: verify command")


CRITERIA = [
    (1, "B5 example reproduction", criterion_1),
    (2, "bocs existence iff gendo-symmetric on the corpus", criterion_2),
    (3, "coring axiom suite and mutations", criterion_3),
    (4, "I_M injective/bijective vs dominant dimension", criterion_4),
    (5, "bocs isomorphism classes of B5 and eAe check", criterion_5),
    (6, "dominant dimension: resolutions vs Ext", criterion_6),
    (7, "zeta and the center of A", criterion_7),
    (8, "property suites", criterion_8),
    (9, "CLI determinism and offline re-verification", criterion_9),
]


def evaluate(fn):
    c = Checks()
    t0 = time.perf_counter()
    fn(c)
    return c, time.perf_counter() - t0


def line(num, title, c, dt):
    status = "PASS" if c.ok else "FAIL"
    extra = "" if c.ok else "  [" + "; ".join(c.failed[:5]) + "]"
    return f"{status} criterion {num}: {title} ({dt:.2f}s){extra}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn, capsys):
    c, dt = evaluate(fn)
    with capsys.disabled():
        print("\n" + line(num, title, c, dt))
    assert c.ok, c.failed
    assert dt < 10, f"took {dt:.1f}s"


if __name__ == "__main__":
    bad = 0
    for num, title, fn in CRITERIA:
        c, dt = evaluate(fn)
        print(line(num, title, c, dt), flush=True)
        bad += not c.ok
    sys.exit(1 if bad else 0)
