"""JSON formats for algebras, modules, matrices and corings, plus offline re-verification."""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import Algebra
from .linalg import Mat, invert, rat, rat_str
from .modules import Module

SCHEMA = 1


class ParseError(ValueError):
    """Malformed input; ``where`` locates the problem (``line:col`` or a JSON path)."""

    def __init__(self, msg, where=None):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _rat(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"expected an integer or a 'num/den' string, got {x!r}", where)
    try:
        return rat(Fraction(x) if isinstance(x, int) else x)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {x!r}", where) from None


# ----------------------------------------------------------------------------
# matrices


def mat_to_json(m: Mat) -> dict:
    return {"rows": m.nrows, "cols": m.ncols, "entries": [[rat_str(x) for x in r] for r in m.rows]}


def mat_from_json(d, where="matrix") -> Mat:
    try:
        rows, cols, entries = d["rows"], d["cols"], d["entries"]
    except (KeyError, TypeError):
        raise ParseError("matrix needs 'rows', 'cols', 'entries'", where) from None
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ParseError("matrix entries do not match its shape", where)
    return Mat([[_rat(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)]
                for i, r in enumerate(entries)], cols)


# ----------------------------------------------------------------------------
# algebras


def algebra_to_json(A: Algebra) -> dict:
    consts = sorted([i, j, k, rat_str(c)] for i in range(A.dim) for j in range(A.dim)
                    for k, c in A.table[i][j])
    return {
        "dim": A.dim,
        "labels": list(A.labels),
        "structconsts": consts,
        "unit": [rat_str(x) for x in A.unit],
        "idempotents": [[rat_str(x) for x in f] for f in A.idempotents],
        "name": A.name,
    }


def algebra_from_json(data, name=None) -> Algebra:
    """Build an algebra from a dict or JSON text; raises :class:`ParseError` with a location."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", "$")
    for key in ("dim", "structconsts", "unit", "idempotents"):
        if key not in data:
            raise ParseError(f"missing field {key!r}", "$")
    n = data["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("dim must be a positive integer", "$.dim")
    table = [[[] for _ in range(n)] for _ in range(n)]
    seen = set()
    for t, entry in enumerate(data["structconsts"]):
        where = f"$.structconsts[{t}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise ParseError("expected [i, j, k, 'num/den']", where)
        i, j, k = entry[:3]
        if not all(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n for x in (i, j, k)):
            raise ParseError("index out of range", where)
        if (i, j, k) in seen:
            raise ParseError("duplicate structure constant", where)
        seen.add((i, j, k))
        c = _rat(entry[3], where)
        if c:
            table[i][j].append((k, c))
    for i in range(n):
        for j in range(n):
            table[i][j].sort()

    def vec(v, where):
        if not isinstance(v, list) or len(v) != n:
            raise ParseError(f"expected a list of {n} rationals", where)
        return [_rat(x, f"{where}[{i}]") for i, x in enumerate(v)]

    unit = vec(data["unit"], "$.unit")
    idem = [vec(f, f"$.idempotents[{s}]") for s, f in enumerate(data["idempotents"])]
    if not idem:
        raise ParseError("at least one idempotent is required", "$.idempotents")
    labels = data.get("labels") or [f"b{i}" for i in range(n)]
    if len(labels) != n or not all(isinstance(x, str) for x in labels):
        raise ParseError(f"labels must be {n} strings", "$.labels")
    return Algebra(n, table, unit, idem, labels, name=name or data.get("name") or "input")


# ----------------------------------------------------------------------------
# modules and corings


def module_to_json(M: Module) -> dict:
    return {"algebra": M.algebra.name, "name": M.name, "dim": M.dim,
            "action": [[[rat_str(x) for x in r] for r in a.rows] for a in M.action]}


def module_from_json(d, A: Algebra, where="module") -> Module:
    try:
        dim, action = d["dim"], d["action"]
    except (KeyError, TypeError):
        raise ParseError("module needs 'dim' and 'action'", where) from None
    if len(action) != A.dim:
        raise ParseError("one action matrix per algebra basis element is required", where)
    mats = []
    for i, a in enumerate(action):
        if len(a) != dim or any(len(r) != dim for r in a):
            raise ParseError("action matrix has the wrong shape", f"{where}.action[{i}]")
        mats.append(Mat([[_rat(x, f"{where}.action[{i}]") for x in r] for r in a], dim))
    return Module(A, dim, mats, name=d.get("name"))


def coring_to_json(C) -> dict:
    W = C.W
    return {
        "W": {"dim": W.dim,
              "left": [mat_to_json(m) for m in W.lact],
              "right": [mat_to_json(m) for m in W.ract]},
        "mu": mat_to_json(C.mu),
        "eps": mat_to_json(C.eps),
        "tensor_basis": [list(p) for p in C.WW.tensor.pairs],
        "idempotent": [rat_str(x) for x in C.idempotent] if C.idempotent is not None else None,
        "verified": C.verified,
        "failures": list(C.report.failures) if C.report else [],
    }


def coring_from_json(d, A: Algebra):
    from .bocs import Coring, verify_coring_axioms
    from .modules import Bimodule

    W = Bimodule(A, A, d["W"]["dim"], [mat_from_json(m) for m in d["W"]["left"]],
                 [mat_from_json(m) for m in d["W"]["right"]], name="W")
    C = Coring(A, W, mat_from_json(d["mu"]), mat_from_json(d["eps"]))
    if d.get("idempotent") is not None:
        C.idempotent = tuple(_rat(x, "idempotent") for x in d["idempotent"])
    if [list(p) for p in C.WW.tensor.pairs] != d["tensor_basis"]:
        raise ParseError("tensor basis does not match the recomputed one", "coring.tensor_basis")
    verify_coring_axioms(C)
    return C


# ----------------------------------------------------------------------------
# offline re-verification of CLI reports


def reverify(report: dict) -> list[str]:
    """Re-check every certificate in a JSON report from the algebra data alone.

    Returns a list of problems (empty when everything checks out).
    """
    from .bocs import BocsCategory, BocsHom
    from .gendo import corner_bimodules
    from .modules import dual_regular_bimodule, is_bimodule_hom, is_hom, tensor_over

    problems = []
    if report.get("schema") != SCHEMA:
        return [f"unsupported schema {report.get('schema')!r}"]
    A = algebra_from_json(report["algebra"])
    gendo = report.get("gendo")
    if gendo:
        D = dual_regular_bimodule(A)
        wit = gendo.get("witnesses", {})
        if "D(A)(x)D(A)->D(A)" in wit:
            F = mat_from_json(wit["D(A)(x)D(A)->D(A)"])
            T = tensor_over(D, D)
            if not (is_bimodule_hom(T, D, F) and invert(F) is not None):
                problems.append("D(A)(x)D(A) -> D(A) witness fails")
        if "D(Ae)->eA" in wit:
            e = [_rat(x, "idempotent") for x in gendo["idempotent"]]
            V, W = corner_bimodules(A, e)
            F = mat_from_json(wit["D(Ae)->eA"])
            if not (is_bimodule_hom(V, W, F) and invert(F) is not None):
                problems.append("D(Ae) -> eA witness fails")
    bocs = report.get("bocs")
    if bocs and bocs.get("coring"):
        C = coring_from_json(bocs["coring"], A)
        if not C.verified:
            problems.append("coring axioms fail: " + "; ".join(C.report.failures))
        D = dual_regular_bimodule(A)
        if not (C.W.lact == D.lact and C.W.ract == D.ract):
            problems.append("coring bimodule is not D(A)")
        mods = {m["name"]: module_from_json(m, A) for m in bocs.get("modules", [])}
        K = BocsCategory(C)
        for cls in bocs.get("classes", []):
            rep = mods[cls["representative"]]
            for wit in cls.get("witnesses", []):
                M = mods[wit["module"]]
                F = BocsHom(M, rep, mat_from_json(wit["forward"]))
                G = BocsHom(rep, M, mat_from_json(wit["backward"]))
                if (not is_hom(M, K.H(rep), F.matrix) or not is_hom(rep, K.H(M), G.matrix)
                        or K.compose(G, F).matrix != K.identity(M).matrix
                        or K.compose(F, G).matrix != K.identity(rep).matrix):
                    problems.append(f"bocs isomorphism {wit['module']} ~ {cls['representative']} fails")
        for name in bocs.get("zero_objects", []):
            if not K.identity(mods[name]).is_zero():
                problems.append(f"{name} is not zero in the bocs category")
    return problems
