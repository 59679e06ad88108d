"""Command-line front end.

Exit codes: 0 success (or gendo-symmetric), 1 not gendo-symmetric / no bocs,
2 input could not be parsed, 3 the input violates algebra invariants,
4 a randomized search stayed undecided.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra import Algebra, center, check_presentation, validate_idempotents
from .corpus import CorpusError, by_name, list_names, module_catalog
from .linalg import rat_str
from .serialize import (SCHEMA, ParseError, algebra_from_json, algebra_to_json, coring_to_json,
                        dumps, mat_to_json, module_to_json, reverify)

EXIT_OK, EXIT_NO, EXIT_PARSE, EXIT_INVALID, EXIT_UNDECIDED = 0, 1, 2, 3, 4


class InputError(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def load_algebra(source: str) -> Algebra:
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
        try:
            A = algebra_from_json(text, name=None)
        except ParseError as exc:
            raise InputError(EXIT_PARSE, f"{source}: {exc}") from None
    else:
        try:
            A = by_name(source)
        except CorpusError as exc:
            raise InputError(EXIT_PARSE, f"not a file or corpus name: {exc}") from None
    bad = check_presentation(A).failures + validate_idempotents(A).failures
    if bad:
        raise InputError(EXIT_INVALID, "invalid algebra presentation:\n  " + "\n  ".join(dict.fromkeys(bad)))
    return A


def _header(cmd, A, args) -> dict:
    return {"schema": SCHEMA, "command": cmd, "seed": args.seed, "cap": args.cap,
            "version": __version__, "algebra": algebra_to_json(A)}


# ----------------------------------------------------------------------------
# commands


def cmd_analyze(A: Algebra, args) -> tuple[dict, int, list[str]]:
    from .homological import dominant_dimension, is_injective, is_projective, simple_module
    from .corpus import injective_module, projective_module
    from .modules import regular_module

    rep = _header("analyze", A, args)
    reps = [cls[0] for cls in A.idempotent_classes]
    table = {}
    for s in reps:
        P = projective_module(A, s)[0]
        I = injective_module(A, s)
        table[str(s)] = {"projective_dim": P.dim, "projective_is_injective": is_injective(P),
                         "injective_dim": I.dim, "injective_is_projective": is_projective(I),
                         "simple_dim": simple_module(A, s).dim}
    dd = dominant_dimension(regular_module(A), args.cap)
    cat = module_catalog(A, seed=args.seed)
    rep.update({
        "dim": A.dim,
        "radical_dim": A.radical.nrows,
        "center_dim": center(A).nrows,
        "simples": len(reps),
        "idempotent_classes": A.idempotent_classes,
        "projective_injective_table": table,
        "domdim_regular": dd.to_json(),
        "catalog": {"complete": cat.complete,
                    "modules": [{"name": M.name, "dim": M.dim,
                                 "domdim": dominant_dimension(M, args.cap).to_json()} for M in cat]},
    })
    text = [f"algebra {A.name}: dim {A.dim}, radical {rep['radical_dim']}, center {rep['center_dim']}",
            f"simples: {len(reps)}",
            f"dominant dimension of A_A: {dd}"]
    for s, row in table.items():
        text.append(f"  e{s}A dim {row['projective_dim']} injective={row['projective_is_injective']};"
                    f" D(Ae{s}) dim {row['injective_dim']} projective={row['injective_is_projective']}")
    text.append("catalog: " + ", ".join(f"{m['name']}(dim {m['dim']}, domdim {m['domdim']})"
                                        for m in rep["catalog"]["modules"]))
    return rep, EXIT_OK, text


def _gendo_json(g) -> dict:
    return {
        "projective_injective": g.projective_injective,
        "idempotent": [rat_str(x) for x in g.idempotent] if g.idempotent is not None else None,
        "idempotent_indices": g.idempotent_indices,
        "dominant_dim": g.dominant_dim.to_json(),
        "is_morita": g.is_morita,
        "is_gendo_symmetric": g.is_gendo_symmetric,
        "corner_route": g.corner_route,
        "tensor_route": g.tensor_route,
        "witnesses": {k: mat_to_json(v) for k, v in sorted(g.witnesses.items())},
    }


def _verdict_code(flag) -> int:
    return EXIT_UNDECIDED if flag is None else (EXIT_OK if flag else EXIT_NO)


def cmd_gendo(A: Algebra, args):
    from .gendo import classify

    g = classify(A, seed=args.seed, cap=args.cap)
    rep = _header("gendo", A, args)
    rep["gendo"] = _gendo_json(g)
    verdict = {True: "gendo-symmetric", False: "not gendo-symmetric", None: "undecided"}
    text = [f"algebra {A.name}: {verdict[g.is_gendo_symmetric]}",
            f"dominant dimension: {g.dominant_dim}",
            f"Morita: {g.is_morita}",
            "minimal faithful projective-injective: "
            + (" + ".join(f"e{s}" for s in g.idempotent_indices) if g.idempotent is not None else "none"),
            f"D(A)(x)D(A): dim {g.tensor_route['dim_DA_tensor_DA']} vs dim D(A) {g.tensor_route['dim_DA']},"
            f" {g.tensor_route['status']}"]
    return rep, _verdict_code(g.is_gendo_symmetric), text


def cmd_bocs(A: Algebra, args):
    from .bocs import decide_bocs_existence
    from .gendo import bocs_category
    from .homological import dominant_dimension

    v = decide_bocs_existence(A, seed=args.seed, cap=args.cap)
    rep = _header("bocs", A, args)
    rep["gendo"] = _gendo_json(v.report)
    out = {"exists": v.exists, "evidence": {k: v.evidence[k] for k in sorted(v.evidence)}}
    rep["bocs"] = out
    text = [f"algebra {A.name}: bocs structure on (A, D(A)) "
            + {True: "exists", False: "does not exist", None: "undecided"}[v.exists]]
    if not v.exists:
        text.append(f"  {v.evidence.get('reason', '')}")
        return rep, _verdict_code(v.exists), text
    C = v.coring
    K = bocs_category(A, args.seed)
    cat = list(module_catalog(A, seed=args.seed))
    out["coring"] = coring_to_json(C)
    out["modules"] = [module_to_json(M) for M in cat]
    flags = []
    for M in cat:
        f = K.IM_flags(M)
        flags.append({"module": M.name, "domdim": dominant_dimension(M, args.cap).to_json(),
                      "IM_injective": f["injective"], "IM_bijective": f["bijective"]})
    out["IM_table"] = flags
    zeros = [M for M in cat if K.is_zero(M)]
    out["zero_objects"] = [M.name for M in zeros]
    classes, undecided = [], False
    for M in cat:
        if M in zeros:
            continue
        for cls in classes:
            r = K.is_isomorphic(M, cls["rep"], seed=args.seed)
            if r["status"] == "undecided":
                undecided = True
            if r["status"] == "iso":
                cls["members"].append(M.name)
                cls["witnesses"].append({"module": M.name, "forward": mat_to_json(r["forward"].matrix),
                                         "backward": mat_to_json(r["backward"].matrix)})
                break
        else:
            classes.append({"rep": M, "members": [M.name], "witnesses": []})
    out["classes"] = [{"representative": c["rep"].name, "members": c["members"],
                       "witnesses": c["witnesses"]} for c in classes]
    out["nonzero_classes"] = len(classes)
    out["eAe_check"] = K.eAe_equivalence_check(cat)
    text.append(f"  coring axioms: {'verified' if C.verified else 'FAILED'}")
    text.append("  I_M table: " + ", ".join(
        f"{r['module']}(domdim {r['domdim']}: inj={r['IM_injective']}, bij={r['IM_bijective']})"
        for r in flags))
    text.append(f"  zero objects: {', '.join(out['zero_objects']) or 'none'}")
    text.append(f"  nonzero isomorphism classes ({len(classes)}): "
                + "; ".join("{" + ", ".join(c["members"]) + "}" for c in classes))
    text.append(f"  Hom_B vs Hom_eAe dimension matrices agree: {out['eAe_check']['agree']}")
    code = EXIT_UNDECIDED if undecided else EXIT_OK
    if not (C.verified and out["eAe_check"]["agree"]):
        code = EXIT_INVALID
    return rep, code, text


def cmd_domdim(A: Algebra, args):
    from .gendo import classify
    from .homological import (dominant_dimension, dominant_dimension_via_ext, is_projective,
                              minimal_injective_resolution)
    from .modules import regular_module

    if args.module:
        cat = module_catalog(A, seed=args.seed)
        try:
            M = cat.get(args.module)
        except KeyError:
            raise InputError(EXIT_PARSE, f"no module {args.module!r}; catalog has {', '.join(cat.names())}") from None
    else:
        M = regular_module(A).with_name("A")
    dd = dominant_dimension(M, args.cap)
    res = minimal_injective_resolution(M, args.cap)
    rep = _header("domdim", A, args)
    rep["module"] = module_to_json(M)
    rep["domdim"] = dd.to_json()
    rep["resolution"] = [{"dim": I.dim, "projective": is_projective(I)} for I in res.terms]
    rep["resolution_terminated"] = res.terminated
    text = [f"{M.name} over {A.name}: dominant dimension {dd}",
            "  injective resolution: " + " -> ".join(
                f"I{k}(dim {t['dim']}{', proj' if t['projective'] else ''})"
                for k, t in enumerate(rep["resolution"]))]
    g = classify(A, seed=args.seed, cap=args.cap)
    if g.is_morita:
        via = dominant_dimension_via_ext(M, g.idempotent, args.cap)
        rep["domdim_via_ext"] = via.to_json()
        rep["agree"] = dd == via
        text.append(f"  via Ext(A/AeA, -): {via} (agree: {rep['agree']})")
    return rep, EXIT_OK, text


def cmd_corpus(args):
    rep = {"schema": SCHEMA, "command": "corpus list",
           "corpus": [{"name": n, "description": d} for n, d in list_names()]}
    text = [f"{n:40s} {d}" for n, d in list_names()]
    return rep, EXIT_OK, text


def cmd_verify(args):
    try:
        with open(args.report, encoding="utf-8") as fh:
            report = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(EXIT_PARSE, f"cannot read report: {exc}") from None
    problems = reverify(report)
    rep = {"schema": SCHEMA, "command": "verify", "ok": not problems, "problems": problems}
    text = ["all certificates re-verified"] if not problems else problems
    return rep, EXIT_OK if not problems else EXIT_INVALID, text


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bocskit", description="Exact gendo-symmetric and bocs computations.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("input", help="algebra JSON file or corpus name (see 'corpus list')")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--cap", type=int, default=8, help="resolution length cap (default 8)")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.add_argument("--out", help="write the report here instead of stdout")

    for name, helptext in [("analyze", "structure report"), ("gendo", "Morita / gendo-symmetric verdict"),
                           ("bocs", "bocs structure and its module category"),
                           ("domdim", "dominant dimension of a module")]:
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        if name == "domdim":
            sp.add_argument("--module", help="catalog module name (default: the regular module)")
    cp = sub.add_parser("corpus", help="list corpus algebras")
    cp.add_argument("action", choices=["list"])
    cp.add_argument("--json", action="store_true")
    cp.add_argument("--out")
    vp = sub.add_parser("verify", help="re-check the certificates in a JSON report")
    vp.add_argument("report")
    vp.add_argument("--json", action="store_true")
    vp.add_argument("--out")
    return p


COMMANDS = {"analyze": cmd_analyze, "gendo": cmd_gendo, "bocs": cmd_bocs, "domdim": cmd_domdim}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "corpus":
            rep, code, text = cmd_corpus(args)
        elif args.command == "verify":
            rep, code, text = cmd_verify(args)
        else:
            if args.cap < 1:
                raise InputError(EXIT_PARSE, "--cap must be at least 1")
            A = load_algebra(args.input)
            rep, code, text = COMMANDS[args.command](A, args)
    except InputError as exc:
        print(f"bocskit: {exc}", file=sys.stderr)
        return exc.code
    body = dumps(rep) if args.json else "\n".join(text) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
