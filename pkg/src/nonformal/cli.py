"""Command-line front end.

Exit status: 0 on success, 1 when the mathematics refuses (formal range,
undefined Massey product, failed hypothesis, complex not embedded), 2 on
malformed input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import duality, plembed
from .cdga import CochainAlgebra, CohomologyClass
from .errors import (BasepointConditionViolated, ContractViolation, CutoffExceeded, FormalityRefusal,
                     MasseyUndefined, NonformalError, NonzeroIndeterminacy, NotRadial, ParseError)
from .massey import CONVENTIONS, formality_scan, massey_rank, massey_triple
from .spaces import SpaceSpec, cochains, default_cutoff, parse_space, sphere_class

REFUSALS = (FormalityRefusal, MasseyUndefined, NonzeroIndeterminacy, NotRadial, BasepointConditionViolated)


class _Fail(Exception):
    def __init__(self, code: int, message: str, payload: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.payload = payload


def _q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _vec(v) -> list:
    return [_q(x) for x in v]


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in v) + ")"


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _Fail(2, f"cannot read {path}: {exc}") from None


def _space(path: str) -> SpaceSpec:
    return parse_space(_read(path))


def _algebra(spec: SpaceSpec, cutoff: Optional[int], need: int = 0) -> CochainAlgebra:
    if cutoff is None:
        cutoff = max(default_cutoff(spec), need + 1)
    return cochains(spec, cutoff)


_BASIS = re.compile(r"h([0-9]+)_([0-9]+)")
_GAMMA = re.compile(r"g([0-9]+)")


def _class_degree(spec: SpaceSpec, name: str) -> int:
    spheres = dict(spec.spheres)
    if name in spheres:
        return spheres[name]
    m = _GAMMA.fullmatch(name)
    if m and 1 <= int(m.group(1)) <= len(spec.spheres):
        return spec.spheres[int(m.group(1)) - 1][1]
    m = _BASIS.fullmatch(name)
    if m:
        return int(m.group(1))
    raise ContractViolation(f"unknown class {name!r}: use a sphere name, g<i> or h<degree>_<i>")


def _class(alg: CochainAlgebra, spec: SpaceSpec, name: str) -> CohomologyClass:
    if name in dict(spec.spheres):
        return sphere_class(alg, spec, name)
    m = _GAMMA.fullmatch(name)
    if m:
        return sphere_class(alg, spec, int(m.group(1)))
    m = _BASIS.fullmatch(name)
    if m:
        deg, i = int(m.group(1)), int(m.group(2))
        dim = alg.cohomology(deg).dim
        if not 1 <= i <= dim:
            raise ContractViolation(f"H^{deg} has dimension {dim}; no basis class {i}")
        return alg.basis_class(deg, i - 1)
    raise ContractViolation(f"unknown class {name!r}: use a sphere name, g<i> or h<degree>_<i>")


def _massey_payload(res, names, convention) -> dict:
    return {
        "triple": list(names),
        "degree": res.degree,
        "convention": convention,
        "representative": _vec(res.representative),
        "indeterminacy_dim": res.indeterminacy.dim,
        "indeterminacy_basis": [_vec(b) for b in res.indeterminacy.basis],
        "zero_coset": res.zero_coset,
        "canonical": _vec(res.canonical),
    }


# verbs

def cmd_betti(args) -> tuple:
    spec = _space(args.file)
    top = args.max_degree if args.max_degree is not None else spec.top_dimension
    alg = _algebra(spec, args.cutoff, top)
    b = alg.betti(top)
    text = "\n".join(f"H^{i}: {x}" for i, x in enumerate(b))
    return {"space": spec.name, "cutoff": alg.cutoff, "betti": b}, text


def cmd_cup(args) -> tuple:
    spec = _space(args.file)
    need = _class_degree(spec, args.u) + _class_degree(spec, args.v)
    alg = _algebra(spec, args.cutoff, need)
    u, v = _class(alg, spec, args.u), _class(alg, spec, args.v)
    c = alg.cup(u, v)
    return ({"u": args.u, "v": args.v, "degree": c.degree, "coords": _vec(c.coords), "zero": c.is_zero},
            f"{args.u} * {args.v} in H^{c.degree}: {_fmt_vec(c.coords)}" + (" (zero)" if c.is_zero else ""))


def _triple_degree(spec, names) -> int:
    return sum(_class_degree(spec, n) for n in names) - 1


def cmd_massey(args) -> tuple:
    spec = _space(args.file)
    names = (args.u, args.v, args.w)
    alg = _algebra(spec, args.cutoff, _triple_degree(spec, names))
    res = massey_triple(alg, *(_class(alg, spec, n) for n in names), convention=args.convention)
    payload = _massey_payload(res, names, args.convention)
    text = (f"<{', '.join(names)}> in H^{res.degree}\n"
            f"  representative: {_fmt_vec(res.representative)}\n"
            f"  indeterminacy: dimension {res.indeterminacy.dim}\n"
            f"  canonical: {_fmt_vec(res.canonical)}\n"
            f"  contains zero: {'yes' if res.zero_coset else 'no'}")
    return payload, text


def cmd_scan(args) -> tuple:
    spec = _space(args.file)
    top = args.max_degree if args.max_degree is not None else spec.top_dimension
    alg = _algebra(spec, args.cutoff, top)
    found = formality_scan(alg, top)
    items, lines = [], []
    for r in found:
        names = [f"h{d}_{i + 1}" for d, i in r.triple]
        items.append(_massey_payload(r, names, "classical"))
        lines.append(f"<{', '.join(names)}> in H^{r.degree}: {_fmt_vec(r.canonical)} "
                     f"(indeterminacy {r.indeterminacy.dim})")
    if not lines:
        lines.append(f"no nontrivial triple Massey product up to degree {top} "
                     "(this is not a formality certificate)")
    return {"max_degree": top, "nontrivial": items}, "\n".join(lines)


def cmd_rank(args) -> tuple:
    spec = _space(args.file)
    triples = []
    for t in args.triples:
        parts = [p.strip() for p in t.split(",")]
        if len(parts) != 3 or not all(parts):
            raise ContractViolation(f"triple {t!r} must look like u,v,w")
        triples.append(parts)
    need = max((_triple_degree(spec, t) for t in triples), default=0)
    alg = _algebra(spec, args.cutoff, need)
    r = massey_rank(alg, [[_class(alg, spec, n) for n in t] for t in triples])
    return {"triples": triples, "rank": r}, f"rank {r}"


def _parse_betti(text: str) -> list:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise ContractViolation(f"Betti list {text!r} must be comma-separated integers") from None


def cmd_boundary(args) -> tuple:
    rep = duality.boundary_report(_parse_betti(args.betti), args.ambient, args.k)
    betti = [b if isinstance(b, int) else list(b) for b in rep.betti]
    diags = {k: {"holds": d.holds, "reason": d.reason} for k, d in sorted(rep.diagnostics.items())}
    lines = [f"b_{i}(V) = {b if isinstance(b, int) else f'in [{b[0]}, {b[1]}]'}" for i, b in enumerate(rep.betti)]
    for k, d in sorted(rep.diagnostics.items()):
        verdict = {True: "yes", False: "no", None: "undecided"}[d.holds]
        lines.append(f"{k}: {verdict} ({d.reason})")
    return {"ambient": rep.ambient, "betti": betti, "exact": rep.exact, "diagnostics": diags}, "\n".join(lines)


def cmd_excluded(args) -> tuple:
    ex = sorted(duality.excluded_ambient_dims(args.k, args.mode))
    return {"k": args.k, "mode": args.mode, "excluded": ex}, "{" + ", ".join(map(str, ex)) + "}"


def cmd_plan(args) -> tuple:
    r = duality.dimension_planner(args.k, args.dim)
    payload = {"kind": r.kind, "k": r.k, "dimension": r.dimension, "ambient": r.ambient,
               "description": r.describe(), "justification": r.justification,
               "alternatives": [{"kind": a.kind, "ambient": a.ambient, "justification": a.justification}
                                for a in r.alternatives]}
    text = f"{r.describe()}\n  {r.justification}"
    for a in r.alternatives:
        text += f"\n  alternative: {a.describe()}"
    return payload, text


def cmd_embed_build(args) -> tuple:
    C = plembed.build_from_geometry(plembed.parse_geometry(_read(args.geomfile)))
    ok, witness = plembed.verify_embedding(C)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(plembed.format_geometry(C))
    except OSError as exc:
        raise _Fail(2, f"cannot write {args.out}: {exc}") from None
    payload = {"ambient": C.ambient_dim, "vertices": len(C.vertices), "simplices": len(C.simplices),
               "euler": C.euler(), "verified": ok, "witness": [list(s) for s in witness] if witness else None,
               "out": args.out}
    text = (f"wrote {args.out}: {len(C.vertices)} vertices, {len(C.simplices)} maximal simplices in "
            f"R^{C.ambient_dim}, euler characteristic {C.euler()}, embedding verified: {ok}")
    if not ok:
        raise _Fail(1, text, payload)
    return payload, text


def cmd_embed_check(args) -> tuple:
    parsed = plembed.parse_geometry(_read(args.geomfile))
    C = plembed.geometry_complex(parsed, "" if "" in parsed else next(k for k in parsed if k != "map"))
    ok, witness = plembed.verify_embedding(C)
    payload = {"embedded": ok, "witness": [list(s) for s in witness] if witness else None}
    if not ok:
        raise _Fail(1, f"not embedded: simplices {witness[0]} and {witness[1]} meet badly", payload)
    return payload, "embedded: every pair of simplices meets in a common face"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cutoff", type=int, default=None, help="cochain degree cutoff")
    p = argparse.ArgumentParser(prog="nonformal", description="Massey products, boundary bookkeeping and PL embeddings")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("betti", parents=[common], help="Betti numbers of a space")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int)
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("cup", parents=[common], help="cup product of two classes")
    s.add_argument("file")
    s.add_argument("u")
    s.add_argument("v")
    s.set_defaults(func=cmd_cup)

    s = sub.add_parser("massey", parents=[common], help="triple Massey product")
    s.add_argument("file")
    s.add_argument("u")
    s.add_argument("v")
    s.add_argument("w")
    s.add_argument("--convention", choices=CONVENTIONS, default="classical")
    s.set_defaults(func=cmd_massey)

    s = sub.add_parser("scan", parents=[common], help="search for nontrivial triple products")
    s.add_argument("file")
    s.add_argument("--max-degree", type=int)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("rank", parents=[common], help="rank of zero-indeterminacy Massey products")
    s.add_argument("file")
    s.add_argument("triples", nargs="+", metavar="u,v,w")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("boundary", parents=[common], help="Betti numbers of a neighbourhood boundary")
    s.add_argument("--betti", required=True)
    s.add_argument("--ambient", type=int, required=True)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_boundary)

    s = sub.add_parser("excluded", parents=[common], help="excluded ambient dimensions")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--mode", choices=sorted(duality.MODES), required=True)
    s.set_defaults(func=cmd_excluded)

    s = sub.add_parser("plan", parents=[common], help="construction recipe for a manifold dimension")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--dim", type=int, required=True)
    s.set_defaults(func=cmd_plan)

    s = sub.add_parser("embed-build", parents=[common], help="build and verify a double mapping cylinder or cone")
    s.add_argument("geomfile")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_embed_build)

    s = sub.add_parser("embed-check", parents=[common], help="verify that a complex is embedded")
    s.add_argument("geomfile")
    s.set_defaults(func=cmd_embed_check)
    return p


def _emit(as_json: bool, payload: dict, text: str, stream) -> None:
    if as_json:
        stream.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        stream.write(text + "\n")


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, text = args.func(args)
    except _Fail as exc:
        if exc.payload is not None:
            _emit(args.json, {"error": str(exc), **exc.payload}, str(exc), stdout if args.json else stderr)
        else:
            _emit(args.json, {"error": str(exc)}, f"error: {exc}", stdout if args.json else stderr)
        return exc.code
    except REFUSALS as exc:
        _emit(args.json, {"error": str(exc), "refusal": type(exc).__name__}, f"refused: {exc}",
              stdout if args.json else stderr)
        return 1
    except (ParseError, ContractViolation, CutoffExceeded, NonformalError) as exc:
        _emit(args.json, {"error": str(exc)}, f"error: {exc}", stdout if args.json else stderr)
        return 2
    _emit(args.json, payload, text, stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
