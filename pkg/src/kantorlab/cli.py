"""Command line front end: build artifacts, verify them, apply Weyl elements.

Artifacts are the Pair and Lie JSON documents of pairs.pair_to_json and
lie.lie_to_json with a few extra keys ("kind", "construction", ...).
Exit status: 0 all checks pass, 1 some check fails, 2 usage or IO error.
"""
import argparse
import json
import sys
import time
from fractions import Fraction

from .exact_linalg import Field
from .lie import grading_check, jacobi_check, lie_from_json, lie_to_json
from .pairs import MINUS, PLUS, check_grading, is_jordan, pair_from_json, pair_to_json

PAIR_CHECKS = ("k1k2", "jordan", "obstruction", "tight", "central-simple", "grading")
LIE_CHECKS = ("jacobi", "grading", "tight", "chevalley", "roots")
CONSTRUCTIONS = ("jordan1d", "double-alt", "fskew", "e6")


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def dumps(d):
    return json.dumps(_jsonable(d), sort_keys=True, indent=1) + "\n"


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}")


def _read(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _emit(report, human):
    for line in human:
        print(line)
    print("--- json ---")
    sys.stdout.write(dumps(report))


# build


def _construct(name, n, field, with_e, want_pair):
    from . import e6, skew
    from .pairs import jordan_1d

    if name == "jordan1d":
        p = jordan_1d(field)
        if with_e:
            p = p.with_labels({MINUS: [0], PLUS: [0]})
        return "pair", p, {}
    if name in ("double-alt", "fskew"):
        if n is None or n < 2:
            raise UsageError(f"{name} needs a size n >= 2")
        if name == "double-alt":
            return "pair", skew.alternating_matrix_pair(field, n, labelled=with_e), {}
        fs = skew.FormSpace.standard(field, n, with_e=with_e)
        return "pair", (skew.sp_fskew(fs) if with_e else skew.fskew_pair(fs)), {}
    if name == "e6":
        if want_pair:
            return "pair", e6.lambda3_pair(field, labelled=with_e), {}
        alg = e6.build_e(field)
        if with_e:
            alg = e6.bc2_on_e(alg)
        return "lie", alg, {}
    raise UsageError(f"unknown construction {name!r}; expected one of {', '.join(CONSTRUCTIONS)}")


def _pair_dims(p):
    return {"minus": p.dims[MINUS], "plus": p.dims[PLUS]}


def _lie_dims(l):
    return {"dim": l.dim, "degree_dims": {f"{d[0]},{d[1]}": c for d, c in sorted(l.degree_dims().items())}}


def _e6_reports(alg, which):
    from . import e6

    out = {}
    roots = None
    if which & {"roots", "cartan", "chevalley"}:
        roots = e6.root_decomposition(alg)
    if "dims" in which:
        out["dims"] = _lie_dims(alg.algebra)
    if "roots" in which:
        bc2 = alg.algebra.degrees if any(d[1] for d in alg.algebra.degrees) else None
        out["roots"] = [{
            "vector": r["name"],
            "base": list(r["simple"]),
            "eps": list(r["eps"]),
            "family": r["family"],
            **({"bc2_degree": list(bc2[r["index"]])} if bc2 else {}),
        } for r in roots.roots]
    if "cartan" in which:
        out["cartan"] = [list(r) for r in roots.cartan]
    if "chevalley" in which:
        out["chevalley"] = e6.chevalley_checks(alg, roots)
    return out


def _resolve_build_args(args):
    for pos, opt in (("construction", "construction_opt"), ("n", "n_opt")):
        a, b = getattr(args, pos), getattr(args, opt)
        if a is not None and b is not None and a != b:
            raise UsageError(f"conflicting values for {pos}")
        setattr(args, pos, a if a is not None else b)
    if args.construction is None:
        raise UsageError("no construction given")
    if args.gf is not None:
        args.field = f"gf:{args.gf}"


def cmd_build(args):
    _resolve_build_args(args)
    field = Field.parse(args.field)
    t0 = time.perf_counter()
    kind, obj, _ = _construct(args.construction, args.n, field, args.with_e, args.pair)
    meta = {"kind": kind, "construction": args.construction, "n": args.n, "with_e": bool(args.with_e)}
    if args.kantor:
        from .bc2 import standard_bc2_on_kantor
        from .kantor import kantor_construct

        if kind != "pair":
            raise UsageError("--kantor applies to pair constructions")
        k = standard_bc2_on_kantor(obj) if obj.sp_labels is not None else kantor_construct(obj)
        kind = meta["kind"] = "lie"
        doc = lie_to_json(k.algebra, {"embedding": {"minus": k.pair_embedding[MINUS],
                                                    "plus": k.pair_embedding[PLUS]}})
        dims = _lie_dims(k.algebra)
    elif kind == "pair":
        doc = pair_to_json(obj)
        dims = _pair_dims(obj)
    else:
        doc = lie_to_json(obj.algebra, {"names": obj.algebra.names})
        dims = _lie_dims(obj.algebra)
    doc.update(meta)
    _write(args.output, dumps(doc))
    report = {"construction": args.construction, "field": field.name, "kind": kind, "dims": dims,
              "timing": round(time.perf_counter() - t0, 3)}
    human = [f"built {args.construction} over {field.name}: {kind} {dims}"]
    if args.report:
        if args.construction != "e6" or kind != "lie":
            raise UsageError("--report applies to the e6 Lie algebra")
        extra = _e6_reports(obj, set(args.report))
        report["reports"] = extra
        if "chevalley" in extra:
            human.append(f"chevalley {extra['chevalley']}")
        if "cartan" in extra:
            human.append(f"cartan {extra['cartan']}")
        if "roots" in extra:
            human.append(f"{len(extra['roots'])} roots")
    if args.output not in (None, "-"):
        _emit(report, human)
    return 0


# verify


def _load(path):
    doc = _read(path)
    kind = doc.get("kind")
    try:
        if kind == "pair" or (kind is None and "products" in doc):
            return "pair", pair_from_json(doc), doc
        if kind == "lie" or (kind is None and "brackets" in doc):
            return "lie", lie_from_json(doc), doc
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed artifact {path}: {exc}")
    raise UsageError(f"{path} is neither a Pair nor a Lie artifact")


def _pair_check(name, p, args, ctx):
    from . import kantor

    if name == "k1k2":
        ok, wit = kantor.check_kantor(p)
        return ok, {}, wit
    if name == "jordan":
        return is_jordan(p), {}, None
    if name == "obstruction":
        j = kantor.jordan_obstruction(p, ctx.kantor(p))
        ok = is_jordan(j) and kantor.check_kantor(j)[0]
        return ok, {"obstruction_dims": [j.dims[MINUS], j.dims[PLUS]]}, None
    if name == "tight":
        k = ctx.kantor(p)
        return kantor.tight_check(k.algebra, k.pair_embedding), {}, None
    if name == "central-simple":
        if p.field.p == 0:
            verdict = kantor.central_simple_char0(p, ctx.kantor(p))
            return verdict == "central_simple", {"verdict": verdict}, None
        rep = kantor.ideal_closure(p, trials=args.trials, seed=args.seed)
        ctx.seed = args.seed
        wit = None
        if rep.verdict == "proper_ideal_found":
            wit = {"minus": rep.minus.vectors(), "plus": rep.plus.vectors()}
        return rep.verdict == "no_counterexample", {"verdict": rep.verdict, "trials": args.trials}, wit
    if name == "grading":
        if p.sp_labels is None:
            raise UsageError("the pair carries no SP labels to check")
        ok, bad = check_grading(p, p.sp_labels)
        return ok, {}, (bad[0] if bad else None)
    raise UsageError(f"check {name!r} does not apply to pairs")


def _lie_e6(l, doc, ctx):
    from . import e6

    if doc.get("construction") != "e6":
        raise UsageError("roots and chevalley need an e6 artifact")
    if ctx.e6 is None:
        alg = e6.build_e(l.field)
        if alg.algebra.brackets != l.brackets:
            ctx.e6 = False
        else:
            ctx.e6 = alg
    return ctx.e6


def _lie_check(name, l, doc, ctx):
    from . import kantor
    from .bc2 import SUPPORT

    if name == "jacobi":
        ok, wit = jacobi_check(l)
        return ok, {}, wit
    if name == "grading":
        if any(d[1] for d in l.degrees):
            ok, rep = grading_check(l, SUPPORT)
        else:
            ok, rep = grading_check(l, [(d, 0) for d in range(-2, 3)])
        return ok, {}, (rep[0] if rep else None)
    if name == "tight":
        emb = {s: [i for i, d in enumerate(l.degrees) if d[0] == s] for s in (MINUS, PLUS)}
        return kantor.tight_check(l, emb), {}, None
    if name in ("roots", "chevalley"):
        from . import e6

        alg = _lie_e6(l, doc, ctx)
        if alg is False:
            return False, {}, "structure constants differ from the E6 algebra"
        if ctx.roots is None:
            ctx.roots = e6.root_decomposition(alg)
        rd = ctx.roots
        if name == "roots":
            ok = (len(rd.roots) == 72 and all(r["space_dim"] == 1 and r["vector_matches"] for r in rd.roots)
                  and rd.cartan == e6.E6_CARTAN and rd.cartan_from_h == e6.E6_CARTAN)
            fam = {}
            for r in rd.roots:
                fam[r["family"]] = fam.get(r["family"], 0) + 1
            return ok, {"roots": len(rd.roots), "families": fam}, None
        rep = e6.chevalley_checks(alg, rd)
        return all(rep.values()), rep, None
    raise UsageError(f"check {name!r} does not apply to Lie algebras")


class _Ctx:
    def __init__(self):
        self._k = None
        self.e6 = None
        self.roots = None
        self.seed = None

    def kantor(self, p):
        from .kantor import kantor_construct

        if self._k is None:
            self._k = kantor_construct(p)
        return self._k


def _parse_expect(items):
    neg = set()
    for it in items or []:
        for x in it.split(","):
            x = x.strip()
            if not x:
                continue
            if not x.startswith("not-"):
                raise UsageError(f"--expect takes not-<check>, got {x!r}")
            neg.add(x[4:])
    return neg


def cmd_verify(args):
    kind, obj, doc = _load(args.input)
    allowed = PAIR_CHECKS if kind == "pair" else LIE_CHECKS
    if args.checks:
        checks = [c.strip() for c in ",".join(args.checks).split(",") if c.strip()]
    elif kind == "pair":
        checks = ["k1k2"] + (["grading"] if obj.sp_labels is not None else [])
    else:
        checks = ["jacobi", "grading"]
    for c in checks:
        if c not in allowed:
            raise UsageError(f"check {c!r} does not apply to a {kind} artifact")
    negated = _parse_expect(args.expect)
    for c in negated:
        if c not in checks:
            raise UsageError(f"--expect not-{c} names a check that is not run")
    ctx = _Ctx()
    results, human = [], []
    t0 = time.perf_counter()
    for c in checks:
        t = time.perf_counter()
        if kind == "pair":
            raw, detail, wit = _pair_check(c, obj, args, ctx)
        else:
            raw, detail, wit = _lie_check(c, obj, doc, ctx)
        expected = c not in negated
        ok = raw == expected
        entry = {"check": c, "result": raw, "expected": expected, "pass": ok, "detail": detail,
                 "seconds": round(time.perf_counter() - t, 3)}
        if not ok:
            entry["witness"] = wit if wit is not None else detail
        results.append(entry)
        note = ""
        if not expected and not raw:
            note = f" (expected finding: not {c})"
        human.append(f"{c}: {'PASS' if ok else 'FAIL'}{note}" + (f" {detail}" if detail else "")
                     + ("" if ok else f" witness={_jsonable(entry['witness'])}"))
    dims = _pair_dims(obj) if kind == "pair" else _lie_dims(obj)
    report = {"construction": doc.get("construction"), "field": obj.field.name, "kind": kind,
              "checks": results, "all_pass": all(r["pass"] for r in results), "dims": dims,
              "timing": round(time.perf_counter() - t0, 3)}
    if ctx.seed is not None:
        report["seed"] = ctx.seed
    _emit(report, human)
    return 0 if report["all_pass"] else 1


# weyl


def cmd_weyl(args):
    from . import bc2
    from .kantor import check_kantor

    kind, p, doc = _load(args.input)
    if kind != "pair":
        raise UsageError("weyl needs a pair artifact")
    if p.sp_labels is None:
        raise UsageError("weyl needs an SP-graded pair (build with --with-e)")
    try:
        u = bc2.element(args.element)
    except ValueError as exc:
        raise UsageError(str(exc))
    if not args.skip_kantor_check:
        ok, wit = check_kantor(p)
        if not ok:
            raise UsageError(f"input is not a Kantor pair: {wit}")
    if args.via in ("direct", "both") and u.name != "s1":
        raise UsageError("the direct formula exists for s1 only")
    t0 = time.perf_counter()
    results = {}
    if args.via in ("envelope", "both"):
        results["envelope"] = bc2.weyl_image(p, u)
    if args.via in ("direct", "both"):
        results["direct"] = bc2.reflection_direct(p)
    q = results.get("envelope", results.get("direct"))
    report = {"element": u.name, "via": args.via, "field": p.field.name, "dims": _pair_dims(q)}
    human = [f"{u.name} image via {args.via}: dims {_pair_dims(q)}"]
    status = 0
    if args.via == "both":
        agree = results["envelope"] == results["direct"]
        report["paths_agree"] = agree
        human.append("paths agree" if agree else "paths differ")
        status = 0 if agree else 1
    out = pair_to_json(q)
    out.update({"kind": "pair", "construction": f"weyl:{u.name}:{doc.get('construction')}",
                "n": doc.get("n"), "with_e": True})
    _write(args.output, dumps(out))
    report["timing"] = round(time.perf_counter() - t0, 3)
    _emit(report, human)
    return status


def build_parser():
    ap = argparse.ArgumentParser(prog="kantorlab", description="Kantor pairs and graded Lie algebras, exactly.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a pair or Lie algebra and write it as JSON")
    b.add_argument("construction", nargs="?", choices=CONSTRUCTIONS)
    b.add_argument("n", nargs="?", type=int)
    b.add_argument("--construction", dest="construction_opt", choices=CONSTRUCTIONS)
    b.add_argument("--n", dest="n_opt", type=int)
    b.add_argument("--field", default="q", help="q or gf:<p> with p >= 5 prime")
    b.add_argument("--gf", type=int, help="shorthand for --field gf:<p>")
    b.add_argument("--kantor", action="store_true", help="pairs: write K(P) as a Lie file with its embedding")
    b.add_argument("--with-e", action="store_true", help="SP labels / BC2 degrees from e = (v1-, v1+)")
    b.add_argument("--pair", action="store_true", help="e6: write the degree-3 pair instead of the algebra")
    b.add_argument("--report", action="append", choices=("roots", "cartan", "chevalley", "dims"))
    b.add_argument("-o", "--output", default="-")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="run verification suites on an artifact")
    v.add_argument("input")
    v.add_argument("--checks", action="append", help="comma list from: " + ", ".join(PAIR_CHECKS + LIE_CHECKS[2:]))
    v.add_argument("--expect", action="append", help="not-<check>: the check is expected to fail")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=10)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("weyl", help="apply a BC2 Weyl group element to an SP-graded pair")
    w.add_argument("input")
    w.add_argument("--element", required=True)
    w.add_argument("--via", choices=("direct", "envelope", "both"), default="envelope")
    w.add_argument("--skip-kantor-check", action="store_true")
    w.add_argument("-o", "--output", default="-")
    w.set_defaults(func=cmd_weyl)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
