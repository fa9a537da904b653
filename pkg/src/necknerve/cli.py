"""Command line entry point.

Every verb prints one JSON document, compact by default and indented with
--json, carrying the package version and a digest of the command and input.
Exit status: 0 on success, 1 when a check fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from pathlib import Path

from . import __version__
from . import chainalg as ca
from .chainalg import ChainError, Field
from .diagrams import (
    dg_complex, dg_functoriality_check, dg_monoidality_check, poset_nerve,
    solve_comparison_coefficients, z_monoidality_check, z_naturality_check,
)
from .enrichedcats import (
    DgCategory, FinCategory, discrete_cubical, dg_corpus, functor_set,
    idempotent_two_category, locally_discrete, ordinal, phi, phi_structure_check, two_group_z2,
)
from .ladjoint import (
    closed_form_cubical, closed_form_dg, closed_form_duskin_objects,
    closed_form_hc, free_frobenius, oracle_dg,
)
from .neckcomb import (
    Necklace, NecklaceError, all_necklaces, classify_map, compose, dim_on_map, ext_maps,
    necklace_maps, verify_dim, verify_factorizations,
)
from .nerves import (
    appendix_bijection_check, comparison_splitting_check, dg_horn_lift_check,
    dg_retraction_probe, nerve_sset, nerve_simplices, quasicat_check, std_poset_frobenius,
)
from .simpset import BipointedSSet, boundary, circle, horn, std_simplex

SCHEMA = 1
# every package error subclasses ValueError
MALFORMED = (ValueError, KeyError, TypeError, OSError)


class Malformed(Exception):
    pass


# ---------------------------------------------------------------- parsing helpers


def parse_field(s: str) -> Field:
    """'Q', 'F2', 'F5', or a bare prime."""
    t = s.strip()
    if t.upper() in ("Q", "QQ"):
        return Field("Q")
    if t[:1] in "Ff":
        t = t[1:].lstrip("_")
    try:
        return Field(int(t))
    except (ValueError, ChainError):
        raise argparse.ArgumentTypeError(f"unknown field {s!r}")


def parse_beads(s: str) -> Necklace:
    """'2,1' is D2 v D1; '0' or '' is the point."""
    s = s.strip()
    if s in ("", "0"):
        return Necklace.simplex(0)
    try:
        return Necklace.from_beads(int(x) for x in s.split(","))
    except (ValueError, NecklaceError) as e:
        raise argparse.ArgumentTypeError(f"bad necklace {s!r}: {e}")


def builtin_sset(name: str) -> BipointedSSet:
    """simplex:N, boundary:N, horn:N,J or circle."""
    kind, _, arg = name.partition(":")
    nums = [int(x) for x in arg.split(",")] if arg else []
    if kind == "circle" and not nums:
        return circle()
    if kind == "simplex" and len(nums) == 1:
        return std_simplex(nums[0])
    if kind == "boundary" and len(nums) == 1:
        return boundary(nums[0])
    if kind == "horn" and len(nums) == 2:
        return horn(*nums)
    raise Malformed(f"unknown simplicial set {name!r}")


def builtin_category(tag: str, name: str, field: Field):
    kind, _, arg = name.partition(":")
    if kind == "phi":
        return phi(tag, int(arg), field)
    if kind == "ordinal":
        q = ordinal(int(arg))
        return {"const": q, "Dusk": locally_discrete(q), "cub": discrete_cubical(q)}.get(tag) \
            or _bad(f"ordinal categories have no {tag} form here")
    if tag == "Dusk" and name in ("z2", "idem"):
        return two_group_z2() if name == "z2" else idempotent_two_category()
    if tag == "dg":
        corpus = dg_corpus(field)
        if name in corpus:
            return corpus[name]
    raise Malformed(f"unknown {tag} category {name!r}")


def _bad(msg):
    raise Malformed(msg)


def load_json(path: str) -> tuple[dict, bytes]:
    raw = Path(path).read_bytes()
    return json.loads(raw), raw


def category_from_json(tag: str, d: dict):
    if d.get("kind") == "dg":
        if tag != "dg":
            raise Malformed("a dg-category only has a dg-nerve")
        return DgCategory.from_json(d)
    q = FinCategory.from_json(d)
    if tag == "const":
        return q
    if tag == "Dusk":
        return locally_discrete(q)
    if tag == "cub":
        return discrete_cubical(q)
    raise Malformed(f"an ordinary category has no {tag} form here")


def canon(x):
    """JSON-safe, order-stable rendering: string keys, lists for tuples and sets."""
    if isinstance(x, dict):
        return {str(k): canon(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [canon(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((canon(v) for v in x), key=repr)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if hasattr(x, "to_json"):
        return canon(x.to_json())
    return repr(x)


def digest(args: argparse.Namespace, raw: bytes | None) -> str:
    opts = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "json", "target")}
    h = hashlib.sha256(json.dumps(canon(opts), sort_keys=True).encode())
    if raw is not None:
        h.update(raw)
    return h.hexdigest()[:16]


# ---------------------------------------------------------------- verbs


def cmd_necklaces(args):
    ps = range((3 if args.pmax is None else args.pmax) + 1) if args.p is None else [args.p]
    out = [t for t in all_necklaces(max(ps)) if t.p in ps]
    return {"necklaces": [dict(t.to_json(), name=t.name(), dim=t.dim) for t in out],
            "count": len(out)}, True


def cmd_maps(args):
    t, u = args.src, args.dst
    if args.ext:
        ms = ext_maps(t, u)
        rows = [dict(m.to_json(), minus=m.in_minus) for m in ms]
    else:
        ms = necklace_maps(t, u)
        rows = [dict(m.to_json(), **classify_map(m)) for m in ms]
    return {"src": t.name(), "dst": u.name(), "maps": rows, "count": len(rows)}, True


def cmd_dim(args):
    t = args.necklace
    images = [{"map": m.to_json(), "cube": dim_on_map(m).to_json()}
              for m in necklace_maps(t, t)] if args.maps else []
    return {"necklace": t.name(), "dim": t.dim, "cube_rank": t.dim,
            "joint_refinements": 2 ** t.dim, "endomaps": images}, True


def cmd_dg(args):
    obj = dg_complex(args.necklace, args.field)
    cx = obj.complex
    return {"necklace": args.necklace.name(), "field": repr(args.field),
            "dims": cx.dims(), "euler": cx.euler(),
            "complex": cx.to_json(label=lambda g: repr(g))}, True


def cmd_hc(args):
    pn = poset_nerve(args.necklace, args.field)
    return {"necklace": args.necklace.name(), "poset_size": len(pn.elements),
            "dims": pn.complex.dims(), "euler": pn.complex.euler()}, True


def _nerve_target(args):
    if (args.input is None) == (args.example is None):
        raise Malformed("give exactly one of --input or --example")
    if args.input:
        d, raw = load_json(args.input)
        return category_from_json(args.tag, d), raw
    return builtin_category(args.tag, args.example, args.field), None


def cmd_nerve(args):
    c, _raw = args.target
    k = nerve_sset(args.tag, c, args.nmax)
    report = {"tag": args.tag, "truncation": args.nmax, "counts": k.counts()}
    ok = True
    if args.validate:
        v = k.validate()
        report["simplicial_identities"] = v
        ok = v["valid"]
    if args.horns:
        if args.tag == "dg":
            rows = [{"n": n, "j": j, "ok": dg_horn_lift_check(c, n, j)["ok"]}
                    for n in range(2, min(args.nmax, 4) + 1) for j in range(1, n)]
            report["horns"] = rows
            ok = ok and all(r["ok"] for r in rows)
        else:
            q = quasicat_check(k, args.nmax)
            report["horns"] = q
            ok = ok and q["ok"]
    if args.functors and args.tag == "hc":
        report["functor_comparison"] = "not available for simplicial categories"
    elif args.functors:
        rows = {}
        for n in range(min(args.nmax, 3) + 1):
            a = len(nerve_simplices(args.tag, c, n))
            b = len(functor_set(phi(args.tag, n, getattr(c, "field", args.field)), c))
            rows[n] = {"nerve": a, "functors": b}
            ok = ok and a == b
        report["functor_comparison"] = rows
    return report, ok


def cmd_ladjoint(args):
    if (args.input is None) == (args.builtin is None):
        raise Malformed("give exactly one of --input or --builtin")
    if args.input:
        d, _ = load_json(args.input)
        k = BipointedSSet.from_json(d)
    else:
        k = builtin_sset(args.builtin)
    if args.src is not None or args.dst is not None:
        k = k.at(args.src if args.src is not None else k.a, args.dst if args.dst is not None else k.b)
    tag = args.nerve
    out: dict = {"nerve": tag, "from": k.a, "to": k.b, "pmax": args.pmax}
    ok = True
    if tag == "dg":
        gd = closed_form_dg(k, pmax=args.pmax)
        out.update({str(n): v for n, v in sorted(gd.dims.items())})
        out["basis"] = gd.to_json()["basis"]
        if args.oracle is not None:
            orc = oracle_dg(k, args.oracle, args.field)
            at_cap = closed_form_dg(k, pmax=args.oracle)
            agrees = orc.dims == at_cap.dims
            out["oracle"] = orc.to_json()
            out["oracle_agrees"] = agrees
            # disagreement before stabilization is inconclusive, not a refutation
            ok = agrees or not orc.stabilized
    elif tag == "cub":
        out.update({str(m): closed_form_cubical(k, m, pmax=args.pmax) for m in range(args.nmax + 1)})
    elif tag == "dusk":
        out["objects"] = closed_form_duskin_objects(k, pmax=args.pmax)
    elif tag == "hc":
        out.update({str(m): closed_form_hc(k, m, pmax=args.pmax) for m in range(args.nmax + 1)})
    else:
        out.update({str(n): free_frobenius(k, n, pmax=args.pmax) for n in range(args.nmax + 1)})
    return out, ok


def _pair(res) -> dict:
    ok, wit = res
    return {"ok": bool(ok), "witness": None if ok else repr(wit)}


def cmd_check(args):
    k, nm = args.field, args.nmax
    pm = 4 if args.pmax is None else args.pmax
    rng = random.Random(args.seed)
    suite = args.suite
    rep: dict = {"suite": suite, "seed": args.seed}
    if suite == "necklaces":
        rep.update({name: _pair(r) for name, r in verify_factorizations(pm).items()})
        rep["associativity_sample"] = _assoc_sample(pm, rng)
    elif suite == "dim":
        rep.update({name: _pair(r) for name, r in verify_dim(min(pm, 4), min(pm, 4)).items()})
    elif suite == "dg":
        bad = next((t for t in all_necklaces(pm) if not _squares_to_zero(dg_complex(t, k).complex)),
                   None)
        rep["d_squared_zero"] = {"ok": bad is None, "witness": repr(bad) if bad else None}
        mono = [dg_monoidality_check(t, u, k) for t in all_necklaces(pm) for u in all_necklaces(pm)
                if t.p + u.p <= pm]
        bad = next((w for o, w in mono if not o), None)
        rep["monoidality"] = {"ok": bad is None, "witness": repr(bad) if bad else None}
        rep["functoriality"] = _pair(dg_functoriality_check(min(pm, 3), True, k))
    elif suite == "comparison":
        rep["naturality"] = _pair(z_naturality_check(min(pm, 4), k))
        mono = [z_monoidality_check(t, u, k) for t in all_necklaces(pm) for u in all_necklaces(pm)
                if 0 < t.p and 0 < u.p and t.p + u.p <= min(pm, 5)]
        bad = next((w for o, w in mono if not o), None)
        rep["monoidality"] = {"ok": bad is None, "witness": repr(bad) if bad else None}
        sol = solve_comparison_coefficients(min(pm, 3))["report"]
        rep["coefficients"] = {"ok": bool(sol.get("unique") and sol.get("matches_formula")
                                          and sol.get("consistent")), "report": sol}
        rows = [comparison_splitting_check(n, k) for n in range(1, min(nm, 4) + 1)]
        rep["splitting"] = {"ok": all(r["ok"] for r in rows)}
    elif suite == "retraction":
        rows = []
        for n in range(2, min(nm, 5) + 1):
            for j in range(1, n):
                r = dg_retraction_probe(n, j, k)
                rows.append({"n": n, "j": j, "found": r["solver_is_retraction"],
                             "printed_formula": r["variants"]["printed"]})
        rep["retraction"] = {"ok": all(r["found"] for r in rows), "rows": rows}
    elif suite == "appendix":
        from .chainalg import F2
        from .enrichedcats import unit_algebra, dual_numbers
        rows = []
        for n, c in ((1, unit_algebra(F2)), (1, dual_numbers(F2)), (2, unit_algebra(F2))):
            om = {i: c.objects[0] for i in range(n + 1)}
            r = appendix_bijection_check(std_poset_frobenius(n), c, om, min(nm, 3))
            rows.append({kk: v for kk, v in r.items() if kk != "witnesses"})
        rep["appendix"] = {"ok": all(r["ok"] for r in rows), "rows": rows}
    elif suite == "phi":
        # rank 3 is the largest that stays interactive
        for tag in ("dg", "Dusk", "hc", "cub"):
            r = phi_structure_check(tag, min(nm, 3))
            rep[tag] = {"ok": r["valid"], "checked": r["checked"], "failures": r["failures"][:3]}
    oks = [v["ok"] for v in rep.values() if isinstance(v, dict) and "ok" in v]
    return rep, all(oks)


def _squares_to_zero(cx) -> bool:
    return all(ca.is_zero(ca.mul(cx.diff(n - 1), cx.diff(n))) for n in cx.degrees)


def _assoc_sample(pmax: int, rng: random.Random, trials: int = 200) -> dict:
    necks = all_necklaces(pmax)
    for _ in range(trials):
        t, u, v, w = (rng.choice(necks) for _ in range(4))
        ab, bc, cd = necklace_maps(t, u), necklace_maps(u, v), necklace_maps(v, w)
        if not (ab and bc and cd):
            continue
        a, b, c = rng.choice(ab), rng.choice(bc), rng.choice(cd)
        if compose(compose(a, b), c) != compose(a, compose(b, c)):
            return {"ok": False, "witness": repr((a, b, c))}
    return {"ok": True, "witness": None}


# ---------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=parse_field, default=Field("Q"), help="Q or Fp, e.g. F2")
    common.add_argument("--pmax", type=int, help="necklace rank cap (verb-specific default)")
    common.add_argument("--nmax", type=int, default=3, help="simplicial truncation")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="emit indented JSON")

    ap = argparse.ArgumentParser(prog="necknerve",
                                 description="Necklace diagrams, nerves and their left adjoints.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("necklaces", parents=[common], help="enumerate necklaces")
    p.add_argument("action", choices=["enum"])
    p.add_argument("--p", type=int)
    p.set_defaults(func=cmd_necklaces)

    p = sub.add_parser("maps", parents=[common], help="maps between two necklaces")
    p.add_argument("src", type=parse_beads)
    p.add_argument("dst", type=parse_beads)
    p.add_argument("--ext", action="store_true", help="extended maps")
    p.set_defaults(func=cmd_maps)

    for name, fn, helptext in (("dim", cmd_dim, "cube attached to a necklace"),
                               ("dg", cmd_dg, "the chain complex dg(T)"),
                               ("hc", cmd_hc, "chains on the poset nerve of T")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("necklace", type=parse_beads, help="bead lengths, e.g. 2,1")
        if name == "dim":
            p.add_argument("--maps", action="store_true", help="also list dim on endomaps")
        p.set_defaults(func=fn)

    p = sub.add_parser("nerve", parents=[common], help="truncated nerve of a category")
    p.add_argument("--tag", choices=["const", "Dusk", "hc", "dg", "cub"], required=True)
    p.add_argument("--input", help="category JSON")
    p.add_argument("--example", help="builtin: phi:N, ordinal:N, z2, idem, or a dg corpus name")
    p.add_argument("--validate", action="store_true", help="check simplicial identities")
    p.add_argument("--horns", action="store_true", help="inner horn filling report")
    p.add_argument("--functors", action="store_true", help="compare with functor enumeration")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("ladjoint", parents=[common], help="left adjoints on a bipointed simplicial set")
    p.add_argument("--nerve", choices=["dg", "cub", "dusk", "hc", "frob"], required=True)
    p.add_argument("--input", help="bipointed simplicial set JSON")
    p.add_argument("--builtin", help="simplex:N, boundary:N, horn:N,J or circle")
    p.add_argument("--from", dest="src")
    p.add_argument("--to", dest="dst")
    p.add_argument("--oracle", type=int, metavar="P", help="also run the coequalizer oracle at P")
    p.set_defaults(func=cmd_ladjoint)

    p = sub.add_parser("check", parents=[common], help="run an invariant suite")
    p.add_argument("suite", choices=["necklaces", "dim", "dg", "comparison", "retraction",
                                     "appendix", "phi"])
    p.set_defaults(func=cmd_check)
    return ap


def render(doc: dict, pretty: bool) -> str:
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=True)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    raw = None
    try:
        if args.verb == "nerve":
            args.target = _nerve_target(args)
            raw = args.target[1]
        elif args.verb == "ladjoint" and args.input:
            raw = Path(args.input).read_bytes()
        if (args.pmax or 0) < 0 or args.nmax < 0:
            raise Malformed("caps must be non-negative")
        body, ok = args.func(args)
    except (Malformed, *MALFORMED) as e:
        print(render({"error": f"{type(e).__name__}: {e}", "version": __version__}, args.json),
              file=sys.stderr)
        return 2
    doc = {"version": __version__, "schema": SCHEMA, "input_digest": digest(args, raw),
           "ok": ok, **canon(body)}
    print(render(doc, args.json))
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
