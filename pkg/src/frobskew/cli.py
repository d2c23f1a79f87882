"""Command-line front end.

Every command prints one JSON object with sorted keys: the payload at top
level plus ``command``, ``inputHash`` and a ``checks`` list.  Exit codes: 0 on
success, 1 on a domain error (``{"error": code, "detail": ...}``), 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys

from . import cartier as ct
from . import fmodules as fm
from . import kgroups as kg
from . import ore
from . import skew as sk
from .errors import DivisionByZero, FrobSkewError, InvalidParams
from .fields import FieldSpec, PolyRing
from .parser import parse_ring_element, parse_skew_expr, ring_from_spec


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _s(x) -> str:
    return str(x)


def _check(name: str, ok) -> dict:
    return {"name": name, "pass": bool(ok)}


def _load_json(text: str):
    """Inline JSON or a path to a UTF-8 JSON file."""
    src = text
    if not text.lstrip().startswith(("{", "[")):
        if not os.path.exists(text):
            raise UsageError(f"no such file: {text}")
        with open(text, encoding="utf-8") as fh:
            src = fh.read()
    try:
        return json.loads(src), src
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


def _ring(args, default=None):
    if args.ring is None:
        if default is None:
            raise UsageError("--ring is required")
        return ring_from_spec(default)
    spec, _ = _load_json(args.ring)
    if not isinstance(spec, dict):
        raise UsageError("--ring must be a JSON object")
    return ring_from_spec(spec)


def _points(args) -> ct.PointSet:
    if args.ring is None:
        raise UsageError("--ring with a Points header is required")
    spec, _ = _load_json(args.ring)
    if spec.get("ring") != "Points":
        raise InvalidParams("expected a Points ring header")
    p = int(spec["p"])
    e = int(spec.get("baseExp", 1))
    if "degrees" in spec:
        return ct.PointSet(p, e, tuple(int(s) for s in spec["degrees"]))
    return ct.PointSet.rational(p, int(spec.get("count", 1)), e)


def _field(args) -> FieldSpec:
    R = _ring(args, {"ring": "GF", "p": 2})
    if not isinstance(R, FieldSpec):
        raise InvalidParams(f"{R} is not a finite field")
    return R


# ---------------------------------------------------------------------------
# skew


def cmd_skew(args):
    R = _ring(args)
    A = parse_skew_expr(args.a, R)
    B = parse_skew_expr(args.b, R)
    if args.action == "mul":
        return {"result": _s(A * B)}, []
    if args.action == "divr":
        Q, Rm = sk.div_right(A, B)
        return {"quotient": _s(Q), "remainder": _s(Rm)}, [
            _check("A == Q*B + R", Q * B + Rm == A),
            _check("deg R < deg B", Rm.degree < B.degree),
        ]
    if args.action == "divl":
        Q, Rm = sk.div_left(A, B)
        return {"quotient": _s(Q), "remainder": _s(Rm)}, [
            _check("A == B*Q + R", B * Q + Rm == A),
            _check("deg R < deg B", Rm.degree < B.degree),
        ]
    g = sk.gcrd_lclm(A, B)
    return {
        "gcrd": _s(g.gcrd),
        "lclm": _s(g.lclm),
        "bezout": {"u": _s(g.u), "v": _s(g.v)},
        "lclmCofactors": {"u": _s(g.lu), "v": _s(g.lv)},
    }, [
        _check("gcrd == u*A + v*B", g.u * A + g.v * B == g.gcrd),
        _check("lclm == lu*A == lv*B", g.lu * A == g.lclm == g.lv * B),
        _check("deg lclm == deg A + deg B - deg gcrd", g.lclm.degree == A.degree + B.degree - g.gcrd.degree),
    ]


# ---------------------------------------------------------------------------
# ore


def cmd_ore(args):
    R = _ring(args)
    if args.action == "witness":
        s = parse_ring_element(args.exprs[0], R)
        r = parse_skew_expr(args.exprs[1], R)
        fn = ore.left_ore_witness if args.side == "left" else ore.right_ore_witness
        w = fn(s, r)
        name = "r~*s == s~*r" if args.side == "left" else "s*r~ == r*s~"
        return {"side": args.side, "rTilde": _s(w.r_tilde), "sTilde": _s(w.s_tilde)}, [_check(name, w.verify())]
    if args.action == "search":
        a = parse_skew_expr(args.exprs[0], R)
        b = parse_skew_expr(args.exprs[1], R)
        res = ore.common_right_multiple_search(a, b, args.maxdeg)
        payload = {
            "found": res.found,
            "maxdeg": res.maxdeg,
            "u": _s(res.u) if res.found else None,
            "v": _s(res.v) if res.found else None,
            "unknowns": res.unknowns,
        }
        return payload, [_check(k, v) for k, v in sorted(res.checks.items())]
    if args.action == "localize":
        if not isinstance(R, PolyRing):
            raise InvalidParams("localize needs a PolyRing header")
        num = parse_skew_expr(args.exprs[0], R)
        den = parse_ring_element(args.exprs[1], R)
        f = parse_ring_element(args.f, R) if args.f else None
        nf = ore.localization_normal_form(num, den, f)
        return {"result": _s(nf)}, []
    # dfrac
    ex = args.exprs
    if len(ex) % 2:
        raise UsageError("fractions are given as NUM DEN pairs")
    fr = [ore.SkewFraction(parse_skew_expr(ex[i], R), parse_skew_expr(ex[i + 1], R)) for i in range(0, len(ex), 2)]
    need = 1 if args.op == "inv" else 2
    if len(fr) != need:
        raise UsageError(f"--op {args.op} takes {need} fraction(s)")
    a = fr[0]
    if args.op == "inv":
        out = a.inverse()
        checks = [_check("x * x^-1 == 1", a * out == ore.SkewFraction.one(R))]
    else:
        b = fr[1]
        out = {"add": a + b, "sub": a - b, "mul": a * b, "div": a / b if b else None}[args.op]
        if out is None:
            raise DivisionByZero("division by zero in D")
        checks = []
        if args.op == "mul":
            checks.append(_check("(a*b)*b^-1 == a", not b or out * b.inverse() == a))
        if args.op == "add":
            checks.append(_check("(a+b)-b == a", out - b == a))
    return {"num": _s(out.num), "den": _s(out.den), "result": _s(out)}, checks


# ---------------------------------------------------------------------------
# koszul and ideals


def _fmodule(text: str) -> fm.FModule:
    d, _ = _load_json(text)
    if "B" in d:
        K = ring_from_spec(d.get("field", {"ring": "GF", "p": d.get("p", 2), "r": d.get("r", 1)}))
        B = [[parse_ring_element(str(x), K) for x in row] for row in d["B"]]
        return fm.FModule.from_k_matrix(K, B)
    M = ct.CartierModule.from_json(d)
    if len(M.blocks) != 1:
        raise InvalidParams("Koszul presentation needs a module over a single field")
    b = M.blocks[0]
    N = fm.FModule(b.field, b.dim, b.actions, b.C)
    if not N.is_valid():
        raise InvalidParams("C is not semilinear for the scalar action")
    return N


def cmd_koszul(args):
    N = _fmodule(args.module)
    pres = fm.koszul_presentation(N)
    if args.action == "present":
        return {
            "n": pres.n,
            "psi": [[_s(h) for h in row] for row in pres.psi],
            "B": [[_s(x) for x in row] for row in pres.B],
        }, [_check(k, v) for k, v in sorted(pres.checks.items())]
    bound = args.bound if args.bound is not None else 2 * pres.n + 4
    rep = fm.check_exactness(pres, bound)
    return {"exact": rep["exact"], "firstFailure": rep["firstFailure"], "degrees": rep["degrees"], "bound": bound}, [
        _check("exact up to bound", rep["exact"])
    ]


def cmd_ideal(args):
    K = _field(args)
    gens = [parse_skew_expr(g, K) for g in args.gens]
    if args.action == "reduce":
        res = fm.emerton_reduce(gens)
        c = res.certificate
        chains = [
            {"generator": _s(ch["generator"]), "gammas": [_s(g) for g in ch["gammas"]], "verified": ch["verified"]}
            for ch in c["chains"]
        ]
        return {
            "d0": res.d0,
            "generator": _s(c["generator"]),
            "reducedGens": [_s(g) for g in res.reduced_gens],
            "imageDims": c["imageDims"],
            "chains": chains,
        }, [
            _check("all generators reduce into degree <= d0", c["allGeneratorsReduced"]),
            _check("d0 == deg of ideal generator", c["matchesGenerator"]),
        ]
    if args.action == "filtration":
        d = args.dbound if args.dbound is not None else 4
        I = fm.FilteredIdeal(gens)
        return {"degree": d, "dim": I.dim(d), "basis": [_s(h) for h in I.basis_elements(d)]}, [
            _check("IF meets I<=d in (I<=d-1)F", fm.reduction_identity_holds(I, d))
        ]
    d = args.dbound if args.dbound is not None else 8
    rep = fm.cokernel_F_dim(gens, d)
    return rep, []


# ---------------------------------------------------------------------------
# cartier


def cmd_cartier(args):
    if args.action == "delta":
        X = _points(args)
        K = ct.coefficient_field(X.p, X.base_exp)
        c = parse_ring_element(args.c, K) if args.c else None
        M = ct.delta_crystal(X, args.point, c)
        tr = kg.taelman_trace(M)
        return {"module": M.to_json(), "trace": [None if v is None else _s(v) for v in tr.values]}, [
            _check("valid", ct.validate_cartier(M)["ok"])
        ]
    d, _ = _load_json(args.module)
    M = ct.CartierModule.from_json(d)
    val = ct.validate_cartier(M)
    if not val["ok"]:
        raise InvalidParams("C is not semilinear", **val["violation"])
    nil = ct.is_nilpotent(M)
    Mmin = ct.minimal_cartier_submodule(M)
    reduced = all(b.reduced for b in M.blocks)
    simples = [f.to_json() for f in ct.simple_factors(M)] if reduced else None
    return {
        "nilpotent": nil.nilpotent,
        "v": nil.v,
        "imageChain": nil.chain,
        "minimalDim": Mmin.dim,
        "minimal": Mmin.to_json(),
        "simples": simples,
    }, [
        _check("image chain agrees with C^dim == 0", nil.nilpotent == ct.brute_force_nilpotent(M)),
        _check("C bijective on minimal submodule", ct.is_bijective(Mmin)),
    ]


# ---------------------------------------------------------------------------
# k0


def _parse_rows(text, K):
    rows, _ = _load_json(text)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise UsageError("relations must be a JSON list of lists")
    return [[parse_skew_expr(str(x), K) for x in r] for r in rows]


def cmd_k0(args):
    rng = random.Random(args.seed)
    if args.action == "chow":
        res = kg.chow_frobenius_demo(args.n, args.q)
        diag = [_s(res.matrix[i][i]) for i in range(len(res.matrix))]
        return {"ker": res.kernel_dim, "coker": res.cokernel_dim, "diagonal": diag}, [
            _check("entries equal 1 - q^i", all(res.matrix[i][i] == 1 - args.q**i for i in range(len(diag))))
        ]
    if args.action == "ses":
        X = _points(args)
        rep = kg.verify_taelman_ses(X, samples=args.samples, seed=args.seed)
        return rep, [
            _check("trace surjective", rep["surjective"]),
            _check("trace of delta is indicator", rep["deltaIsIndicator"]),
            _check("relations map to 0", rep["relationsZero"] == rep["samples"]),
            _check("p-multiples map to 0", rep["pMultiplesZero"] == rep["samples"]),
        ]
    if args.action == "qdrank":
        K = _field(args)
        if args.relations is None:
            if args.n is None:
                raise UsageError("qdrank needs --n or --relations")
            P = kg.DPresentation(K, args.n, [])
        else:
            rows = _parse_rows(args.relations, K)
            n = args.n if args.n is not None else (len(rows[0]) if rows else 0)
            P = kg.DPresentation(K, n, rows)
        rank = kg.qd_rank(P)
        ranks = [kg.qd_rank(kg.scramble(P, rng)) for _ in range(args.scrambles)]
        return {"rank": rank, "scrambledRanks": ranks}, [
            _check("rank invariant under scrambles", all(r == rank for r in ranks))
        ]
    d, _ = _load_json(args.module)
    M = ct.CartierModule.from_json(d)
    if args.action == "class":
        c = kg.k0_class(M)
        return {"class": c.to_json()}, []
    tr = kg.taelman_trace(M)
    X = ct.PointSet(M.p, M.base_exp, tuple(b.scalar_degree for b in M.blocks))
    via = kg.trace_of_class(kg.k0_class(M), X)
    return {"trace": [None if v is None else _s(v) for v in tr.values]}, [
        _check("trace == trace of K0 class", tr.values == via.values)
    ]


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ring", help="ring header as inline JSON or a file path")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the JSON report here instead of stdout")

    top = _Parser(prog="frobskew", description="Frobenius skew-polynomial computations")
    groups = top.add_subparsers(dest="group", required=True)

    g = groups.add_parser("skew").add_subparsers(dest="action", required=True)
    for name in ("mul", "divr", "divl", "gcrd"):
        sp = g.add_parser(name, parents=[common])
        sp.add_argument("a")
        sp.add_argument("b")

    g = groups.add_parser("ore").add_subparsers(dest="action", required=True)
    sp = g.add_parser("witness", parents=[common])
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp.add_argument("exprs", nargs=2, metavar="S_AND_R")
    sp = g.add_parser("search", parents=[common])
    sp.add_argument("--maxdeg", type=int, default=4)
    sp.add_argument("exprs", nargs=2, metavar="A_AND_B")
    sp = g.add_parser("localize", parents=[common])
    sp.add_argument("--f", help="generator of the multiplicative set (default: all nonzero)")
    sp.add_argument("exprs", nargs=2, metavar="NUM_AND_DEN")
    sp = g.add_parser("dfrac", parents=[common])
    sp.add_argument("--op", choices=("add", "sub", "mul", "div", "inv"), default="mul")
    sp.add_argument("exprs", nargs="+", metavar="NUM_DEN")

    g = groups.add_parser("koszul").add_subparsers(dest="action", required=True)
    for name in ("present", "check"):
        sp = g.add_parser(name, parents=[common])
        sp.add_argument("module")
        sp.add_argument("--bound", type=int)

    g = groups.add_parser("ideal").add_subparsers(dest="action", required=True)
    for name in ("reduce", "filtration", "coker"):
        sp = g.add_parser(name, parents=[common])
        sp.add_argument("gens", nargs="+")
        sp.add_argument("--dbound", type=int)

    g = groups.add_parser("cartier").add_subparsers(dest="action", required=True)
    sp = g.add_parser("analyze", parents=[common])
    sp.add_argument("module")
    sp = g.add_parser("delta", parents=[common])
    sp.add_argument("--point", type=int, default=0)
    sp.add_argument("--c", help="value of C on the skyscraper (default 1)")

    g = groups.add_parser("k0").add_subparsers(dest="action", required=True)
    for name in ("class", "trace"):
        sp = g.add_parser(name, parents=[common])
        sp.add_argument("module")
    sp = g.add_parser("ses", parents=[common])
    sp.add_argument("--samples", type=int, default=100)
    sp = g.add_parser("qdrank", parents=[common])
    sp.add_argument("--n", type=int)
    sp.add_argument("--relations", help="JSON list of relation rows")
    sp.add_argument("--scrambles", type=int, default=0)
    sp = g.add_parser("chow", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    return top


_HANDLERS = {
    "skew": cmd_skew,
    "ore": cmd_ore,
    "koszul": cmd_koszul,
    "ideal": cmd_ideal,
    "cartier": cmd_cartier,
    "k0": cmd_k0,
}

_FILE_ARGS = ("module", "relations", "ring")


def _input_hash(args) -> str:
    data = {}
    for k, v in sorted(vars(args).items()):
        if k == "out":
            continue
        if k in _FILE_ARGS and isinstance(v, str):
            try:
                v = _load_json(v)[0]
            except UsageError:
                pass
        data[k] = v
    blob = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def run_command(argv) -> tuple[int, str]:
    """Run one command; returns ``(exit_code, json_text)``."""
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        return 2, _dump({"error": "UsageError", "detail": str(exc)})
    except SystemExit as exc:  # --help
        return int(exc.code or 0), ""
    command = f"{args.group} {args.action}"
    try:
        payload, checks = _HANDLERS[args.group](args)
        report = dict(payload)
        report["command"] = command
        report["inputHash"] = _input_hash(args)
        report["checks"] = checks
        code, text = 0, _dump(report)
    except UsageError as exc:
        return 2, _dump({"error": "UsageError", "detail": str(exc)})
    except FrobSkewError as exc:
        err = {"error": exc.code, "detail": exc.detail}
        err.update({k: v for k, v in exc.info.items() if v is not None and k not in err})
        code, text = 1, _dump(err)
    except ZeroDivisionError as exc:
        code, text = 1, _dump({"error": DivisionByZero.code, "detail": str(exc)})
    except (ArithmeticError, ValueError, KeyError, TypeError) as exc:
        code, text = 1, _dump({"error": "InvalidInput", "detail": f"{type(exc).__name__}: {exc}"})
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return code, ""
    return code, text


def main(argv=None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    if text:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
