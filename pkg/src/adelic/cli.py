"""Command-line front end.

Field literals:
    Q                          the rationals
    Q(i)                       the Gaussian field (alias of Q(sqrt -1))
    Q(sqrt 5), Q(sqrt-3)       quadratic number fields
    Fq(t) q=3                  rational function field over F_q
    hyperelliptic q=3 f=0,-1,0,1   y^2 = f(t), ascending coefficients

--field also accepts a path to a text file whose first non-comment line is
a literal.  Idele literals are comma-separated place:value entries, e.g.

    p5#0:-1,inf#0:2.5          (number fields: p<prime>#<index>, inf#<index>)
    p3#0:2,inf#0:-1            (function fields: p<enc> encodes the monic
                                irreducible by its base-q digits; values at
                                finite and function-field infinite places
                                are valuations, archimedean values are
                                positive reals)

or the word "trivial".  Exit status: 0 = success/pass, 1 = a verification
failed (witness in the report), 2 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional

from . import ffpoly
from .euler import (
    RadiusExceeded,
    ThetaParams,
    chi,
    chi_relative,
    h0,
    h1,
    verify_poisson,
    verify_rr,
    verify_rr_relative,
    verify_serre,
)
from .ffpoly import gf
from .globalfields import (
    INFINITY,
    GlobalFieldDesc,
    GlobalFieldError,
    Idele,
    NotAnExtension,
    UnsupportedField,
    absolute_discriminant,
    archimedean_places,
    places_above,
    random_idele,
    random_idele_bounded,
)
from .harmonic import fourier, indicator, random_step_function, verify_inversion
from .localfields import (
    LAURENT,
    P_ADIC,
    LocalFieldError,
    base_field,
    validated_quadratics,
)
from .suite import local_field_roster, run_battery
from .values import LogValue
import random


class CLIError(Exception):
    """Bad input; maps to exit status 2."""


# ---------------------------------------------------------------------------
# literal parsing
# ---------------------------------------------------------------------------


def parse_field(text: str) -> GlobalFieldDesc:
    text = text.strip()
    if os.path.exists(text) or text.startswith("@"):
        path = text[1:] if text.startswith("@") else text
        try:
            with open(path) as fh:
                lines = [ln.strip() for ln in fh
                         if ln.strip() and not ln.strip().startswith("#")]
        except OSError as exc:
            raise CLIError(f"cannot read field descriptor {path}: {exc}")
        if not lines:
            raise CLIError(f"empty field descriptor file {path}")
        text = lines[0]
    if text == "Q":
        return GlobalFieldDesc.rationals()
    if text == "Q(i)":
        return GlobalFieldDesc.quadratic(-1)
    if text.startswith("Q(sqrt") and text.endswith(")"):
        body = text[len("Q(sqrt"):-1].strip()
        try:
            return GlobalFieldDesc.quadratic(int(body))
        except (ValueError, UnsupportedField) as exc:
            raise CLIError(f"bad quadratic field literal {text!r}: {exc}")
    if text.startswith("Fq(t)"):
        opts = _parse_opts(text[len("Fq(t)"):])
        if "q" not in opts:
            raise CLIError(f"missing q= in {text!r}")
        try:
            return GlobalFieldDesc.rational_function_field(int(opts["q"]))
        except (ValueError, UnsupportedField) as exc:
            raise CLIError(f"bad function field literal {text!r}: {exc}")
    if text.startswith("hyperelliptic"):
        opts = _parse_opts(text[len("hyperelliptic"):])
        if "q" not in opts or "f" not in opts:
            raise CLIError(f"need q= and f= in {text!r}")
        try:
            q = int(opts["q"])
            coeffs = [int(c) % q for c in opts["f"].split(",")]
            return GlobalFieldDesc.hyperelliptic(q, coeffs)
        except (ValueError, UnsupportedField) as exc:
            raise CLIError(f"bad hyperelliptic literal {text!r}: {exc}")
    raise CLIError(f"unrecognized field literal {text!r}")


def _parse_opts(text: str) -> Dict[str, str]:
    out = {}
    for tok in text.split():
        if "=" in tok:
            k, v = tok.split("=", 1)
            out[k] = v
    return out


def parse_idele(field: GlobalFieldDesc, text: str) -> Idele:
    text = text.strip()
    if text in ("", "trivial", "1"):
        return Idele.trivial(field)
    fin: Dict = {}
    arch: Dict = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise CLIError(f"idele component {part!r} needs selector:value")
        sel, val = part.rsplit(":", 1)
        if sel.startswith("inf"):
            idx = int(sel[4:]) if "#" in sel else 0
            if field.is_function_field:
                pls = places_above(field, INFINITY)
                if idx >= len(pls):
                    raise CLIError(f"no infinite place #{idx} on {field.describe()}")
                fin[pls[idx]] = _parse_int(val, part)
            else:
                pls = archimedean_places(field)
                if idx >= len(pls):
                    raise CLIError(f"no archimedean place #{idx}")
                a = float(val)
                if a <= 0:
                    raise CLIError(f"archimedean component must be positive: {part!r}")
                arch[pls[idx]] = a
        elif sel.startswith("p"):
            body = sel[1:]
            enc, _, idx_s = body.partition("#")
            idx = int(idx_s) if idx_s else 0
            try:
                enc_n = int(enc)
            except ValueError:
                raise CLIError(f"bad place selector {sel!r}")
            if field.is_function_field:
                below = ffpoly.int_to_poly(gf(field.q), enc_n)
            else:
                below = enc_n
            try:
                pls = places_above(field, below)
            except (UnsupportedField, GlobalFieldError) as exc:
                raise CLIError(f"bad place selector {sel!r}: {exc}")
            if idx >= len(pls):
                raise CLIError(f"no place {sel!r} (only {len(pls)} above)")
            fin[pls[idx]] = _parse_int(val, part)
        else:
            raise CLIError(f"unknown place selector in {part!r}")
    try:
        return Idele.make(field, fin, arch)
    except GlobalFieldError as exc:
        raise CLIError(str(exc))


def _parse_int(val: str, ctx: str) -> int:
    try:
        return int(val)
    except ValueError:
        raise CLIError(f"component of {ctx!r} must be an integer")


def parse_range(text: str) -> range:
    try:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise CLIError(f"bad range {text!r}, expected like -3..3")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def emit(obj: dict, args) -> None:
    if args.output == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        pairs = ", ".join(f"{k}={_fmt(v)}" for k, v in obj.items()
                          if k not in ("check",))
        name = obj.get("check", "")
        print(f"{name + ': ' if name else ''}{pairs}")


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def logvalue_obj(v: LogValue, tol: Optional[float]) -> dict:
    out = v.to_json(tol)
    out["value"] = float(v)
    return out


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_describe(args) -> int:
    F = parse_field(args.field)
    obj = {"check": "describe", "field": F.describe(), "kind": F.kind}
    if F.kind == "quadratic-number-field":
        obj["disc"] = F.disc
        obj["signature"] = list(F.signature)
    if F.is_function_field:
        obj["q"] = F.q
        obj["genus"] = F.genus
    obj["abs_disc_log"] = logvalue_obj(absolute_discriminant(F).log(), None)
    emit(obj, args)
    return 0


def _theta_params(args) -> ThetaParams:
    return ThetaParams(tolerance=args.tol, max_radius=args.max_radius)


def cmd_value(args) -> int:
    F = parse_field(args.field)
    al = parse_idele(F, args.idele or "trivial")
    if args.command == "chi":
        v = chi(F, al)
        tol = None
    elif args.command == "h0":
        v = h0(F, al, _theta_params(args))
        tol = args.tol
    elif args.command == "h1":
        v = h1(F, al, _theta_params(args))
        tol = args.tol
    else:  # chi-rel
        K = parse_field(args.base)
        v = chi_relative(F, K, al)
        tol = None
    emit({"check": args.command, "field": F.describe(), "idele": al.describe(),
          "seed": args.seed, "result": logvalue_obj(v, tol)}, args)
    return 0


def _report_seed(rep, args) -> dict:
    obj = rep.to_json()
    obj["seed"] = args.seed
    return obj


def cmd_verify(args) -> int:
    failed = 0
    if args.what == "lemmas":
        from .suite import check_lemmas
        ps = (args.p,) if args.p else (2, 3, 5)
        res = check_lemmas(ps=ps, m_range=(args.range_.start,
                                           args.range_.stop - 1))
        obj = res.to_json()
        obj["seed"] = args.seed
        emit(obj, args)
        return 0 if res.passed else 1

    if args.what == "inversion":
        rng = random.Random(args.seed)
        ps = (args.p,) if args.p else (2, 3, 5)
        for K in local_field_roster(ps):
            for _ in range(args.count):
                f = random_step_function(K, rng, coset_cap=81)
                rep = verify_inversion(f)
                if not rep.passed:
                    failed += 1
                    obj = rep.to_json()
                    obj["seed"] = args.seed
                    emit(obj, args)
        emit({"check": "inversion", "pass": failed == 0, "seed": args.seed,
              "count": args.count, "fields": len(local_field_roster(ps))}, args)
        return 1 if failed else 0

    F = parse_field(args.field)
    params = _theta_params(args)
    rng = random.Random(args.seed)

    def ideles():
        if args.idele is not None:
            yield parse_idele(F, args.idele)
            return
        for _ in range(args.count):
            if args.what == "serre":
                yield random_idele_bounded(F, rng, bound=5.0)
            else:
                yield random_idele(F, rng)

    reports = []
    for al in ideles():
        if args.what == "rr":
            reports.append(verify_rr(F, al))
        elif args.what == "rr-rel":
            K = parse_field(args.base)
            reports.extend(verify_rr_relative(F, K, al))
        elif args.what == "serre":
            reports.append(verify_serre(F, al, params))
        elif args.what == "poisson":
            reports.append(verify_poisson(F, al, params))
        else:
            raise CLIError(f"unknown verification {args.what!r}")
    for rep in reports:
        emit(_report_seed(rep, args), args)
    return 0 if all(r.passed for r in reports) else 1


def cmd_suite(args) -> int:
    results = run_battery(seed=args.seed, fast=args.fast)
    for res in results:
        obj = res.to_json()
        obj["seed"] = args.seed
        emit(obj, args)
    passed = sum(r.passed for r in results)
    emit({"check": "summary", "pass": passed == len(results),
          "passed": passed, "total": len(results), "seed": args.seed}, args)
    return 0 if passed == len(results) else 1


def cmd_transform(args) -> int:
    kind = P_ADIC if args.base_kind == "p-adic" else LAURENT
    try:
        K = base_field(args.p, kind)
        if args.quad_index is not None:
            K = validated_quadratics(args.p, kind)[args.quad_index]
    except (LocalFieldError, ValueError, IndexError) as exc:
        raise CLIError(f"bad local field: {exc}")
    g = fourier(indicator(K, args.m))
    table = {",".join(map(str, k)) if k else "0": v.to_json()
             for k, v in g.values.items()}
    print(json.dumps({
        "field": K.describe(), "m": args.m,
        "support_bound": g.support_bound, "level": g.level,
        "cosets": table,
    }, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _load_config(path: str) -> Dict[str, str]:
    try:
        out = {}
        with open(path) as fh:
            for ln in fh:
                ln = ln.strip()
                if not ln or ln.startswith("#") or "=" not in ln:
                    continue
                k, v = ln.split("=", 1)
                out[k.strip()] = v.strip()
        return out
    except OSError as exc:
        raise CLIError(f"cannot read config {path}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="adelic",
        description="Euler characteristics of Arakelov divisors via adelic integrals")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, idele=True):
        p.add_argument("--field", required=False, default="Q",
                       help="field literal or descriptor file")
        if idele:
            p.add_argument("--idele", default=None,
                           help='idele literal, e.g. "p5#0:-1,inf#0:2.5"')
        p.add_argument("--tol", type=float, default=1e-10,
                       help="theta tolerance (default 1e-10)")
        p.add_argument("--max-radius", type=float, default=4096.0)
        p.add_argument("--output", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--config", default=None,
                       help="file with flag=value lines (flags override)")

    p = sub.add_parser("describe", help="print field invariants")
    common(p, idele=False)

    for name in ("chi", "h0", "h1", "chi-rel"):
        p = sub.add_parser(name, help=f"compute {name}")
        common(p)
        if name == "chi-rel":
            p.add_argument("--base", default="Q", help="base field literal")

    p = sub.add_parser("verify", help="run a verification")
    p.add_argument("what", choices=("rr", "rr-rel", "serre", "poisson",
                                    "lemmas", "inversion"))
    common(p)
    p.add_argument("--base", default="Q")
    p.add_argument("--count", type=int, default=20,
                   help="random ideles / functions when no --idele given")
    p.add_argument("--p", type=int, default=None,
                   help="prime for lemmas/inversion (default: 2, 3 and 5)")
    p.add_argument("--range", dest="range_", type=parse_range,
                   default=range(-3, 4), help="m range for lemmas, e.g. -3..3")

    p = sub.add_parser("suite", help="run the full verification battery")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fast", action="store_true",
                   help="smaller randomized sample sizes")
    p.add_argument("--config", default=None)

    p = sub.add_parser("transform", help="dump a Fourier transform table as JSON")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--base-kind", choices=("p-adic", "laurent"), default="p-adic")
    p.add_argument("--quad-index", type=int, default=None,
                   help="index into the validated quadratic extensions")
    p.add_argument("--m", type=int, default=0)

    return top


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # argparse chokes on option values with a leading dash ("--range -3..3")
    for i in range(len(argv) - 1):
        if argv[i] == "--range" and argv[i + 1].startswith("-"):
            argv[i] = f"--range={argv[i + 1]}"
            del argv[i + 1]
            break
    # a config file mirrors flags; inject its entries before the explicit
    # flags so the command line wins on conflicts
    if "--config" in argv:
        i = argv.index("--config")
        if i + 1 >= len(argv):
            print("error: --config needs a path", file=sys.stderr)
            return 2
        try:
            cfg = _load_config(argv[i + 1])
        except CLIError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        extra: List[str] = []
        for k, v in cfg.items():
            extra.extend([f"--{k}", v])
        argv = argv[:1] + extra + argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "describe":
            return cmd_describe(args)
        if args.command in ("chi", "h0", "h1", "chi-rel"):
            return cmd_value(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "suite":
            return cmd_suite(args)
        if args.command == "transform":
            return cmd_transform(args)
        raise CLIError(f"unknown command {args.command!r}")
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UnsupportedField, NotAnExtension) as exc:
        print(f"unsupported field: {exc}", file=sys.stderr)
        return 2
    except RadiusExceeded as exc:
        print(f"radius exceeded: {exc}", file=sys.stderr)
        return 2
    except (GlobalFieldError, LocalFieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
