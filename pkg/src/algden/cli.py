"""Command-line interface.

Every command prints line-delimited records: JSON objects with sorted keys
(``--format json``, the default) or ``key=value`` lines (``--format human``).
The first record echoes the configuration (seed, effort, degree cap) so runs
are reproducible.  Exit status: 0 on success, 1 on bad input, 2 when a
verification check fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Iterable

from . import __version__
from .classgroup import ClassGroupError, PrincipalityError, class_group, effort_limit, resolve_effort
from .denominators import (
    MEMBERSHIP_CAP,
    GammaContext,
    GammaError,
    compute_xy,
    denominator_section,
    kernel_ideal,
    local_classify,
    membership,
    membership_oracle,
    ring_description,
    same_denominator,
)
from .genset import GenSetError, generating_set, verify_generating_set
from .nf.primes import factor_prime
from .nf.subfield import adjoin, cached_field, primes_above_in
from .parse import ParseError, parse_element, parse_field, parse_poly
from .poly import ReducibleError, invariants, normalize
from .tuples import NotRealizableError, TupleQuery, atlas, construct_witness, is_realizable
from .verify import SUITES, run_suite

ENV = {"seed": "ALGDEN_SEED", "max_degree": "ALGDEN_MAX_DEGREE", "effort": "ALGDEN_EFFORT", "format": "ALGDEN_FORMAT"}


class InputError(ValueError):
    pass


class VerificationFailure(Exception):
    """Raised after a command has yielded records that include a failed check."""


@dataclass
class CommandConfig:
    command: str
    seed: int
    max_degree: int
    effort: int
    format: str

    def as_dict(self) -> dict:
        return {
            "record": "config",
            "command": self.command,
            "seed": self.seed,
            "max_degree": self.max_degree,
            "effort": self.effort,
            "version": __version__,
        }


# ------------------------------------------------------------------ output


def _human(value) -> str:
    if isinstance(value, (dict, list, bool)) or value is None:
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    return str(value)


def emit(records: Iterable[dict], fmt: str, out=None) -> None:
    out = out or sys.stdout
    for rec in records:
        if fmt == "json":
            out.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
        else:
            out.write("  ".join(f"{k}={_human(rec[k])}" for k in sorted(rec)) + "\n")


# ------------------------------------------------------------------ input helpers


def _field_and_var(text: str):
    if text.strip() == "Q":
        return cached_field((0, 1)), "x"
    return parse_field(text)


def _context(args) -> GammaContext:
    if getattr(args, "minpoly", None):
        if args.field:
            raise InputError("give either --minpoly or --field with --gamma, not both")
        return GammaContext.from_minpoly(parse_poly(args.minpoly))
    if not args.field or not args.gamma:
        raise InputError("need --field and --gamma (or --minpoly)")
    M, var = _field_and_var(args.field)
    return GammaContext(M, parse_element(args.gamma, M, var))


def _subfield(ctx: GammaContext, text: str | None):
    if text is None or text.strip() in ("", "Q", "1"):
        return ctx.subfield(None)
    return ctx.subfield(parse_element(text, ctx.field))


def _gamma_record(ctx: GammaContext) -> dict:
    return {"gamma": str(ctx.gamma), "field": str(ctx.field), "minpoly": str(ctx.minpoly)}


# ------------------------------------------------------------------ commands


def cmd_invariants(args, cfg):
    F = normalize(parse_poly(args.poly))
    inv = invariants(F)
    yield {"minpoly": str(F), "c": inv.c, "d": inv.d, "e": inv.e, "n": inv.n}


def _cert_record(cert) -> dict:
    c, d, e, n = cert.query.as_tuple()
    rec = {"c": c, "d": d, "e": e, "n": n, "realizable": cert.realizable}
    if cert.realizable:
        if cert.witness is not None:
            rec["witness"] = str(cert.witness)
            rec["eisenstein_prime"] = cert.eisenstein_prime
    else:
        rec["reason"] = cert.reason
    return rec


def cmd_tuple(args, cfg):
    if args.action == "atlas":
        ns = args.n or [2]
        for cert in atlas(ns, args.max_c, args.max_d, args.max_e):
            if cert.realizable and cert.witness is None:
                cert = is_realizable(cert.query)
            yield _cert_record(cert)
        return
    if len(args.values) != 4:
        raise InputError(f"tuple {args.action} expects four integers c d e n")
    try:
        q = TupleQuery(*args.values)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    cert = is_realizable(q)
    rec = _cert_record(cert)
    if args.action == "check":
        rec["diagnostics"] = [
            {"p": dg.p, "v_c": dg.vc, "v_d": dg.vd, "v_e": dg.ve, "condition_1": dg.condition_1,
             "condition_2": dg.condition_2}
            for dg in cert.diagnostics
        ]
        yield rec
        return
    W = construct_witness(q)
    yield {**rec, "witness": str(W), "coefficients": list(W.coeffs),
           "recomputed": list(invariants(W).as_tuple())}


def cmd_field(args, cfg):
    K, _ = _field_and_var(args.spec)
    if args.action == "info":
        yield {
            "field": str(K),
            "degree": K.n,
            "discriminant": K.discriminant,
            "index": K.index,
            "signature": list(K.signature),
            "integral_basis": [str(w) for w in K.integral_basis],
        }
        return
    if args.p is None:
        raise InputError("field factor needs -p PRIME")
    for P in factor_prime(K, args.p):
        yield {"prime": str(P), **P.as_dict()}


def cmd_xy(args, cfg):
    ctx = _context(args)
    rep = compute_xy(ctx, _subfield(ctx, args.K)).as_dict()
    rep["subfield"] = rep.pop("field")
    yield {**_gamma_record(ctx), **rep}


def cmd_member(args, cfg):
    ctx = _context(args)
    K = _subfield(ctx, args.K)
    alpha = parse_element(args.alpha, ctx.field)
    if not K.contains(alpha):
        raise InputError(f"{alpha} does not lie in {K.label()}")
    m = membership(ctx, K, alpha)
    res = membership_oracle(ctx, K, alpha, cap=cfg.max_degree)
    yield {**_gamma_record(ctx), "subfield": K.label(), "alpha": str(alpha), "member": m,
           "oracle": res.status, "oracle_degree": res.degree, "oracle_bound": res.bound,
           "representation": res.coefficients}


def cmd_ring(args, cfg):
    ctx = _context(args)
    K = _subfield(ctx, args.K)
    yield {**_gamma_record(ctx), "subfield": K.label(), **ring_description(ctx, K).as_dict()}


def cmd_kernel_ideal(args, cfg):
    ctx = _context(args)
    K = _subfield(ctx, args.K)
    I = kernel_ideal(ctx, K)
    sec = denominator_section(ctx, K)
    yield {**_gamma_record(ctx), "subfield": K.label(), "kernel_ideal": str(I),
           "kernel_factorization": [[str(P), e] for P, e in I.factor()],
           "denominator_section": str(sec.ideal), "section_radical_matches_Y": sec.matches}


def cmd_classgroup(args, cfg):
    K, _ = _field_and_var(args.spec)
    G = class_group(K)
    yield {"field": str(K), "class_number": G.h, "elementary_divisors": G.elementary_divisors,
           "generators": [str(I) for I in G.generator_ideals], "structure": str(G)}


def cmd_genset(args, cfg):
    ctx = _context(args)
    gs = generating_set(ctx)
    rec = {**_gamma_record(ctx), **gs.as_dict()}
    if args.check:
        rep = verify_generating_set(ctx, gs.S)
        rec["verified"] = rep.ok
        # control fields live in a larger ambient field; say which
        rec["battery"] = [c.L.label() if c.L.ambient == ctx.field else f"{c.L.label()} in {c.L.ambient}"
                          for c in rep.checks]
        yield rec
        if not rep.ok:
            raise VerificationFailure()
        return
    yield rec


def cmd_same_denom(args, cfg):
    ctx = _context(args)
    g2 = parse_element(args.gamma2, ctx.field)
    r = same_denominator(ctx, g2, debug=True)
    yield {**_gamma_record(ctx), "gamma2": str(g2), "same_denominator": r.value,
           "compositum": r.compositum.label()}


def cmd_local(args, cfg):
    ctx = _context(args)
    K = _subfield(ctx, args.K)
    L = adjoin(K, ctx.gamma)
    for P in factor_prime(K.field, args.p):
        for Q in primes_above_in(P, K, L):
            yield {"P": str(P), "Q": str(Q), "subfield": K.label(), "extension": str(L.field),
                   "completion_of_ring": local_classify(ctx, K, P, Q)}


def cmd_verify(args, cfg):
    kwargs = {"seed": cfg.seed, "cap": cfg.max_degree}
    if args.count is not None:
        kwargs["count"] = args.count
    failed = False
    for r in run_suite(args.suite, **kwargs):
        failed |= not r.ok
        yield r.as_dict()
    if failed:
        raise VerificationFailure()


COMMANDS = {
    "invariants": cmd_invariants,
    "tuple": cmd_tuple,
    "field": cmd_field,
    "xy": cmd_xy,
    "member": cmd_member,
    "ring": cmd_ring,
    "kernel-ideal": cmd_kernel_ideal,
    "classgroup": cmd_classgroup,
    "genset": cmd_genset,
    "same-denom": cmd_same_denom,
    "local": cmd_local,
    "verify": cmd_verify,
}


# ------------------------------------------------------------------ argument parsing


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(ENV[name])
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{ENV[name]} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"random seed (env {ENV['seed']})")
    common.add_argument("--max-degree", type=int, default=None,
                        help=f"membership search degree cap (env {ENV['max_degree']}, default {MEMBERSHIP_CAP})")
    common.add_argument("--effort", type=int, default=None,
                        help=f"class group and generator search effort (env {ENV['effort']})")
    common.add_argument("--format", choices=["json", "human"], default=None,
                        help=f"output format (env {ENV['format']}, default json)")

    gamma = argparse.ArgumentParser(add_help=False)
    gamma.add_argument("--field", help='ambient field, e.g. "Q[x]/(x^2+1)"')
    gamma.add_argument("--gamma", help='γ in the ambient generator, e.g. "1/(60+15*x)"')
    gamma.add_argument("--minpoly", help="minimal polynomial of γ instead of --field/--gamma")
    gamma.add_argument("--K", help="generator of the subfield K (default Q)")

    p = argparse.ArgumentParser(prog="algden", description="Denominators of algebraic numbers.")
    p.add_argument("--version", action="version", version=f"algden {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", parents=[common], help="c, d, e, n of a minimal polynomial")
    s.add_argument("poly")

    s = sub.add_parser("tuple", parents=[common], help="realizability of (c, d, e, n)")
    s.add_argument("action", choices=["check", "witness", "atlas"])
    s.add_argument("values", nargs="*", type=int)
    s.add_argument("--n", type=int, action="append")
    s.add_argument("--max-c", type=int, default=4)
    s.add_argument("--max-d", type=int)
    s.add_argument("--max-e", type=int)

    s = sub.add_parser("field", parents=[common], help="field data and prime splitting")
    s.add_argument("action", choices=["info", "factor"])
    s.add_argument("spec", metavar="FIELD")
    s.add_argument("-p", type=int)

    for name, helptext in (("xy", "X(K, γ) and Y(K, γ)"), ("ring", "structure of O_K[γ] ∩ K"),
                           ("kernel-ideal", "kernel ideal and denominator ideal section")):
        sub.add_parser(name, parents=[common, gamma], help=helptext)

    s = sub.add_parser("member", parents=[common, gamma], help="is α in O_K[γ]?")
    s.add_argument("--alpha", required=True)

    s = sub.add_parser("classgroup", parents=[common], help="class group of a field")
    s.add_argument("spec", metavar="FIELD")

    s = sub.add_parser("genset", parents=[common, gamma], help="generating set S of γ")
    s.add_argument("--check", action="store_true", help="also run the verification battery")

    s = sub.add_parser("same-denom", parents=[common, gamma], help="equal denominator radicals?")
    s.add_argument("--gamma2", required=True)

    s = sub.add_parser("local", parents=[common, gamma], help="completions of O_K[γ] above p")
    s.add_argument("--p", type=int, required=True)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=["all", *SUITES])
    s.add_argument("--count", type=int)
    return p


def resolve_config(args) -> CommandConfig:
    seed = args.seed if args.seed is not None else _env_int("seed", 0)
    max_degree = args.max_degree if args.max_degree is not None else _env_int("max_degree", MEMBERSHIP_CAP)
    effort = args.effort if args.effort is not None else _env_int("effort", resolve_effort(None))
    fmt = args.format or os.environ.get(ENV["format"], "json")
    if fmt not in ("json", "human"):
        raise InputError(f"{ENV['format']} must be json or human, got {fmt!r}")
    if max_degree < 1 or effort < 1:
        raise InputError("--max-degree and --effort must be positive")
    return CommandConfig(args.command, seed, max_degree, effort, fmt)


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    records: list[dict] = []
    fmt = "json"
    status = 0
    try:
        cfg = resolve_config(args)
        fmt = cfg.format
        records.append(cfg.as_dict())
        with effort_limit(cfg.effort):
            for rec in COMMANDS[args.command](args, cfg):
                records.append(rec)
    except VerificationFailure:
        status = 2
    except ParseError as exc:
        records.append({"record": "error", "kind": "input", "message": str(exc),
                        "position": exc.pos, "token": exc.token})
        status = 1
    except (InputError, GammaError, GenSetError, NotRealizableError, ReducibleError, ValueError) as exc:
        records.append({"record": "error", "kind": "input", "message": str(exc)})
        status = 1
    except (ClassGroupError, PrincipalityError) as exc:
        records.append({"record": "error", "kind": "effort", "message": str(exc)})
        status = 1
    # buffered so the output order never depends on how far a command got
    emit(records, fmt, out)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
