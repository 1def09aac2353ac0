"""Command-line front end: ``inv <command> ...``.

Exit codes: 0 on success, 1 when a mathematical check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from .algebra.field import UnsupportedDegree, make_field
from .algebra.poly import IntegerRing, Polynomial, format_poly, parse_poly, reduce_mod2
from .algebra.variables import is_coord, kind_of, Z
from .groups import UnsupportedGroup, invariance_check, parse_group, random_element_matrix
from .invariants import (
    build_invariant,
    g_relation,
    gamma_relation,
    gram_det,
    invariant_dimension,
    l_poly,
    natural_group,
    parse_invariant_id,
    substitute_gram,
)
from .invspace import (
    ComponentTooLarge,
    NotInvariant,
    OddZError,
    express_in_B,
    express_QB,
    field_coordinates,
    invariant_space,
    is_decomposable,
    jacobian_rank,
    standard_point,
)
from .invspace.space import DEFAULT_CAP
from .witt import (
    GramData,
    RealizationError,
    VectorTuple,
    fingerprint,
    null_cone_test,
    null_cone_vanishing,
    realize_gram,
    same_orbit_generic,
)

OK, FAIL, USAGE = 0, 1, 2


def load_schema(command: str) -> dict:
    """JSON schema of a subcommand's ``--json`` output (or of ``gramdata`` / ``vectortuple``)."""
    return json.loads(resources.files("orthoinv").joinpath("schemas", f"{command}.json").read_text())


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    k: int = 8
    seed: int = 0
    mode: str = "auto"
    output: str = "text"
    cap: int = DEFAULT_CAP

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(args.command, args.k, args.seed, args.mode, "json" if args.json else "text", args.cap)


@dataclass
class Result:
    code: int
    text: str
    data: dict


def _emit(cfg: RunConfig, res: Result, out: TextIO) -> int:
    if cfg.output == "json":
        payload = {"command": cfg.command, "exit_code": res.code, **res.data}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(res.text.rstrip("\n") + "\n")
    return res.code


# input helpers


def _read_target(args, stdin: TextIO) -> tuple[Polynomial, Optional[str]]:
    """Polynomial from an invariant identifier or, failing that, polynomial text on stdin."""
    if getattr(args, "invariant", None):
        inv = parse_invariant_id(args.invariant)
        return build_invariant(inv, args.n), args.invariant
    text = stdin.read().strip()
    if not text:
        raise UsageError("no invariant identifier given and stdin is empty")
    return parse_poly(text), None


def _group_for(args, ident: Optional[str], p: Polynomial) -> str:
    if args.group:
        return args.group
    if ident is not None:
        inv = parse_invariant_id(ident)
        return natural_group(inv, args.n)
    if args.n:
        return f"O{args.n}"
    raise UsageError("--group (or --n) is required for polynomial input")


def _ints(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.split(",") if a.strip())
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _load_json(args, stdin: TextIO) -> dict:
    if args.input:
        with open(args.input) as fh:
            return json.load(fh)
    return json.loads(stdin.read())


# commands


def cmd_gen(cfg: RunConfig, args, stdin) -> Result:
    inv = parse_invariant_id(args.invariant)
    p = build_invariant(inv, args.n)
    text = format_poly(p)
    ring = "Int" if isinstance(p.ring, IntegerRing) else str(p.ring)
    return Result(OK, text, {"invariant": args.invariant, "n": invariant_dimension(inv, args.n),
                             "ring": ring, "terms": len(p), "poly": text})


def cmd_check(cfg: RunConfig, args, stdin) -> Result:
    p, ident = _read_target(args, stdin)
    group = _group_for(args, ident, p)
    cert = invariance_check(p, group, mode=cfg.mode, k=cfg.k, seed=cfg.seed)
    head = f"{cert.status} ({cert.mode}, {cert.group}, {cert.generators_checked} checks)"
    if cert.witness:
        head += "\nwitness: " + json.dumps(cert.witness, sort_keys=True)
    return Result(OK if cert.passed else FAIL, head, {"certificate": cert.to_json()})


def cmd_space(cfg: RunConfig, args, stdin) -> Result:
    if not args.group:
        raise UsageError("--group is required")
    g = parse_group(args.group)
    if args.n and args.n != g.n:
        raise UsageError(f"--n {args.n} does not match group {g}")
    alpha = _ints(args.alpha, "--alpha")
    sp = invariant_space(g.n, g, alpha, mode=cfg.mode, cap=cfg.cap, k=cfg.k, seed=cfg.seed)
    lines = [f"{sp.group} multidegree {alpha}: dimension {sp.dimension} ({sp.provenance})"]
    lines += [f"  {format_poly(b)}" for b in sp.basis]
    return Result(OK, "\n".join(lines), {"space": sp.to_json()})


def cmd_decompose(cfg: RunConfig, args, stdin) -> Result:
    p, ident = _read_target(args, stdin)
    group = _group_for(args, ident, p)
    g = parse_group(group)
    dec = is_decomposable(p, g, g.n, cap=cfg.cap, mode=cfg.mode, k=cfg.k, seed=cfg.seed)
    if dec.decomposable:
        text = "decomposable\n" + "\n".join(f"  ({format_poly(a)}) * ({format_poly(b)})"
                                             for a, b in dec.certificate)
    else:
        text = "indecomposable\nseparating functional: " + " + ".join(dec.functional)
    return Result(OK, text, {"group": str(g), "decomposition": dec.to_json()})


def _relation_check(n: int) -> tuple[bool, list[str], dict]:
    lines, data = [], {"n": n}
    ok = True
    if n % 2:
        rel = g_relation(n, signed=True)
        z_int = substitute_gram(rel, n)
        z_gf2 = substitute_gram(reduce_mod2(g_relation(n)), n)
        det = gram_det(n)
        even = all(c % 2 == 0 for c in det.terms.values())
        ok = not z_int and not z_gf2 and even
        status = "0 (verified over Int and GF(2))" if not z_int and not z_gf2 else \
            f"nonzero ({len(z_int)} terms over Int, {len(z_gf2)} over GF(2))"
        lines.append(f"G-relation: {status}")
        lines.append(f"Gram determinant coefficients even: {'yes' if even else 'no'}")
        data.update(relation="G", int_terms=len(z_int), gf2_terms=len(z_gf2), det_even=even,
                    relation_terms=len(rel))
    else:
        L = l_poly(n)
        div4 = all(c % 4 == 0 for c in L.terms.values())
        rel = gamma_relation(n)
        z_int = substitute_gram(rel, n)
        z_gf2 = substitute_gram(reduce_mod2(rel), n)
        ok = not z_int and not z_gf2 and div4
        status = "0 (verified over Int and GF(2))" if not z_int and not z_gf2 else \
            f"nonzero ({len(z_int)} terms over Int, {len(z_gf2)} over GF(2))"
        lines.append(f"Gamma-relation: {status}")
        lines.append(f"L coefficients divisible by 4: {'yes' if div4 else 'no'}")
        data.update(relation="Gamma", int_terms=len(z_int), gf2_terms=len(z_gf2), l_div4=div4,
                    relation_terms=len(rel))
    data["verified"] = ok
    return ok, lines, data


def cmd_relations(cfg: RunConfig, args, stdin) -> Result:
    if not args.n:
        raise UsageError("--n is required")
    ok, lines, data = _relation_check(args.n)
    return Result(OK if ok else FAIL, "\n".join(lines), data)


def cmd_rewrite(cfg: RunConfig, args, stdin) -> Result:
    p, ident = _read_target(args, stdin)
    n = args.n or (invariant_dimension(parse_invariant_id(ident)) if ident else None)
    if not n:
        raise UsageError("--n is required")
    try:
        if n % 2:
            out = express_QB(p, n, seed=cfg.seed, cap=cfg.cap)
        else:
            if any(is_coord(v) and kind_of(v) == Z for v in p.variables()):
                raise UsageError("even n takes polynomials in x and y only")
            out = express_in_B(p, n // 2, cap=cfg.cap)
            if out is None:
                return Result(FAIL, "fail: not a polynomial in the B's (not Sp-invariant)",
                              {"n": n, "status": "fail", "reason": "not Sp-invariant"})
    except OddZError as e:
        return Result(FAIL, f"fail: {e}", {"n": n, "status": "fail", "reason": f"OddZError: {e}"})
    except NotInvariant as e:
        return Result(FAIL, f"fail: {e}", {"n": n, "status": "fail", "reason": f"NotInvariant: {e}"})
    text = format_poly(out)
    return Result(OK, text, {"n": n, "status": "ok", "result": text})


def _random_gram(m: int, n: int, f, rng: np.random.Generator) -> GramData:
    beta = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            beta[i][j] = beta[j][i] = int(rng.integers(0, f.order))
    return GramData(m, beta, [int(a) for a in rng.integers(0, f.order, size=m)], f)


def cmd_realize(cfg: RunConfig, args, stdin) -> Result:
    if not args.n:
        raise UsageError("--n is required")
    if args.random:
        if not args.m:
            raise UsageError("--m is required with --random")
        g = _random_gram(args.m, args.n, make_field(cfg.k), np.random.default_rng(cfg.seed))
    else:
        g = GramData.from_json(_load_json(args, stdin))
    try:
        v = realize_gram(g, args.n)
    except RealizationError as e:
        return Result(FAIL, f"fail: {e}", {"status": "fail", "reason": str(e)})
    back = fingerprint(v)
    gg = g.change_field(v.field) if v.field != g.field else g
    ok = back.beta == gg.beta and back.qvals == gg.qvals
    lines = [f"field GF(2^{v.field.k}){' (extended)' if v.extended else ''}"]
    lines += [" ".join(map(str, c)) for c in v.columns]
    lines.append(f"round trip: {'ok' if ok else 'MISMATCH'}")
    return Result(OK if ok else FAIL, "\n".join(lines),
                  {"gram": g.to_json(), "vectors": v.to_json(), "extended": v.extended, "round_trip": ok})


def cmd_orbit(cfg: RunConfig, args, stdin) -> Result:
    kind = args.group or "O"
    if kind not in ("O", "SO"):
        raise UsageError("--group must be O or SO for orbit")
    if args.random:
        if not (args.n and args.m):
            raise UsageError("--n and --m are required with --random")
        f = make_field(cfg.k)
        rng = np.random.default_rng(cfg.seed)
        cols = [[int(a) for a in rng.integers(0, f.order, size=args.n)] for _ in range(args.m)]
        v1 = VectorTuple(args.n, cols, f)
        M, _ = random_element_matrix(parse_group(f"{kind}{args.n}"), f, 4, rng)
        v2 = v1.act(M)
    else:
        d = _load_json(args, stdin)
        v1, v2 = VectorTuple.from_json(d["v1"]), VectorTuple.from_json(d["v2"])
    verdict = same_orbit_generic(v1, v2, kind)
    return Result(OK, verdict.value, {"group": kind, "verdict": verdict.value,
                                      "v1": v1.to_json(), "v2": v2.to_json()})


def cmd_nullcone(cfg: RunConfig, args, stdin) -> Result:
    if args.invariant:
        inv = parse_invariant_id(args.invariant)
        n = args.n or invariant_dimension(inv)
        cert = null_cone_vanishing(inv, n, trials=args.trials, k=cfg.k, seed=cfg.seed)
        text = f"{cert.status}: {args.invariant} vanishes on {cert.trials} totally singular tuples" \
            if cert.passed else f"fail: nonzero value {cert.witness['value']} at trial {cert.witness['trial']}"
        return Result(OK if cert.passed else FAIL, text, {"certificate": cert.to_json()})
    v = VectorTuple.from_json(_load_json(args, stdin))
    member = null_cone_test(v)
    return Result(OK, "member" if member else "not a member", {"member": member, "vectors": v.to_json()})


def cmd_jacobian(cfg: RunConfig, args, stdin) -> Result:
    if not (args.n and args.m):
        raise UsageError("--n and --m are required")
    coords = field_coordinates(args.n, args.m)
    r = jacobian_rank([p for _, p in coords], standard_point(args.n, args.m))
    full = r == len(coords)
    text = f"rank {r} of {len(coords)} coordinates ({'full' if full else 'deficient'})"
    return Result(OK if full else FAIL, text, {"n": args.n, "m": args.m, "rank": r,
                                               "coordinates": [name for name, _ in coords], "full": full})


COMMANDS = {
    "gen": cmd_gen,
    "check": cmd_check,
    "space": cmd_space,
    "decompose": cmd_decompose,
    "relations": cmd_relations,
    "rewrite": cmd_rewrite,
    "realize": cmd_realize,
    "orbit": cmd_orbit,
    "nullcone": cmd_nullcone,
    "jacobian": cmd_jacobian,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="ambient dimension")
    common.add_argument("--m", type=int, help="number of vectors")
    common.add_argument("--k", type=int, default=8, help="field degree for randomized work (GF(2^k))")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--mode", choices=("auto", "symbolic", "randomized"), default="auto")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="component size limit")
    common.add_argument("--group", help="group such as O4, SO6, Sp4, SL2 (O or SO for orbit)")

    p = argparse.ArgumentParser(prog="inv", description="Vector invariants of orthogonal groups in characteristic 2.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("gen", "check", "decompose", "rewrite"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("invariant", nargs=None if name == "gen" else "?",
                        help="identifier such as Q:1, BIJ:1,2|3,4, FEVEN:nu=2,t=2")
    sp = sub.add_parser("space", parents=[common])
    sp.add_argument("--alpha", required=True, help="multidegree, e.g. 1,1,1,1")
    sub.add_parser("relations", parents=[common])
    for name in ("realize", "orbit"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--input", help="JSON file (default: stdin)")
        sp.add_argument("--random", action="store_true", help="generate the input from --seed")
    sp = sub.add_parser("nullcone", parents=[common])
    sp.add_argument("invariant", nargs="?")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--input", help="VectorTuple JSON file for a membership test (default: stdin)")
    sub.add_parser("jacobian", parents=[common])
    return p


def run(argv=None, stdin: TextIO | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else USAGE
    cfg = RunConfig.from_args(args)
    try:
        make_field(cfg.k)
        res = COMMANDS[args.command](cfg, args, stdin)
    except (UsageError, UnsupportedDegree, UnsupportedGroup, ComponentTooLarge,
            json.JSONDecodeError, KeyError, ValueError) as e:
        stderr.write(f"inv {args.command}: error: {e}\n")
        return USAGE
    return _emit(cfg, res, stdout)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
