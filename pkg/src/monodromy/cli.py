"""Command-line front end.

Exit codes: 0 success, 2 not certified / not found within budget, 1 usage or
input error, 3 work or scale limit exceeded.
"""

from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 2
EXIT_LIMIT = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int(text: str) -> int:
    """Integers, also written like 1e7."""
    try:
        return int(text)
    except ValueError:
        val = float(text)
        if val != int(val):
            raise argparse.ArgumentTypeError(f"not an integer: {text}")
        return int(val)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text}")


def _ratstr(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--no-meta", action="store_true", help="omit timestamp and version from the output")
    # the same flags after a nested action; SUPPRESS keeps values given earlier
    nested = _Parser(add_help=False)
    nested.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    nested.add_argument("--no-meta", action="store_true", default=argparse.SUPPRESS)

    parser = _Parser(prog="monodromy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("certify", parents=[common], help="certify an S_n Galois group")
    p.add_argument("--poly", required=True)
    p.add_argument("--budget", type=_int, default=200, help="unramified primes to examine")
    p.add_argument("--seed", type=_int, default=0)

    p = sub.add_parser("ramify", parents=[common], help="find an ordinary ramification prime")
    p.add_argument("--poly", required=True)
    p.add_argument("--disc-bound", type=_int, default=10**7)

    p = sub.add_parser("monodromy", parents=[common], help="both conditions together")
    p.add_argument("--poly", required=True)
    p.add_argument("--budget", type=_int, default=200)
    p.add_argument("--disc-bound", type=_int, default=10**7)
    p.add_argument("--seed", type=_int, default=0)

    p = sub.add_parser("density", parents=[common], help="failure fractions over a height box")
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--T", type=_int, nargs="+", required=True, help="one or more height bounds")
    p.add_argument("--sample", type=_int, default=None)
    p.add_argument("--sn-budget", type=_int, default=200)
    p.add_argument("--ram-budget", type=_int, default=10**7)
    p.add_argument("--seed", type=_int, default=0)
    p.add_argument("--jobs", type=_int, default=os.cpu_count() or 1)
    p.add_argument("--csv", action="store_true", help="trend table as CSV")

    p = sub.add_parser("omega", parents=[common], help="local density of the ramification shape")
    p.add_argument("--p", type=_int, required=True)
    p.add_argument("--n", type=_int, required=True)
    p.add_argument("--brute", action="store_true")

    p = sub.add_parser("sieve-sum", parents=[common], help="squarefree sum H and the sieve bound shape")
    p.add_argument("--L", type=_int, required=True)
    p.add_argument("--c", type=_rational, default=Fraction(1))
    p.add_argument("--p0", type=_int, default=1)
    p.add_argument("--N", type=_int, default=None, help="box side for the bound shape")
    p.add_argument("--n", type=_int, default=None, help="degree for the bound shape")

    p = sub.add_parser("sp", parents=[common], help="symplectic group checks")
    p.add_argument("--g", type=_int, required=True)
    p.add_argument("--l", type=_int, required=True)
    p.add_argument("--cap", type=_int, default=10**6)
    spsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    spsub.add_parser("order", parents=[nested])
    q = spsub.add_parser("generate", parents=[nested])
    q.add_argument("--gens", default=None, help="JSON file of matrices (default: standard transvections)")
    q = spsub.add_parser("irreducible", parents=[nested])
    q.add_argument("--gens", default=None)

    p = sub.add_parser("chars", parents=[common], help="torus character arithmetic")
    p.add_argument("--l", type=_int, required=True)
    p.add_argument("--d", type=_int, required=True)
    chsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = chsub.add_parser("amp", parents=[nested])
    q.add_argument("--a", type=_int, required=True)
    q = chsub.add_parser("power", parents=[nested])
    q.add_argument("--a", type=_int, required=True)
    q.add_argument("--c", type=_int, required=True)
    chsub.add_parser("table", parents=[nested])
    return parser


def _config(args: argparse.Namespace) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("format", "no_meta", "jobs"):
            continue
        out[k] = _ratstr(v) if isinstance(v, Fraction) else v
    return out


# --- subcommand handlers: each returns (exit code, payload) -------------------


def _cmd_certify(args):
    from .galois import SnCertificate, certify_sn
    from .intpoly import parse

    res = certify_sn(parse(args.poly), args.budget, args.seed)
    ok = isinstance(res, SnCertificate)
    body = res.to_json()
    if not ok:
        body["message"] = "not certified within budget"
    return (EXIT_OK if ok else EXIT_NEGATIVE), {"certificate": body}


def _cmd_ramify(args):
    from .intpoly import parse
    from .ramify import RamificationWitness, find_ordinary_prime

    res = find_ordinary_prime(parse(args.poly), args.disc_bound)
    ok = isinstance(res, RamificationWitness)
    return (EXIT_OK if ok else EXIT_NEGATIVE), {"witness": res.to_json()}


def _cmd_monodromy(args):
    from .galois import SnCertificate, certify_sn
    from .intpoly import discriminant, parse
    from .ramify import RamificationWitness, find_ordinary_prime

    f = parse(args.poly)
    disc = discriminant(f)
    cert = certify_sn(f, args.budget, args.seed, disc=disc)
    wit = find_ordinary_prime(f, args.disc_bound, disc=disc)
    ok = isinstance(cert, SnCertificate) and isinstance(wit, RamificationWitness)
    return (EXIT_OK if ok else EXIT_NEGATIVE), {
        "poly": f.to_json(),
        "discriminant": str(disc),
        "certificate": cert.to_json(),
        "witness": wit.to_json(),
        "big_monodromy_certified": ok,
    }


def _cmd_density(args):
    from .sieve import FamilySpec, density_experiment, trend_check, trend_csv, trend_rows

    reports = []
    for T in args.T:
        spec = FamilySpec(args.n, T, args.sample, args.seed)
        reports.append(density_experiment(spec, args.sn_budget, args.ram_budget, args.seed, jobs=args.jobs))
    if args.csv:
        return EXIT_OK, trend_csv(trend_rows(reports))
    body = {"reports": [r.to_json() for r in reports]}
    if len(reports) >= 2:
        body["trend"] = trend_check(reports).to_json()
    return EXIT_OK, body


def _cmd_omega(args):
    from .sieve import omega_count, omega_lower_bound, work_limit

    method = "brute" if args.brute else "formula"
    count = omega_count(args.p, args.n, method, limit=work_limit())
    total = args.p**args.n
    dens = Fraction(count, total)
    return EXIT_OK, {
        "p": args.p,
        "n": args.n,
        "method": method,
        "count": count,
        "total": total,
        "density": f"{count}/{total}",
        "density_reduced": _ratstr(dens),
        "density_decimal": f"{float(dens):.6f}",
        "lower_bound_count": omega_lower_bound(args.p, args.n),
    }


def _cmd_sieve_sum(args):
    from .sieve import large_sieve_bound_shape, large_sieve_sum

    if not 0 < args.c <= 1:
        raise UsageError("--c must lie in (0, 1]")
    H = large_sieve_sum(args.L, args.c, args.p0)
    body = {"L": args.L, "c": _ratstr(args.c), "P0": args.p0, "H": _ratstr(H), "H_decimal": f"{float(H):.6f}"}
    if args.N is not None and args.n is not None:
        shape = large_sieve_bound_shape(args.N, args.n, args.L, H)
        body["bound_shape"] = {"N": args.N, "n": args.n, "value": _ratstr(shape), "decimal": f"{float(shape):.6f}"}
    return EXIT_OK, body


def _load_gens(path, space):
    from .symplectic import matrices_from_json, standard_transvections

    if path is None:
        return standard_transvections(space), "standard"
    with open(path) as fh:
        mats, _ = matrices_from_json(json.load(fh), space)
    return mats, path


def _cmd_sp(args):
    from .symplectic import SymplecticSpace, generate, gsp_order, is_irreducible, sp_order

    space = SymplecticSpace(args.g, args.l)
    body = {"g": args.g, "l": args.l}
    if args.action == "order":
        body.update(sp=sp_order(args.g, args.l), gsp=gsp_order(args.g, args.l))
        return EXIT_OK, body
    gens, source = _load_gens(args.gens, space)
    body["generators"] = source
    if args.action == "generate":
        order = generate(gens, space, args.cap).order
        body.update(order=order, sp_order=sp_order(args.g, args.l), is_full_sp=order == sp_order(args.g, args.l))
    else:
        body["irreducible"] = is_irreducible(gens, space)
    return EXIT_OK, body


def _cmd_chars(args):
    from .torus import amplitude, character_table, from_residue, is_l_restricted, power

    body = {"l": args.l, "d": args.d}
    if args.action == "amp":
        chi = from_residue(args.a, args.l, args.d)
        body.update(character=chi.to_json(), amplitude=amplitude(chi), l_restricted=is_l_restricted(chi.digits, args.l))
    elif args.action == "power":
        chi = from_residue(args.a, args.l, args.d)
        res = power(chi, args.c)
        body.update(
            character=chi.to_json(),
            c=args.c,
            result=res.character.to_json(),
            carry_free=res.carry_free,
            amplitude=amplitude(chi),
            result_amplitude=amplitude(res.character),
        )
    else:
        body["table"] = character_table(args.l, args.d)
    return EXIT_OK, body


_HANDLERS = {
    "certify": _cmd_certify,
    "ramify": _cmd_ramify,
    "monodromy": _cmd_monodromy,
    "density": _cmd_density,
    "omega": _cmd_omega,
    "sieve-sum": _cmd_sieve_sum,
    "sp": _cmd_sp,
    "chars": _cmd_chars,
}


def _render_text(payload, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(
            _render_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in payload
        )
    return f"{pad}{payload}"


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def run(argv: Sequence[str] | None = None) -> int:
    from .ffpoly import FactorizationError
    from .intpoly import PolynomialError
    from .sieve import WorkLimitExceeded
    from .symplectic import CapExceeded, ScaleLimitExceeded

    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _error("usage", str(exc), EXIT_USAGE)
    try:
        code, payload = _HANDLERS[args.command](args)
    except UsageError as exc:
        return _error("usage", str(exc), EXIT_USAGE)
    except PolynomialError as exc:
        return _error("parse", str(exc), EXIT_USAGE)
    except (WorkLimitExceeded, CapExceeded, ScaleLimitExceeded) as exc:
        return _error("limit", str(exc), EXIT_LIMIT)
    except (ValueError, FactorizationError, OSError) as exc:
        return _error("input", str(exc), EXIT_USAGE)

    if isinstance(payload, str):
        sys.stdout.write(payload)
        return code
    out = {"config": _config(args)}
    if not args.no_meta:
        out["meta"] = {"version": __version__, "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat()}
    out["result"] = payload
    if args.format == "text":
        sys.stdout.write(_render_text(out) + "\n")
    else:
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
