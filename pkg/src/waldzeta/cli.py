"""Command-line front end.

Every invocation writes one JSON document to stdout.  Exit status is 0 on
success, 2 when the input is malformed or violates an invariant (the JSON
then carries the violations), and 1 on internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, List, Optional

from .arith import coeff_to_json, ratfunc_to_json
from .archimedean import ArchDomainError, ArchParams, zeta_infinity
from .errors import ValidationError, WaldzetaError
from .global_assembly import GlobalConfig, global_product, validate, y_table
from .local_data import LocalSetup, SteinbergTwist
from .local_zeta import zeta_for_setup
from .verify import DEFAULT_SEED, run_suite
from .waldspurger import spherical_generating_series, spherical_values_recurrence, steinberg_table

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID = 0, 1, 2


class InputError(Exception):
    """Malformed command-line or file input (exit status 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _complex_arg(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _complex_json(z: complex) -> List[float]:
    return [float(z.real) + 0.0, float(z.imag) + 0.0]


def _read_config(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _ratfunc_json(f) -> dict:
    out = ratfunc_to_json(f)
    out["text"] = repr(f)
    return out


# ---------------------------------------------------------------------------
# Subcommands


def cmd_waldspurger(args) -> dict:
    setup = LocalSetup.from_json(_read_config(args.config))
    fld, rep, omega = setup.field, setup.rep, setup.omega
    if isinstance(rep, SteinbergTwist):
        table = steinberg_table(fld, rep, omega, max(args.max_m, 1))
        return {
            "kind": "steinberg",
            "normalization": table.normalization,
            "values": {str(label): coeff_to_json(v) for label, v in table.items_sorted()},
        }
    gen = spherical_generating_series(fld, rep, omega)
    values = gen.coefficients(args.max_m)
    rec = spherical_values_recurrence(fld, rep, omega, args.max_m)
    return {
        "kind": "spherical",
        "conductor": omega.conductor,
        "generating_function": _ratfunc_json(gen.gen),
        "A": [coeff_to_json(v) for v in values],
        "recurrence_agrees": values == rec,
    }


def cmd_local_zeta(args) -> dict:
    setup = LocalSetup.from_json(_read_config(args.config))
    res, direct, closed = zeta_for_setup(setup, args.order)
    return {
        "case": res.case,
        "closed_form": _ratfunc_json(res.closed_form),
        "l_numerator": _ratfunc_json(res.l_num),
        "l_denominator": _ratfunc_json(res.l_den),
        "y_factor": _ratfunc_json(res.y_factor),
        "order": args.order,
        "oracle_agrees": direct == closed,
    }


def cmd_arch_zeta(args) -> dict:
    p = ArchParams(args.ell, ell1=args.ell1, D=args.D)
    value = zeta_infinity(p, args.s)
    return {"ell": args.ell, "ell1": p.ell1, "ell2": p.ell2, "D": args.D, "s": _complex_json(args.s), "value": _complex_json(value)}


def cmd_global(args) -> dict:
    config = GlobalConfig.from_json(_read_config(args.config))
    violations = validate(config)
    if violations:
        raise ValidationError("invalid global configuration", violations)
    yt = y_table(config)
    return {
        "violations": [],
        "y_table": {str(p): _ratfunc_json(f) for p, f in sorted(yt.entries.items())},
        "value": _complex_json(global_product(config, args.s)),
        "prime_bound": config.prime_bound,
    }


def cmd_verify(args) -> dict:
    results = run_suite(args.seed)
    return {
        "seed": args.seed,
        "passed": all(r.passed for r in results),
        "checks": [r.to_json() for r in results],
    }


# ---------------------------------------------------------------------------
# Plumbing


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="waldzeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.set_defaults(func=fn)
        return p

    p = add("waldspurger", cmd_waldspurger, "values of the distinguished Waldspurger vector")
    p.add_argument("--config", required=True, help="local setup JSON")
    p.add_argument("--max-m", type=int, default=10)

    p = add("local-zeta", cmd_local_zeta, "local zeta integral, closed form and oracle check")
    p.add_argument("--config", required=True, help="local setup JSON with omega1, omega2")
    p.add_argument("--order", type=int, default=50)

    p = add("arch-zeta", cmd_arch_zeta, "archimedean zeta integral")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--s", type=_complex_arg, required=True, help="RE,IM")
    p.add_argument("--ell1", type=int, default=None)

    p = add("global", cmd_global, "validate a global configuration and evaluate the product")
    p.add_argument("--config", required=True)
    p.add_argument("--s", type=_complex_arg, default=complex(0.75))

    p = add("verify", cmd_verify, "run the invariant suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        if set(obj) >= {"a", "b", "c", "d"} and len(obj) == 4:
            yield prefix, " ".join(f"{k}={obj[k]}" for k in "abcd")
            return
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj) if isinstance(obj, list) else str(obj)


def render(obj, fmt: str) -> str:
    if fmt == "table":
        rows = list(_flatten(obj))
        width = max((len(k) for k, _ in rows), default=0)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)
    return json.dumps(obj, sort_keys=True)


def _glue_negative_s(argv: List[str]) -> List[str]:
    # "--s -1,0" would otherwise read -1,0 as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--s" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--s={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argv = _glue_negative_s(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_INVALID
    except InputError as exc:
        print(json.dumps({"error": str(exc), "violations": [str(exc)]}, sort_keys=True))
        print(f"waldzeta: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValidationError as exc:
        print(json.dumps({"error": str(exc), "violations": exc.violations}, sort_keys=True))
        print(f"waldzeta: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (WaldzetaError, ArchDomainError) as exc:
        print(json.dumps({"error": str(exc), "violations": [str(exc)]}, sort_keys=True))
        print(f"waldzeta: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # anything else is a bug
        print(json.dumps({"error": f"internal error: {type(exc).__name__}: {exc}"}, sort_keys=True))
        print(f"waldzeta: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    print(render(result, args.format))
    if args.command == "verify" and not result["passed"]:
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
