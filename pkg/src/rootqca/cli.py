"""Command-line entry point.

Exit codes: 0 when every verdict passes, 1 when a mathematical verdict
fails, 2 for usage or input errors, 3 when a search budget is exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import replace
from itertools import product

from .acceptance import run_all, suite_passed
from .central import exchange_identity_check, frobenius_check
from .discriminant import cluster_discriminant, compare_up_to_unit, scalar_power, torus_presentation
from .errors import BudgetExceeded, CoprimeViolated, NotEllCompatible, NotSkewSymmetrizable
from .exchange_graph import explore
from .kacmoody import CartanDatum, build_unipotent_seed_data, degree_identity_check, theorem_c_check
from .seeds import is_coprime, seed_from_json, seed_to_json, validate_seed
from .torus import DivisionBudget, SkewForm, TorusElement
from .weyl import WeylAlgebra, weyl_discriminant, weyl_seed

log = logging.getLogger("rootqca")

OK, FAILED, USAGE, BUDGET = 0, 1, 2, 3


class InputError(Exception):
    """Bad or unreadable input; maps to exit code 2."""


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _budget(args) -> DivisionBudget:
    return DivisionBudget(safety=args.safety, growth=args.growth)


def _load_seed(args):
    data = _load_json(args.seed)
    if args.l is not None:
        data = dict(data, l=args.l)
    try:
        seed = seed_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid seed file {args.seed}: {exc}") from exc
    return replace(seed, budget=_budget(args))


def _parse_word(text: str | None) -> tuple:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad word {text!r}: expected comma-separated integers") from exc


def _emit(args, report: dict, text: str) -> None:
    print(json.dumps(report, indent=2, default=str) if args.json else text)


# -- subcommands -----------------------------------------------------------------


def cmd_compat(args) -> int:
    data = _load_json(args.seed)
    ell = args.l if args.l is not None else data.get("l")
    try:
        seed = seed_from_json(dict(data, l=ell, d=None))
    except (NotEllCompatible, NotSkewSymmetrizable) as exc:
        _emit(args, {"check": "compat", "pass": False, "reason": str(exc)}, f"not compatible: {exc}")
        return FAILED
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid seed file {args.seed}: {exc}") from exc
    coprime = is_coprime(seed.ell, seed.d)
    if not coprime:
        print(f"warning: l={seed.ell} with d={seed.d} violates the coprime hypothesis", file=sys.stderr)
    report = validate_seed(seed)
    out = {"check": "compat", "pass": report.ok, "d": list(seed.d), "coprime": coprime, "failures": report.failures}
    _emit(args, out, f"D = diag{seed.d}; coprime: {coprime}; frame checks: {'ok' if report.ok else report.failures}")
    return OK if report.ok else FAILED


def cmd_mutate(args) -> int:
    seed = _load_seed(args)
    word = _parse_word(args.word)
    bad = [k for k in word if k not in seed.ex]
    if bad:
        raise InputError(f"positions {bad} are not mutable (mutable: {list(seed.ex)})")
    result = seed.mutate_word(word)
    out = seed_to_json(result)
    text = "\n".join(f"x{j}: {v}" for j, v in enumerate(result.frame))
    _emit(args, out, text)
    return OK


def cmd_explore(args) -> int:
    seed = _load_seed(args)
    graph = explore(seed, args.max_nodes, args.max_depth, strict=False)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(graph.to_dot())
    _emit(args, graph.summary(), f"{len(graph.nodes)} nodes, {len(graph.edges)} edges, complete: {graph.complete}")
    return OK if graph.complete else BUDGET


def cmd_frobenius(args) -> int:
    seed = _load_seed(args)
    if args.word is not None:
        words = [_parse_word(args.word)]
    else:
        words = [w for n in range(args.max_length + 1) for w in product(seed.ex, repeat=n)]
    cache: dict = {}
    failures = [list(w) for w in words if not frobenius_check(seed, w, cache).passed]
    exchange = {k: exchange_identity_check(seed, k) for k in seed.ex}
    records = [
        {"check": "exchange", "k": k, "pass": c.passed, "residual": str(c.residual)} for k, c in exchange.items()
    ]
    ok = not failures and all(c.passed for c in exchange.values())
    out = {"check": "frobenius", "words": len(words), "failures": failures, "exchange": records, "pass": ok}
    _emit(args, out, f"{len(words)} words, {len(failures)} failures; exchange identity: "
          + ", ".join(f"{k}: {c.passed}" for k, c in exchange.items()))
    return OK if ok else FAILED


def _disc_report(result, expected, verdict, extra=None) -> dict:
    out = {
        "discriminant": str(result.discriminant),
        "expected": str(expected),
        "verdict": verdict,
        "exponents": result.exponents,
        "runtime": round(result.seconds, 3),
    }
    out.update(extra or {})
    return out


def cmd_disc(args) -> int:
    desc = _load_json(args.descriptor) if args.descriptor else {"preset": args.preset, "N": args.n, "l": args.l}
    preset = desc.get("preset")
    ell = int(desc.get("l") or 3)
    if preset == "torus":
        n = int(desc.get("N") or 1)
        lam = desc.get("lambda") or [[0] * n for _ in range(n)]
        form = SkewForm.from_integer(ell, lam)
        result = cluster_discriminant(torus_presentation(form, inverted=desc.get("inv", ())))
        expected = TorusElement.constant(form, scalar_power(ell, n))
        expected = expected * TorusElement.monomial(form, [ell ** n * (ell - 1)] * n)
        verdict = compare_up_to_unit(result.discriminant, expected).ok
        out = _disc_report(result, expected, verdict)
    elif preset == "weyl":
        report = weyl_discriminant(WeylAlgebra(int(desc.get("N") or 1), ell, desc.get("Q")))
        verdict = report.verdict
        out = _disc_report(report.result, report.expected, verdict, {"observed_total_exponents": report.observed_exponents})
    elif preset == "unipotent":
        datum = CartanDatum.from_json(desc["cartan"])
        check = theorem_c_check(datum, desc["word"], ell, allow_stretch=args.full_disc)
        verdict = check.verdict
        out = _disc_report(check.result, check.expected, verdict, {"observed_total_exponents": check.observed_exponents})
    else:
        raise InputError(f"unknown preset {preset!r}; use torus, weyl or unipotent")
    _emit(args, out, "\n".join(f"{k}: {v}" for k, v in out.items()))
    return OK if verdict else FAILED


def cmd_weyl(args) -> int:
    q = _load_json(args.Q) if args.Q else None
    try:
        algebra = WeylAlgebra(args.n, args.l, q)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    seed_report = weyl_seed(algebra)
    out = {
        "lambda_observed": seed_report.lambda_observed,
        "lambda_block_delta": seed_report.delta,
        "bmatrix_block": seed_report.bmatrix_block,
        "block_compatible": seed_report.block_compatible,
        "bmatrix": seed_report.bmatrix,
        "frozen_units": seed_report.frozen_units,
        "compatible": seed_report.compatible,
        "d": seed_report.d,
        "notes": seed_report.notes,
    }
    ok = seed_report.compatible
    if seed_report.seed is not None:
        graph = explore(seed_report.seed, strict=False)
        out["graph"] = graph.summary()
        ok = ok and graph.complete and len(graph.nodes) == 2 ** args.n
    if not args.no_disc:
        disc = weyl_discriminant(algebra)
        out["discriminant"] = _disc_report(disc.result, disc.expected, disc.verdict,
                                           {"observed_total_exponents": disc.observed_exponents, "reason": disc.reason})
        ok = ok and disc.verdict
    _emit(args, out, "\n".join(f"{k}: {v}" for k, v in out.items()))
    return OK if ok else FAILED


def cmd_unip(args) -> int:
    datum = CartanDatum.from_json(_load_json(args.cartan))
    word = _parse_word(args.word)
    data = build_unipotent_seed_data(datum, word)
    out = {
        "lambda": data.lam,
        "lambda_closed_form": data.lam_closed_form,
        "B": data.bmatrix,
        "ex": list(data.ex),
        "support": [i + 1 for i in data.word.support],
        "D": list(data.d),
        "kappa": data.kappa,
        "strictly_compatible": data.strictly_compatible,
        "a_doubled": {f"{j},{k}": v for (j, k), v in data.a_doubled.items()},
        "degree_identity": degree_identity_check(datum, word),
    }
    ok = out["degree_identity"]
    if args.l is not None:
        check = theorem_c_check(datum, word, args.l, allow_stretch=args.full_disc)
        out["discriminant"] = _disc_report(check.result, check.expected, check.verdict,
                                           {"observed_total_exponents": check.observed_exponents})
        ok = ok and check.verdict
    _emit(args, out, "\n".join(f"{k}: {v}" for k, v in out.items()))
    return OK if ok else FAILED


def cmd_selftest(args) -> int:
    results = run_all(include_stretch=args.full_disc, rng_seed=args.rng_seed)
    if args.json:
        print(json.dumps([r.__dict__ for r in results], indent=2))
    else:
        for r in results:
            print(r.line())
    return OK if suite_passed(results) else FAILED


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootqca", description="Root-of-unity quantum cluster algebra engine")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--threads", type=int, default=os.cpu_count(), help="accepted for compatibility; work runs in one thread")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def seed_command(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("seed", help="seed JSON file")
        p.add_argument("--l", type=int, help="override the order of the root of unity")
        p.add_argument("--safety", type=int, default=4, help="division iteration safety factor")
        p.add_argument("--growth", type=int, default=64, help="division remainder growth bound")
        p.set_defaults(func=fn)
        return p

    seed_command("compat", cmd_compat, "check l-compatibility and report D")
    p = seed_command("mutate", cmd_mutate, "apply a mutation word (0-based positions)")
    p.add_argument("--word", required=True)
    p = seed_command("explore", cmd_explore, "explore the exchange graph")
    p.add_argument("--max-nodes", type=int, default=1000)
    p.add_argument("--max-depth", type=int, default=50)
    p.add_argument("--dot", help="write the graph in DOT format")
    p = seed_command("frobenius", cmd_frobenius, "compare l-th powers with classical mutation")
    p.add_argument("--word")
    p.add_argument("--max-length", type=int, default=5)

    p = sub.add_parser("disc", help="discriminant of a preset presentation")
    p.add_argument("descriptor", nargs="?", help="JSON descriptor {preset, N, l, ...}")
    p.add_argument("--preset", choices=("torus", "weyl", "unipotent"), default="torus")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--l", type=int, default=3)
    p.add_argument("--full-disc", action="store_true")
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("weyl", help="quantized Weyl algebra seed and discriminant")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--l", type=int, default=3)
    p.add_argument("--Q", help="JSON file with the skew-symmetric matrix Q")
    p.add_argument("--no-disc", action="store_true", help="skip the discriminant")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("unip", help="unipotent cell seed data for a reduced word")
    p.add_argument("--cartan", required=True, help='JSON file {"A": [[...]], "d": [...]}')
    p.add_argument("--word", required=True, help="1-based letters, e.g. 1,2,1")
    p.add_argument("--l", type=int, help="also run the discriminant check at this order")
    p.add_argument("--full-disc", action="store_true", help="allow the long (i, j, i) discriminant")
    p.set_defaults(func=cmd_unip)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--full-disc", action="store_true", help="include the stretch criterion")
    p.add_argument("--rng-seed", type=int, default=0, help="seed for the randomised criteria")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except CoprimeViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except (NotEllCompatible, NotSkewSymmetrizable, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
