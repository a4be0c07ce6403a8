"""Command line interface.

Exit codes: 0 primitive / synchronizing / success, 1 negative verdict,
2 usage or parse error, 3 resource limit hit (undecided).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import documents
from .automata import (Automaton, NotAnAutomaton, bound_f_default, construct_positive_product,
                       cerny_automaton, cubic_product_bound, extract_automaton, is_automaton,
                       is_synchronizing, positive_product_bound, shortest_sync_word)
from .core import WordError, format_word, parse_word
from .generators import (DimacsError, extremal_primitive_set, parse_dimacs, prime_cycle_set,
                         sat_gadgets)
from .pvstruct import AssumptionViolated, Outcome, check_assumption, decide_primitive_nz
from .semigroup import (LimitExceeded, ResourceLimits, certify_not_primitive_closure,
                        decide_primitive_exact)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _limits(args) -> ResourceLimits:
    timeout = None if args.timeout_ms is None else args.timeout_ms / 1000.0
    return ResourceLimits(max_states=args.max_states, max_depth=args.max_depth, timeout=timeout)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": 1, **payload}, sort_keys=True))
    else:
        print(text)


def _load(path):
    try:
        return documents.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _block_text(p) -> str:
    return " ".join("{" + ",".join(str(i) for i in sorted(b)) + "}" for b in p.blocks)


def cmd_decide(args) -> int:
    s = _load(args.file)
    limits = _limits(args)
    if args.mode == "nz-auto" and check_assumption(s):
        v = decide_primitive_nz(s)
        if v.outcome is Outcome.PRIMITIVE:
            w = construct_positive_product(s, limits)
            _emit(args, {"command": "decide", "method": "nz", "primitive": True,
                         "length": len(w), "witness": list(w), "shortest": False},
                  f"PRIMITIVE len={len(w)} word={format_word(w)}")
            return EXIT_OK
        blocks = [sorted(b) for b in v.partition.blocks]
        if v.outcome is Outcome.REDUCIBLE:
            n1, n2 = ("{" + ",".join(map(str, b)) + "}" for b in blocks)
            text = f"NOT PRIMITIVE certificate=reducible N1={n1} N2={n2}"
        else:
            text = (f"NOT PRIMITIVE certificate=block-permutation k={v.partition.k} "
                    f"partition={_block_text(v.partition)}")
        _emit(args, {"command": "decide", "method": "nz", "primitive": False,
                     "certificate": v.outcome.value, "blocks": blocks,
                     "block_maps": None if v.block_maps is None
                     else [[j + 1 for j in sigma] for sigma in v.block_maps]}, text)
        return EXIT_NO
    verdict = decide_primitive_exact(s, limits)
    if verdict.primitive:
        w = verdict.witness
        _emit(args, {"command": "decide", "method": "exact", "primitive": True,
                     "length": len(w), "witness": list(w), "shortest": True,
                     "explored_states": verdict.explored_states},
              f"PRIMITIVE len={len(w)} word={format_word(w)}")
        return EXIT_OK
    closure = certify_not_primitive_closure(s, limits)
    _emit(args, {"command": "decide", "method": "exact", "primitive": False,
                 "certificate": "closure", "closure_size": len(closure)},
          f"NOT PRIMITIVE certificate=closure size={len(closure)}")
    return EXIT_NO


def cmd_shortest(args) -> int:
    s = _load(args.file)
    verdict = decide_primitive_exact(s, _limits(args))
    if not verdict.primitive:
        _emit(args, {"command": "shortest", "length": None, "witness": None}, "INF")
        return EXIT_NO
    w = verdict.witness
    _emit(args, {"command": "shortest", "length": len(w), "witness": list(w)},
          f"{len(w)}\nword={format_word(w)}")
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_gen(args) -> int:
    family = args.family
    try:
        if family == "cerny":
            s = cerny_automaton(int(args.param)).base
            text = documents.dumps(s, "automaton", ["a", "b"])
        elif family == "extremal":
            s = extremal_primitive_set(int(args.param))
            text = documents.dumps(s, "matrix-set", ["a", "b"])
        elif family == "primes":
            s = prime_cycle_set(_int_list(args.param))
            text = documents.dumps(s, "matrix-set", ["G1", "G2", "G3", "G4"])
        else:
            try:
                with open(args.param) as fh:
                    f = parse_dimacs(fh.read())
            except OSError as exc:
                raise UsageError(f"cannot read {args.param}: {exc.strerror}") from None
            s, _ = sat_gadgets(f)
            text = documents.dumps(s, "matrix-set", ["G1", "G2", "G3"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_automaton(args) -> int:
    if args.sub == "extract":
        s = _load(args.file)
        w = parse_word(args.word)
        auto, pos_word = extract_automaton(s, w)
        ok = is_synchronizing(auto)
        text = documents.dumps(auto.base, "automaton")
        status = f"{'SYNCHRONIZING' if ok else 'NOT SYNCHRONIZING'} word={format_word(pos_word)}"
        if args.json:
            _emit(args, {"command": "automaton-extract", "synchronizing": ok,
                         "word": list(pos_word), "automaton": json.loads(text)}, "")
        elif args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
            print(status)
        else:
            sys.stdout.write(text)
            print(status, file=sys.stderr)
        return EXIT_OK if ok else EXIT_NO
    s = _load(args.file)
    if not is_automaton(s):
        raise UsageError("document is not an automaton (each row needs exactly one 1)")
    auto = Automaton(s)
    if args.sub == "check":
        ok = is_synchronizing(auto)
        _emit(args, {"command": "automaton-check", "synchronizing": ok},
              "SYNCHRONIZING" if ok else "NOT SYNCHRONIZING")
        return EXIT_OK if ok else EXIT_NO
    res = shortest_sync_word(auto, _limits(args))
    if not res.synchronizing:
        _emit(args, {"command": "automaton-sync-word", "synchronizing": False}, "NOT SYNCHRONIZING")
        return EXIT_NO
    _emit(args, {"command": "automaton-sync-word", "synchronizing": True,
                 "length": len(res.word), "word": list(res.word), "target_state": res.target_state},
          f"len={len(res.word)} word={format_word(res.word)} target={res.target_state}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError("n must be positive")
    f = bound_f_default(n)
    bound = positive_product_bound(n)
    cubic = cubic_product_bound(n)
    payload = {"command": "bounds", "n": n, "f": f, "bound": bound,
               "cubic": str(cubic), "cubic_float": float(cubic),
               "cerny": (n - 1) ** 2, "extremal": n * (n - 1)}
    _emit(args, payload,
          f"n={n} f={f} bound={bound} cubic={cubic} ({float(cubic):g}) "
          f"cerny={(n - 1) ** 2} extremal={n * (n - 1)}")
    return EXIT_OK


def _add_limits(p):
    p.add_argument("--max-states", type=int, default=10**7)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--timeout-ms", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="primset",
                                     description="Primitivity of sets of nonnegative matrices.")
    parser.add_argument("--json", action="store_true", help="emit one JSON object")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide primitivity")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--nz-auto", dest="mode", action="store_const", const="nz-auto")
    p.set_defaults(mode="nz-auto", func=cmd_decide)
    _add_limits(p)

    p = sub.add_parser("shortest", help="length of the shortest positive product")
    p.add_argument("file")
    _add_limits(p)
    p.set_defaults(func=cmd_shortest)

    p = sub.add_parser("gen", help="write an instance document")
    p.add_argument("family", choices=["cerny", "extremal", "primes", "sat"])
    p.add_argument("param", help="n, comma-separated cycle lengths, or a DIMACS file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("automaton", help="synchronizing automata")
    asub = p.add_subparsers(dest="sub", required=True)
    q = asub.add_parser("check")
    q.add_argument("file")
    q = asub.add_parser("sync-word")
    q.add_argument("file")
    _add_limits(q)
    q = asub.add_parser("extract")
    q.add_argument("file")
    q.add_argument("--word", required=True)
    q.add_argument("--out")
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("bounds", help="length bounds for dimension n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_bounds)

    # allow --json after the subcommand too
    for action in sub.choices.values():
        action.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    for action in asub.choices.values():
        action.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LimitExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, documents.DocumentError, DimacsError, WordError,
            AssumptionViolated, NotAnAutomaton, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
