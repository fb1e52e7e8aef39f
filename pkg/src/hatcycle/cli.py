"""Command-line interface.

Exit codes: ``verify`` returns 0 for a winning strategy and 1 for a losing
one; usage and input errors return 2 with a message on stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructors, core, prover, structure, verifier
from .dot import export_dot
from .errors import BudgetExceeded, HatCycleError
from .general import (GeneralStrategy, VisibilityGame, min_over_assignments,
                      DEFAULT_BUDGET as GENERAL_BUDGET)


class UsageError(Exception):
    pass


def _budget(default: int) -> int:
    raw = os.environ.get("HATCYCLE_BUDGET")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"HATCYCLE_BUDGET must be an integer, got {raw!r}")


def _load_json(path: str | None):
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path or 'stdin'}: {exc}")


def _load_strategy(path):
    data = _load_json(path)
    try:
        return core.strategy_from_dict(data)
    except (HatCycleError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed strategy: {exc}")


def _emit(obj, out=None):
    text = json.dumps(obj, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args) -> int:
    f = _load_strategy(args.strategy)
    v = verifier.verify(f)
    _emit(v.to_dict())
    return 0 if v.winning else 1


def cmd_construct(args) -> int:
    n, family = args.n, args.family
    if family is None:
        f = constructors.construct_winning(n)
        if f is None:
            raise UsageError(f"no winning strategy exists for n = {n}; pick --family")
    elif family == "chi3":
        f = constructors.chi3_strategy(n)
    elif family == "chi2":
        f = constructors.chi2_strategy(n)
    else:
        if n == 3:
            f = constructors.algebraic_c3()
        elif n == 4:
            f = constructors.algebraic_c4()
        else:
            raise UsageError("the algebraic family exists for n = 3 and n = 4 only")
    _emit(core.strategy_to_dict(f), args.out)
    return 0


def cmd_classify(args) -> int:
    f = _load_strategy(args.strategy)
    ells = [[[list(x) for x in row] for row in structure.ell_table(f, k)] for k in range(f.n)]
    c = structure.colour_edges(f)
    out = {"n": f.n, "ell": ells, "balanced": c.balanced}
    if c.balanced:
        chi = structure.characteristic(f)
        out["colouring"] = c.to_dict()["boundaries"]
        out["chi"] = {"per_boundary": list(chi.per_boundary), "constant": chi.constant}
        out["lemma_violations"] = [{"part": v.part, "detail": v.detail}
                                   for v in structure.lemma2_diagnostics(f, c)]
    else:
        e = c.witness
        out["not_balanced"] = {"layer": e.layer, "left": e.left, "right": e.right,
                               "ell_minus": c.ell_minus, "ell_plus": c.ell_plus}
    _emit(out)
    return 0


def cmd_count(args) -> int:
    f = _load_strategy(args.strategy)
    d = verifier.defeat_count(f)
    p = verifier.win_probability_fixed(f)
    _emit({"defeat_count": d, "assignments": 3 ** f.n, "win_probability": str(p)})
    return 0


def cmd_prove(args) -> int:
    budget = _budget(prover.DEFAULT_TABLE_BUDGET)
    try:
        cert = prover.prove_nonexistence(args.n, table_budget=budget, time_limit=args.time_limit,
                                         max_n=args.max_n)
    except BudgetExceeded as exc:
        if exc.partial is not None:
            _emit(exc.partial.to_dict(), args.out)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(cert.to_dict(), args.out)
    return 0


def cmd_general(args) -> int:
    game = VisibilityGame.from_dict(_load_json(args.game))
    strategy = GeneralStrategy.from_dict(game, _load_json(args.strategy))
    value = min_over_assignments(game, strategy, budget=_budget(GENERAL_BUDGET))
    _emit({"min_correct": value, "winning": value > 0})
    return 0


def cmd_export_dot(args) -> int:
    f = _load_strategy(args.strategy)
    c = structure.colour_edges(f)
    if not c.balanced:
        raise UsageError("strategy is not balanced; no colouring to draw")
    text = export_dot(f, c)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hatcycle", description="Three-colour hat guessing on cycles. "
                "Colours are 0, 1, 2 in all JSON.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", help="decide winning/losing (exit 0/1)")
    s.add_argument("--strategy", help="strategy JSON path; stdin if omitted")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("construct", help="write a strategy JSON")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--family", choices=["chi3", "chi2", "algebraic"])
    s.add_argument("--out")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("classify", help="continuation counts, colouring, characteristic")
    s.add_argument("--strategy")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("count", help="exact defeat count and win probability")
    s.add_argument("--strategy")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("prove", help="certificate that no winning strategy exists")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--max-n", type=int, default=prover.DEFAULT_MAX_N)
    s.add_argument("--time-limit", type=float)
    s.add_argument("--out")
    s.set_defaults(func=cmd_prove)

    s = sub.add_parser("general", help="minimum correct guesses in a general game")
    s.add_argument("--game", required=True)
    s.add_argument("--strategy", required=True)
    s.set_defaults(func=cmd_general)

    s = sub.add_parser("export-dot", help="DOT drawing of the coloured graph")
    s.add_argument("--strategy")
    s.add_argument("--out")
    s.set_defaults(func=cmd_export_dot)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (HatCycleError, KeyError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); stop quietly
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
