"""Command-line interface.

Subcommands: outcome, simplify, compare, sh solve, td2 solve, play,
serve.  Exit status is 0 on success, 2 on parse errors, 3 on resource
limits; errors go to stderr as one JSON line with a machine-readable
code.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .arena import SumArena, add_all, arena_moves
from .errors import CRGamesError, ParseError, ResourceLimitError
from .notation import format_position, format_terms, parse_terms
from .ordering import compare, default_family, family_names, get_family
from .position import Position
from .service import (
    GameService,
    parse_position_payload,
    plan_payload,
    state_to_obj,
    _status,
    legal_left_moves,
    play_round,
    state_score,
)
from .simplehot import SHSolution, sh_sum_from_components, sh_value_oracle, solve_sh
from .solver import default_solver
from .reduce import simplify
from .td2 import TD2Move, TD2Position, parse_td2, solve_td2, td2_outcome_oracle


def _read_source(arg: str) -> str:
    if os.path.exists(arg) and os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


def _parse_sum_expr(text: str) -> Position:
    return add_all(parse_terms(text))


def _solution_obj(solution: SHSolution) -> dict:
    return {
        "score": solution.score,
        "outcome": str(solution.outcome),
        "base": solution.base,
        "leftOrder": list(solution.left_order),
        "normalized": [[g.a, g.b, g.c] for g in solution.normalized],
        "auxGraph": {
            "n": solution.aux_graph.n,
            "edges": [list(e) for e in solution.aux_graph.edges],
        },
        "matching": [list(p) for p in solution.right_plan.pairs],
        "weight": solution.right_plan.total_weight,
        "trace": [list(t) for t in solution.trace],
    }


def cmd_outcome(args) -> int:
    state = parse_position_payload(_read_source(args.position))
    if isinstance(state, TD2Position):
        from .td2 import to_components

        result = default_solver().outcome(to_components(state))
    else:
        result = default_solver().outcome(state)
    print(str(result))
    return 0


def cmd_simplify(args) -> int:
    g = _parse_sum_expr(args.expr)
    print(format_position(simplify(g)))
    return 0


def cmd_compare(args) -> int:
    a = _parse_sum_expr(args.expr_a)
    b = _parse_sum_expr(args.expr_b)
    family = get_family(args.family) if args.family else default_family()
    verdict = compare(a, b, family)
    line = f"{format_position(a)} {verdict.describe()} {format_position(b)}"
    if verdict.witness is not None:
        line += f" | witness: {format_position(verdict.witness)}"
    print(line)
    return 0


def cmd_sh_solve(args) -> int:
    terms = parse_terms(args.sum)
    sh = sh_sum_from_components(terms)
    if sh is None:
        raise ParseError("sh solve needs a sum of integers and simple hot games {a|b|c}")
    solution = solve_sh(sh)
    payload = _solution_obj(solution)
    if args.oracle:
        value = sh_value_oracle(sh)
        payload["oracle"] = value
        payload["oracleAgrees"] = value == solution.score
    if args.dot:
        from .matching import dot_export

        labels = [str(g) for g in solution.normalized]
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot_export(solution.aux_graph, solution.right_plan, labels) + "\n")
    print(json.dumps(payload, indent=2))
    return 0 if not args.oracle or payload["oracleAgrees"] else 1


def cmd_td2_solve(args) -> int:
    position = parse_td2(args.rows)
    solution = solve_td2(position)
    payload = _solution_obj(solution.solution)
    payload["rows"] = [[r.p, r.q] for r in position.rows]
    payload["rowPlan"] = [list(t) for t in solution.row_plan]
    payload["recommendedMoves"] = [
        {
            "leftRow": lr,
            "left": vars(solution.left_move_for(lr)),
            "rightRow": rr,
            "right": vars(solution.response_in(rr)),
        }
        for lr, rr, _ in solution.row_plan
    ]
    if args.oracle:
        oracle = td2_outcome_oracle(position)
        payload["oracleOutcome"] = str(oracle)
        payload["oracleAgrees"] = str(oracle) == str(solution.outcome)
    print(json.dumps(payload, indent=2))
    return 0 if not args.oracle or payload["oracleAgrees"] else 1


def _print_state(state) -> None:
    obj = state_to_obj(state)
    print(f"state: {obj['text']}")
    score = state_score(state)
    if score is not None:
        print(f"score if both play optimally: {score}")


def _parse_play_move(state, line: str):
    parts = line.split()
    if isinstance(state, TD2Position):
        if len(parts) != 3:
            raise ParseError("TD2 move: <row> <domino> <left|right>")
        direction = {"l": "left", "r": "right"}.get(parts[2], parts[2])
        return TD2Move(int(parts[0]), "black", int(parts[1]), direction)
    if len(parts) == 1:
        return (int(parts[0]), 0)
    if len(parts) == 2:
        return (int(parts[0]), int(parts[1]))
    raise ParseError("sum move: <component> [<moveIndex>]")


def cmd_play(args) -> int:
    state = parse_position_payload(_read_source(args.position))
    print("You are Left; the robot answers as Right within the same round.")
    if isinstance(state, TD2Position):
        print("Move syntax: <row> <domino> <left|right>  (rows and dominoes as shown)")
    else:
        print("Move syntax: <component> [<moveIndex>]")
    print("Commands: 'hint', 'quit'.")
    while True:
        _print_state(state)
        status = _status(state)
        if status != "ongoing":
            print({"L": "Left wins.", "R": "Right (robot) wins.", "D": "Draw."}[status])
            return 0
        print(f"legal Left moves: {json.dumps(legal_left_moves(state))}")
        try:
            line = input("left> ").strip()
        except EOFError:
            return 0
        if line in ("q", "quit", "exit"):
            return 0
        if line == "hint":
            if isinstance(state, TD2Position):
                plan = solve_td2(state)
                if plan.row_plan:
                    lr = plan.row_plan[0][0]
                    print(f"hint: {vars(plan.left_move_for(lr))}")
                else:
                    print("hint: no hot rows; any move")
            else:
                print(f"hint: {default_solver().best_left_move(state)}")
            continue
        try:
            move = _parse_play_move(state, line)
            state, right = play_round(state, move)
        except CRGamesError as exc:
            print(f"illegal: {exc}")
            continue
        if isinstance(state, TD2Position):
            print(f"robot: {vars(right)}")
        else:
            print(f"robot: component {right[0]}, move {right[1]}")
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(host=args.host, port=args.port, log_path=args.log)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crgames",
        description="Solve, simplify, compare, and play same-round combinatorial games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("outcome", help="outcome class (L/D/R) of an expression or file")
    p.add_argument("position", help="expression, TD2 rows, JSON, or a file path")
    p.set_defaults(fn=cmd_outcome)

    p = sub.add_parser("simplify", help="reduce an expression, preserving equality")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_simplify)

    p = sub.add_parser("compare", help="order two expressions (sound rules + bounded search)")
    p.add_argument("expr_a")
    p.add_argument("expr_b")
    p.add_argument("--family", choices=family_names(), default=None)
    p.set_defaults(fn=cmd_compare)

    p_sh = sub.add_parser("sh", help="simple hot game commands")
    sh_sub = p_sh.add_subparsers(dest="sh_command", required=True)
    p = sh_sub.add_parser("solve", help="solve a sum of simple hot games and integers")
    p.add_argument("sum")
    p.add_argument("--dot", metavar="FILE", default=None, help="write the cross-response graph as DOT")
    p.add_argument("--oracle", action="store_true", help="cross-check against the brute-force oracle")
    p.set_defaults(fn=cmd_sh_solve)

    p_td2 = sub.add_parser("td2", help="toppling-dominoes commands")
    td2_sub = p_td2.add_subparsers(dest="td2_command", required=True)
    p = td2_sub.add_parser("solve", help="solve rows (p,q)+(p,q)+...")
    p.add_argument("rows")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(fn=cmd_td2_solve)

    p = sub.add_parser("play", help="interactive play against the robot")
    p.add_argument("position", help="TD2 rows or a sum expression")
    p.set_defaults(fn=cmd_play)

    p = sub.add_parser("serve", help="start the JSON HTTP play service")
    p.add_argument("--port", type=int, default=8040)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--log", metavar="FILE", default=None, help="append-only JSON-lines session log")
    p.set_defaults(fn=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 3
    except CRGamesError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
