"""JSON-over-HTTP play service: sessions of human (Left) vs robot (Right).

Endpoints (bodies are application/json):

    POST   /games          {"position": <text or object>} -> {id, state, legalLeftMoves}
    GET    /games/{id}     -> full session
    POST   /games/{id}/move {"leftMove": {...}} -> {rightResponse, newState, status, delta}
    POST   /eval           {"position": ...} -> {outcome, score?, principal}
    GET    /games/{id}/plan -> {auxGraph, matching, leftOrder, ...} or 409
    DELETE /games/{id}     -> 204

The robot always plays Right.  Responses are deterministic: fixed
tie-breaking, sequential session ids, and no timestamps in payloads.
Sessions are in-memory; an optional JSON-lines log records one event
per line.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any

from .arena import SumArena, arena_moves, arena_round
from .errors import CRGamesError, IllegalMoveError, ParseError
from .notation import (
    format_position,
    format_terms,
    parse_terms,
    position_from_obj,
    position_to_obj,
)
from .position import Outcome, Position
from .solver import default_solver
from .td2 import (
    TD2Move,
    TD2Position,
    TD2Row,
    apply_round,
    best_right_response_td2,
    format_td2,
    legal_moves,
    parse_td2,
    solve_td2,
    to_components,
)

GameState = Any  # SumArena | TD2Position


def parse_position_payload(payload: Any) -> GameState:
    """Accept the documented position forms (text or JSON) as a game state."""
    if isinstance(payload, str):
        text = payload.strip()
        if not text:
            raise ParseError("empty position")
        if text.startswith("("):
            return parse_td2(text)
        if text.startswith(("{\"", "[", "{ \"")):
            return parse_position_payload(json.loads(text))
        return SumArena(parse_terms(text))
    if isinstance(payload, dict):
        if payload.get("kind") == "td2" or "td2" in payload:
            rows = payload.get("td2", payload.get("rows"))
            if not isinstance(rows, list):
                raise ParseError('"td2" must hold a list of [p, q] rows')
            return TD2Position(TD2Row(int(p), int(q)) for p, q in rows)
        if payload.get("kind") == "sum":
            comps = payload.get("components")
            if not isinstance(comps, list):
                raise ParseError('"components" must be a list')
            return SumArena(position_from_obj(o) for o in comps)
        if "sum" in payload:
            if not isinstance(payload["sum"], list):
                raise ParseError('"sum" must hold a list')
            return SumArena(position_from_obj(o) for o in payload["sum"])
        return SumArena([position_from_obj(payload)])
    raise ParseError(f"cannot interpret position payload of type {type(payload).__name__}")


def state_to_obj(state: GameState) -> dict:
    if isinstance(state, TD2Position):
        return {
            "kind": "td2",
            "rows": [[r.p, r.q] for r in state.rows],
            "text": format_td2(state),
        }
    return {
        "kind": "sum",
        "components": [position_to_obj(g) for g in state.components],
        "text": format_terms(list(state.components)),
    }


def legal_left_moves(state: GameState) -> list[dict]:
    if isinstance(state, TD2Position):
        return [
            {"row": m.row, "domino": m.index, "direction": m.direction}
            for m in legal_moves(state, "left")
        ]
    moves, _ = arena_moves(state)
    out = []
    for ci, mi in moves:
        target = state.components[ci].left_options[mi]
        out.append({"component": ci, "move": mi, "target": format_position(target)})
    return out


def _status(state: GameState) -> str:
    if isinstance(state, TD2Position):
        has_left = any(r.p for r in state.rows)
        has_right = any(r.q for r in state.rows)
    else:
        has_left = any(c.left_options for c in state.components)
        has_right = any(c.right_options for c in state.components)
    if has_left and has_right:
        return "ongoing"
    if has_left:
        return "L"
    if has_right:
        return "R"
    return "D"


def state_score(state: GameState) -> int | None:
    if isinstance(state, TD2Position):
        return solve_td2(state).score
    return default_solver().score(state)


def _parse_left_move(state: GameState, payload: Any):
    if not isinstance(payload, dict):
        raise IllegalMoveError("leftMove must be an object", side="left")
    if isinstance(state, TD2Position):
        try:
            return TD2Move(
                row=int(payload["row"]),
                color="black",
                index=int(payload.get("domino", payload.get("index"))),
                direction=payload["direction"],
            )
        except (KeyError, TypeError, ValueError):
            raise IllegalMoveError(
                "TD2 left move needs integer 'row', 'domino' and a 'direction'",
                side="left",
            ) from None
    try:
        return (int(payload["component"]), int(payload.get("move", 0)))
    except (KeyError, TypeError, ValueError):
        raise IllegalMoveError(
            "left move needs integer 'component' and 'move'", side="left"
        ) from None


def _move_obj(state: GameState, move) -> dict:
    if isinstance(state, TD2Position):
        return {
            "row": move.row,
            "color": move.color,
            "domino": move.index,
            "direction": move.direction,
        }
    ci, mi = move
    return {"component": ci, "move": mi}


def play_round(state: GameState, left) -> tuple[GameState, Any]:
    """Apply the human's Left move and the robot's deterministic reply."""
    if isinstance(state, TD2Position):
        right = best_right_response_td2(state, left)
        return apply_round(state, left, right), right
    right = default_solver().best_right_response(state, left)
    return arena_round(state, left, right), right


def plan_payload(state: GameState) -> dict | None:
    """Matching plan for simple-hot / TD2 shaped states, else None."""
    from .matching import matching_to_obj
    from .simplehot import sh_sum_from_components, solve_sh

    if isinstance(state, TD2Position):
        solution = solve_td2(state).solution
    else:
        sh = sh_sum_from_components(state.components)
        if sh is None:
            return None
        solution = solve_sh(sh)
    payload = matching_to_obj(solution.aux_graph, solution.right_plan)
    payload.update(
        {
            "leftOrder": list(solution.left_order),
            "normalized": [[g.a, g.b, g.c] for g in solution.normalized],
            "base": solution.base,
            "score": solution.score,
            "outcome": str(solution.outcome),
        }
    )
    return payload


class PlaySession:
    def __init__(self, session_id: str, state: GameState):
        self.id = session_id
        self.initial_state = state
        self.state = state
        self.history: list[dict] = []
        self.lock = threading.Lock()

    @property
    def status(self) -> str:
        return _status(self.state)

    def to_obj(self) -> dict:
        return {
            "id": self.id,
            "state": state_to_obj(self.state),
            "initialState": state_to_obj(self.initial_state),
            "history": self.history,
            "status": self.status,
            "legalLeftMoves": legal_left_moves(self.state),
        }


class GameService:
    """Transport-independent request handling (unit-testable)."""

    def __init__(self, log_path: str | None = None):
        self._sessions: dict[str, PlaySession] = {}
        self._lock = threading.Lock()
        self._counter = 0
        self._log_path = log_path
        self._log_lock = threading.Lock()

    def _log(self, session_id: str, event: str, payload: Any) -> None:
        if not self._log_path:
            return
        line = json.dumps(
            {"id": session_id, "event": event, "payload": payload},
            separators=(",", ":"),
        )
        with self._log_lock, open(self._log_path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")

    def _session(self, session_id: str) -> PlaySession | None:
        with self._lock:
            return self._sessions.get(session_id)

    # Each handler returns (http_status, body | None).

    def create_game(self, body: Any) -> tuple[int, Any]:
        if not isinstance(body, dict) or "position" not in body:
            return 400, {"error": "bad-request", "message": 'body needs "position"'}
        state = parse_position_payload(body["position"])
        with self._lock:
            self._counter += 1
            session = PlaySession(f"g{self._counter}", state)
            self._sessions[session.id] = session
        self._log(session.id, "created", state_to_obj(state))
        return 201, {
            "id": session.id,
            "state": state_to_obj(state),
            "status": session.status,
            "legalLeftMoves": legal_left_moves(state),
        }

    def get_game(self, session_id: str) -> tuple[int, Any]:
        session = self._session(session_id)
        if session is None:
            return 404, {"error": "not-found", "message": f"no session {session_id}"}
        return 200, session.to_obj()

    def delete_game(self, session_id: str) -> tuple[int, Any]:
        with self._lock:
            session = self._sessions.pop(session_id, None)
        if session is None:
            return 404, {"error": "not-found", "message": f"no session {session_id}"}
        self._log(session_id, "deleted", None)
        return 204, None

    def move(self, session_id: str, body: Any) -> tuple[int, Any]:
        session = self._session(session_id)
        if session is None:
            return 404, {"error": "not-found", "message": f"no session {session_id}"}
        if not isinstance(body, dict) or "leftMove" not in body:
            return 400, {"error": "bad-request", "message": 'body needs "leftMove"'}
        with session.lock:  # one mutation at a time per session
            if session.status != "ongoing":
                return 409, {
                    "error": "finished",
                    "message": f"game is over ({session.status})",
                }
            state = session.state
            try:
                left = _parse_left_move(state, body["leftMove"])
                before = state_score(state)
                new_state, right = play_round(state, left)
            except IllegalMoveError as exc:
                return 422, {
                    "error": exc.code,
                    "message": str(exc),
                    "legalLeftMoves": legal_left_moves(state),
                }
            after = state_score(new_state)
            delta = None if before is None or after is None else after - before
            session.state = new_state
            entry = {
                "leftMove": _move_obj(state, left),
                "rightMove": _move_obj(state, right),
                "state": state_to_obj(new_state),
            }
            session.history.append(entry)
            result = {
                "rightResponse": _move_obj(state, right),
                "newState": state_to_obj(new_state),
                "status": session.status,
                "delta": delta,
            }
        self._log(session_id, "move", entry)
        return 200, result

    def eval_position(self, body: Any) -> tuple[int, Any]:
        if not isinstance(body, dict) or "position" not in body:
            return 400, {"error": "bad-request", "message": 'body needs "position"'}
        state = parse_position_payload(body["position"])
        solver = default_solver()
        if isinstance(state, TD2Position):
            solution = solve_td2(state)
            arena = SumArena(to_components(state))
            result = solver.solve(arena)
        else:
            arena = state
            result = solver.solve(arena)
        principal = None
        if result.principal is not None:
            left, right = result.principal
            principal = {
                "left": {"component": left[0], "move": left[1]},
                "rightResponse": {"component": right[0], "move": right[1]},
            }
        return 200, {
            "outcome": str(result.outcome),
            "score": state_score(state),
            "principal": principal,
        }

    def plan(self, session_id: str) -> tuple[int, Any]:
        session = self._session(session_id)
        if session is None:
            return 404, {"error": "not-found", "message": f"no session {session_id}"}
        payload = plan_payload(session.state)
        if payload is None:
            return 409, {
                "error": "wrong-shape",
                "message": "plan exists only for simple-hot/TD2 shaped states",
            }
        return 200, payload

    # -- routing -----------------------------------------------------------

    def handle(self, method: str, path: str, body: Any) -> tuple[int, Any]:
        parts = [p for p in path.split("/") if p]
        try:
            if method == "POST" and parts == ["games"]:
                return self.create_game(body)
            if method == "POST" and parts == ["eval"]:
                return self.eval_position(body)
            if len(parts) == 2 and parts[0] == "games":
                if method == "GET":
                    return self.get_game(parts[1])
                if method == "DELETE":
                    return self.delete_game(parts[1])
            if len(parts) == 3 and parts[0] == "games" and parts[2] == "move" and method == "POST":
                return self.move(parts[1], body)
            if len(parts) == 3 and parts[0] == "games" and parts[2] == "plan" and method == "GET":
                return self.plan(parts[1])
            return 404, {"error": "not-found", "message": f"no route {method} {path}"}
        except ParseError as exc:
            return 400, {"error": exc.code, "message": str(exc)}
        except IllegalMoveError as exc:
            return 422, {"error": exc.code, "message": str(exc)}
        except CRGamesError as exc:
            return 400, {"error": exc.code, "message": str(exc)}
        except (ValueError, KeyError, TypeError) as exc:
            return 400, {"error": "bad-request", "message": str(exc)}


class _Handler(BaseHTTPRequestHandler):
    service: GameService

    def _respond(self, status: int, body: Any) -> None:
        data = b"" if body is None else json.dumps(body, separators=(",", ":")).encode()
        self.send_response(status)
        if data:
            self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        if data:
            self.wfile.write(data)

    def _body(self) -> Any:
        length = int(self.headers.get("Content-Length") or 0)
        if not length:
            return None
        raw = self.rfile.read(length)
        try:
            return json.loads(raw)
        except json.JSONDecodeError:
            return {"__malformed__": True}

    def _dispatch(self, method: str) -> None:
        body = self._body() if method == "POST" else None
        if isinstance(body, dict) and body.get("__malformed__"):
            self._respond(400, {"error": "bad-request", "message": "malformed JSON body"})
            return
        status, payload = self.service.handle(method, self.path, body)
        self._respond(status, payload)

    def do_GET(self):  # noqa: N802 - http.server API
        self._dispatch("GET")

    def do_POST(self):  # noqa: N802
        self._dispatch("POST")

    def do_DELETE(self):  # noqa: N802
        self._dispatch("DELETE")

    def log_message(self, fmt, *args):  # quiet by default
        pass


def make_server(host: str, port: int, log_path: str | None = None) -> ThreadingHTTPServer:
    service = GameService(log_path=log_path)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer((host, port), handler)


def serve(host: str = "127.0.0.1", port: int = 8040, log_path: str | None = None) -> None:
    server = make_server(host, port, log_path)
    print(f"serving on http://{host}:{port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
