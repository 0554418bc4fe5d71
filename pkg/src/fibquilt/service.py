"""HTTP JSON service for interactive play.

Sessions live in memory; every mutation returns a full state snapshot, so
clients never track deltas.  Per-session locks serialize concurrent moves,
and an optional `turn` field in the move payload rejects stale submissions
(optimistic turn token).  With a journal directory configured, each session
appends its moves to a replay-format file (`n=<N>` header, one move per
line) compatible with `fibquilt play-log`.

Routes:
    POST /sessions {"n": int, "seed"?: int}        -> 201 session view
    GET  /sessions/{id}                            -> session view
    GET  /sessions/{id}/moves                      -> legal moves + gate flag
    POST /sessions/{id}/moves {"move": str, "turn"?: int} -> session view
    POST /sessions/{id}/engine-move {"strategy": str}     -> move + view
    GET  /meta/rules                               -> move table + correction note
    GET  /meta/sequence?max=K                      -> terms 1..K
"""

from __future__ import annotations

import json
import os
import random
import re
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import analysis
from .engine import (
    GameState,
    IllegalMoveError,
    Move,
    MoveFormatError,
    R3F_CORRECTION_NOTE,
    apply_move,
    initial_state,
    is_terminal,
    legal_moves,
    monovariant,
    monovariant_delta,
    parse_move,
    rewrite_text,
    rule_table,
    serialize_move,
    serialize_state,
)
from .sequence import generate
from .simulation import splitmix64


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str, **extra):
        self.status = status
        self.payload = {"error": code, "message": message, **extra}
        super().__init__(message)


@dataclass
class Session:
    id: str
    n: int
    seed: int
    state: GameState
    history: list[Move] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    rng: random.Random = None  # seeded in __post_init__
    journal_path: str | None = None

    def __post_init__(self):
        self.rng = random.Random(splitmix64(self.seed))

    @property
    def finished(self) -> bool:
        return is_terminal(self.state)

    @property
    def to_move(self) -> str:
        return "Player1" if len(self.history) % 2 == 0 else "Player2"

    @property
    def winner(self) -> str | None:
        if not self.finished:
            return None
        return "Player1" if len(self.history) % 2 == 1 else "Player2"

    def view(self) -> dict:
        return {
            "id": self.id,
            "n": self.n,
            "seed": self.seed,
            "state": serialize_state(self.state),
            "counts": [[i, c] for i, c in sorted(self.state.counts.items())],
            "total": self.state.total,
            "monovariant": monovariant(self.state),
            "history": [serialize_move(m) for m in self.history],
            "move_count": len(self.history),
            "to_move": self.to_move,
            "status": "finished" if self.finished else "active",
            "winner": self.winner,
        }


STRATEGIES = ("random", "greedy-monovariant", "optimal")


class GameService:
    """Session store plus engine-strategy opponents; framework-free."""

    def __init__(self, max_n: int = 500, journal_dir: str | None = None,
                 solver_max_states: int = 2_000_000):
        self.max_n = max_n
        self.journal_dir = journal_dir
        self.solver_max_states = solver_max_states
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()
        self._solver_cache: dict[int, dict] = {}
        if journal_dir:
            os.makedirs(journal_dir, exist_ok=True)

    # -- session lifecycle --------------------------------------------------

    def create_session(self, n: int, seed: int | None = None) -> dict:
        if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= self.max_n:
            raise ServiceError(400, "bad-n", f"n must be an integer in 1..{self.max_n}")
        if seed is None:
            seed = random.getrandbits(63)
        sid = uuid.uuid4().hex[:12]
        session = Session(id=sid, n=n, seed=seed, state=initial_state(n))
        if self.journal_dir:
            session.journal_path = os.path.join(self.journal_dir, f"{sid}.log")
            with open(session.journal_path, "w") as fh:
                fh.write(f"n={n}\n")
        with self._registry_lock:
            self._sessions[sid] = session
        return session.view()

    def _get(self, sid: str) -> Session:
        session = self._sessions.get(sid)
        if session is None:
            raise ServiceError(404, "unknown-session", f"no session {sid!r}")
        return session

    def get_session(self, sid: str) -> dict:
        return self._get(sid).view()

    def list_moves(self, sid: str) -> dict:
        session = self._get(sid)
        with session.lock:
            moves = legal_moves(session.state)
            gated = moves == [Move("R2a")]
            return {
                "moves": [
                    {
                        "move": serialize_move(m),
                        "rewrite": rewrite_text(m),
                        "monovariant_delta": monovariant_delta(m),
                        "gated": gated and m.rule == "R2a",
                    }
                    for m in moves
                ],
                "gated": gated,
                "turn": len(session.history),
            }

    # -- play ----------------------------------------------------------------

    def play_move(self, sid: str, move_text: str, turn: int | None = None) -> dict:
        session = self._get(sid)
        try:
            move = parse_move(move_text)
        except MoveFormatError as exc:
            raise ServiceError(400, "bad-move", str(exc))
        with session.lock:
            self._apply_locked(session, move, turn)
            return session.view()

    def engine_move(self, sid: str, strategy: str) -> dict:
        session = self._get(sid)
        if strategy not in STRATEGIES:
            raise ServiceError(400, "bad-strategy",
                               f"strategy must be one of {', '.join(STRATEGIES)}")
        with session.lock:
            if session.finished:
                raise ServiceError(409, "finished", "game is over")
            move = self._choose(session, strategy)
            self._apply_locked(session, move, None)
            return {"move": serialize_move(move), "session": session.view()}

    def _apply_locked(self, session: Session, move: Move, turn: int | None) -> None:
        if session.finished:
            raise ServiceError(409, "finished", "game is over")
        if turn is not None and turn != len(session.history):
            raise ServiceError(409, "stale-turn",
                               f"expected turn {len(session.history)}, got {turn}",
                               turn=len(session.history))
        try:
            session.state = apply_move(session.state, move)
        except IllegalMoveError as exc:
            raise ServiceError(409, "illegal-move", str(exc), reason=exc.reason)
        session.history.append(move)
        if session.journal_path:
            with open(session.journal_path, "a") as fh:
                fh.write(serialize_move(move) + "\n")

    def _choose(self, session: Session, strategy: str) -> Move:
        moves = legal_moves(session.state)
        if strategy == "random":
            return moves[session.rng.randrange(len(moves))]
        if strategy == "greedy-monovariant":
            return min(moves, key=lambda m: (monovariant_delta(m), serialize_move(m)))
        return self._optimal_move(session, moves)

    def _optimal_move(self, session: Session, moves: list[Move]) -> Move:
        strategy_map = self._solver_cache.get(session.n)
        if strategy_map is None:
            try:
                _, strategy_map = analysis.solve_winner(
                    session.n, max_states=self.solver_max_states
                )
            except analysis.SearchBudgetExceeded as exc:
                raise ServiceError(
                    503, "solver-budget",
                    f"{exc}; use strategy=random or greedy-monovariant",
                )
            self._solver_cache[session.n] = strategy_map
        best = strategy_map.get(session.state.key())
        if best is not None:
            return best
        # losing position: no winning move exists, fall back to the greedy pick
        return min(moves, key=lambda m: (monovariant_delta(m), serialize_move(m)))

    # -- metadata -------------------------------------------------------------

    def rules_info(self) -> dict:
        return {"rules": rule_table(), "correction_note": R3F_CORRECTION_NOTE}

    def sequence_info(self, max_index: int) -> dict:
        if max_index < 1:
            raise ServiceError(400, "bad-max", "max must be >= 1")
        try:
            seq = generate(max_index)
        except ValueError as exc:
            raise ServiceError(400, "bad-max", str(exc))
        return {"max_index": max_index, "terms": list(seq.terms)}


_SESSION_RE = re.compile(r"^/sessions/([0-9a-f]+)$")
_MOVES_RE = re.compile(r"^/sessions/([0-9a-f]+)/moves$")
_ENGINE_RE = re.compile(r"^/sessions/([0-9a-f]+)/engine-move$")

_CONTENT_TYPES = {
    ".html": "text/html", ".js": "text/javascript", ".css": "text/css",
    ".svg": "image/svg+xml", ".png": "image/png", ".map": "application/json",
    ".json": "application/json",
}


def make_handler(service: GameService, ui_dir: str | None):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # quiet by default
            pass

        def _send_json(self, status: int, payload: dict) -> None:
            body = json.dumps(payload).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _read_body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            if length == 0:
                return {}
            try:
                parsed = json.loads(self.rfile.read(length))
            except json.JSONDecodeError:
                raise ServiceError(400, "bad-json", "request body is not valid JSON")
            if not isinstance(parsed, dict):
                raise ServiceError(400, "bad-json", "request body must be a JSON object")
            return parsed

        def _dispatch(self, fn) -> None:
            try:
                fn()
            except ServiceError as exc:
                self._send_json(exc.status, exc.payload)

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.end_headers()

        def do_GET(self):
            self._dispatch(self._get)

        def _get(self):
            url = urlparse(self.path)
            path = url.path
            if match := _SESSION_RE.match(path):
                self._send_json(200, service.get_session(match.group(1)))
            elif match := _MOVES_RE.match(path):
                self._send_json(200, service.list_moves(match.group(1)))
            elif path == "/meta/rules":
                self._send_json(200, service.rules_info())
            elif path == "/meta/sequence":
                params = parse_qs(url.query)
                try:
                    max_index = int(params.get("max", ["13"])[0])
                except ValueError:
                    raise ServiceError(400, "bad-max", "max must be an integer")
                self._send_json(200, service.sequence_info(max_index))
            elif ui_dir:
                self._serve_static(path)
            else:
                raise ServiceError(404, "not-found", f"no route {path}")

        def _serve_static(self, path: str) -> None:
            root = os.path.abspath(ui_dir)
            rel = path.lstrip("/") or "index.html"
            full = os.path.abspath(os.path.normpath(os.path.join(root, rel)))
            if full != root and not full.startswith(root + os.sep):
                raise ServiceError(404, "not-found", "bad path")
            if os.path.isdir(full):
                full = os.path.join(full, "index.html")
            if not os.path.isfile(full):
                raise ServiceError(404, "not-found", f"no file {path}")
            ext = os.path.splitext(full)[1]
            data = open(full, "rb").read()
            self.send_response(200)
            self.send_header("Content-Type", _CONTENT_TYPES.get(ext, "application/octet-stream"))
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

        def do_POST(self):
            self._dispatch(self._post)

        def _post(self):
            path = urlparse(self.path).path
            body = self._read_body()
            if path == "/sessions":
                n = body.get("n")
                seed = body.get("seed")
                if seed is not None and not isinstance(seed, int):
                    raise ServiceError(400, "bad-seed", "seed must be an integer")
                self._send_json(201, service.create_session(n, seed))
            elif match := _MOVES_RE.match(path):
                move = body.get("move")
                if not isinstance(move, str):
                    raise ServiceError(400, "bad-move", "payload needs a 'move' string")
                turn = body.get("turn")
                if turn is not None and not isinstance(turn, int):
                    raise ServiceError(400, "bad-turn", "'turn' must be an integer")
                self._send_json(200, service.play_move(match.group(1), move, turn))
            elif match := _ENGINE_RE.match(path):
                strategy = body.get("strategy", "random")
                self._send_json(200, service.engine_move(match.group(1), strategy))
            else:
                raise ServiceError(404, "not-found", f"no route {path}")

    return Handler


def make_server(host: str = "127.0.0.1", port: int = 0, max_n: int = 500,
                journal_dir: str | None = None, ui_dir: str | None = None,
                solver_max_states: int = 2_000_000) -> ThreadingHTTPServer:
    service = GameService(max_n=max_n, journal_dir=journal_dir,
                          solver_max_states=solver_max_states)
    handler = make_handler(service, ui_dir)
    server = ThreadingHTTPServer((host, port), handler)
    server.game_service = service
    return server


def run_server(host: str, port: int, max_n: int = 500,
               journal_dir: str | None = None, ui_dir: str | None = None) -> None:
    server = make_server(host, port, max_n, journal_dir, ui_dir)
    actual_port = server.server_address[1]
    print(f"serving on http://{host}:{actual_port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
