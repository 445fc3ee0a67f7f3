"""In-memory game sessions behind the HTTP API and the CLI.

A session holds two structures, a clock, the engine's side and strategy,
and either a discrete or a metric game position.  Mutations are serialized
per session; engine answers are computed synchronously with a soft time
budget, and budget overruns forfeit the engine rather than blocking.
Sessions can be snapshotted to newline-delimited JSON and rebuilt by
replaying the transcript through the game step functions.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from ordarena import ordinal
from ordarena.dimgroup import check_partial_iso_group
from ordarena.efgame import (
    CNFBlockII,
    DimGroupStructure,
    GameError,
    GamePosition,
    GreedyI,
    IdentityII,
    Move,
    OrdinalOrder,
    RandomI,
    RandomII,
    Side,
    Verdict,
    check_win,
    decide_equiv_finite_clock,
    efd_step,
)
from ordarena import pigame
from ordarena.pigame import (
    EchoMirrorII,
    PIMove,
    PIPosition,
    RandomPI,
    ToyAlgebra,
    pi_step,
    win_witness,
)
from ordarena.transfer import transfer_strategy

ENGINE_BUDGET_SECONDS = 5.0


class ServiceError(ValueError):
    def __init__(self, code: str, message: str, http_status: int = 400):
        super().__init__(message)
        self.code = code
        self.http_status = http_status


def build_structure(tag: str):
    """Parse a structure spec: order:<notation>, group:<successor notation>,
    algebra:<n>."""
    if not isinstance(tag, str) or ":" not in tag:
        raise ServiceError("BAD_SPEC", f"structure tag {tag!r} must look like kind:arg")
    kind, _, arg = tag.partition(":")
    try:
        if kind == "order":
            return OrdinalOrder(ordinal.parse(arg))
        if kind == "group":
            space = ordinal.parse(arg)
            if not space.is_successor:
                raise ServiceError("BAD_SPEC", "group spaces must be successor ordinals")
            return DimGroupStructure(ordinal.pred(space))
        if kind == "algebra":
            n = int(arg)
            if n < 1:
                raise ServiceError("BAD_SPEC", "algebra dimension must be at least 1")
            return ToyAlgebra(n)
    except ordinal.OrdinalError as exc:
        raise ServiceError("BAD_NOTATION", str(exc)) from exc
    raise ServiceError("UNSUPPORTED_STRUCTURE", f"unknown structure kind {kind!r}")


def _build_engine(kind: str, side: str, strategy: str, a, b, clock, seed: int):
    if kind == "PI":
        if side == "II":
            if strategy in ("echo_mirror", "identity", "auto"):
                return EchoMirrorII()
            if strategy == "random":
                raise ServiceError("BAD_SPEC", "random is not a Player II strategy for PI games")
        else:
            if strategy in ("random", "auto"):
                return RandomPI(seed)
        raise ServiceError("BAD_SPEC", f"unsupported PI strategy {strategy!r} for side {side}")
    # EFD
    if side == "II":
        if strategy == "identity":
            return IdentityII()
        if strategy == "random":
            return RandomII(seed)
        if strategy in ("cnf", "karp"):
            return CNFBlockII()
        if strategy == "transfer":
            if not isinstance(a, DimGroupStructure):
                raise ServiceError("BAD_SPEC", "transfer strategies play on group structures")
            inner = IdentityII() if a.top == b.top else CNFBlockII()
            return transfer_strategy(inner, a, b)
        if strategy in ("decide", "auto"):
            if isinstance(a, OrdinalOrder) and clock.is_finite:
                res = decide_equiv_finite_clock(a.length, b.length, clock.to_int())
                if res.equivalent:
                    return res.strategy
                return IdentityII() if a.length == b.length else CNFBlockII()
            if isinstance(a, DimGroupStructure):
                inner = IdentityII() if a.top == b.top else CNFBlockII()
                return transfer_strategy(inner, a, b)
            return IdentityII()
    else:
        if strategy == "random":
            return RandomI(seed)
        if strategy == "greedy":
            return GreedyI(seed)
        if strategy in ("decide", "auto"):
            if isinstance(a, OrdinalOrder) and clock.is_finite:
                res = decide_equiv_finite_clock(a.length, b.length, clock.to_int())
                if not res.equivalent:
                    return res.strategy
            return RandomI(seed)
    raise ServiceError("BAD_SPEC", f"unsupported strategy {strategy!r} for side {side}")


@dataclass
class Session:
    id: str
    kind: str
    spec: dict
    a: Any
    b: Any
    clock: ordinal.Ord
    engine_side: Optional[str]
    strategy_name: str
    seed: int
    engine: Any = None
    position: Any = None
    pending: Any = None          # Player I move awaiting a human answer
    status: str = "AwaitingI"
    verdict: Optional[str] = None
    forfeit: Optional[dict] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    # -- lifecycle -------------------------------------------------------------

    def start(self):
        self.position = PIPosition(self.clock) if self.kind == "PI" else GamePosition(self.clock)
        if self.position.is_over:
            self._finish()
            return
        self.status = "AwaitingI"
        if self.engine_side == "I":
            self._engine_turn()

    def _finish(self):
        self.status = "Finished"
        if self.kind == "PI":
            self.verdict = pigame.check_win(self.position, self.a, self.b).value
        else:
            self.verdict = check_win(self.position, self.a, self.b).value

    def _forfeit(self, by: str, reason: str):
        self.status = "Finished"
        self.verdict = "II_WINS" if by == "I" else "I_WINS"
        self.forfeit = {"by": by, "round": len(self.position.rounds), "reason": reason}

    # -- engine ------------------------------------------------------------------

    def _engine_call(self, fn, *args):
        start = time.monotonic()
        result = fn(*args)
        elapsed = time.monotonic() - start
        if elapsed > ENGINE_BUDGET_SECONDS:
            raise ServiceError("ENGINE_BUDGET",
                               f"engine exceeded its {ENGINE_BUDGET_SECONDS}s move budget "
                               f"({elapsed:.1f}s)")
        return result

    def _engine_turn(self):
        """Engine acts for whichever roles it owns until a human must act."""
        while self.status != "Finished":
            if self.pending is None:
                if self.engine_side != "I":
                    self.status = "AwaitingI"
                    return
                try:
                    move = self._engine_call(self.engine.move, self.position, self.a, self.b)
                    self._apply_move(move)
                except (GameError, ServiceError) as exc:
                    self._forfeit("I", f"{getattr(exc, 'code', 'ENGINE')}: {exc}")
                    return
            else:
                if self.engine_side != "II":
                    self.status = "AwaitingII"
                    return
                try:
                    if self.kind == "PI":
                        pair = self._engine_call(self.engine.answer, self.position, self.pending,
                                                 self.a, self.b)
                        self._apply_answer_pair(pair)
                    else:
                        answer = self._engine_call(self.engine.answer, self.position, self.pending,
                                                   self.a, self.b)
                        self._apply_answer(answer)
                except (GameError, ServiceError) as exc:
                    self._forfeit("II", f"{getattr(exc, 'code', 'ENGINE')}: {exc}")
                    return

    # -- state transitions ----------------------------------------------------------

    def _apply_move(self, move):
        if self.kind == "PI":
            pi_step(self.position, move, self.a, self.b)
        else:
            efd_step(self.position, move, self.a, self.b)
        self.pending = move

    def _apply_answer(self, element):
        pending = efd_step(self.position, self.pending, self.a, self.b)
        self.position = pending.complete(element, self.a, self.b)
        self.pending = None
        if self.position.is_over:
            self._finish()

    def _apply_answer_pair(self, pair):
        answer_a, answer_b = pair
        pending = pi_step(self.position, self.pending, self.a, self.b)
        self.position = pending.complete(answer_a, answer_b, self.a, self.b)
        self.pending = None
        if self.position.is_over:
            self._finish()

    # -- human moves -------------------------------------------------------------

    def post_move(self, payload: dict):
        with self.lock:
            if self.status == "Finished":
                raise ServiceError("GAME_OVER", "session already finished")
            if self.pending is None:
                if self.engine_side == "I":
                    raise ServiceError("NOT_YOUR_TURN", "the engine plays Player I here")
                move = self._parse_move(payload)
                try:
                    self._apply_move(move)
                except GameError as exc:
                    raise ServiceError(exc.code, str(exc)) from exc
                self.status = "AwaitingII"
                self._engine_turn()
            else:
                if self.engine_side == "II":
                    raise ServiceError("NOT_YOUR_TURN", "the engine plays Player II here")
                try:
                    if self.kind == "PI":
                        self._apply_answer_pair(self._parse_answer_pair(payload))
                    else:
                        self._apply_answer(self._parse_answer(payload))
                except GameError as exc:
                    raise ServiceError(exc.code, str(exc)) from exc
                if self.status != "Finished":
                    self.status = "AwaitingI"
                    self._engine_turn()
            return self

    # -- payload parsing ------------------------------------------------------------

    def _parse_clock(self, payload) -> ordinal.Ord:
        try:
            return ordinal.parse(str(payload["clock"]))
        except KeyError:
            raise ServiceError("BAD_MOVE", "move needs a clock") from None
        except ordinal.OrdinalError as exc:
            raise ServiceError("BAD_NOTATION", str(exc)) from exc

    def _parse_side(self, payload) -> Side:
        side = payload.get("side", "A")
        if side not in ("A", "B"):
            raise ServiceError("BAD_MOVE", "side must be A or B")
        return Side(side)

    def _element(self, structure, data):
        try:
            return structure.element_from_json(data)
        except (ValueError, TypeError, KeyError) as exc:
            raise ServiceError("ELEMENT_NOT_IN_STRUCTURE", str(exc)) from exc

    def _parse_move(self, payload):
        clock = self._parse_clock(payload)
        side = self._parse_side(payload)
        structure = self.a if side is Side.A else self.b
        element = self._element(structure, payload.get("element"))
        if self.kind == "PI":
            try:
                eps = Fraction(str(payload.get("eps", "")))
            except (ValueError, ZeroDivisionError) as exc:
                raise ServiceError("BAD_MOVE", f"bad eps: {exc}") from exc
            if eps <= 0:
                raise ServiceError("EPS_NON_POSITIVE", "the tolerance must be strictly positive")
            return PIMove(clock, side, element, eps)
        return Move(clock, side, element)

    def _parse_answer(self, payload):
        other = self.b if self.pending.side is Side.A else self.a
        return self._element(other, payload.get("element"))

    def _parse_answer_pair(self, payload):
        if "a" not in payload or "b" not in payload:
            raise ServiceError("BAD_MOVE", "PI answers need both components a and b")
        return (self._element(self.a, payload["a"]), self._element(self.b, payload["b"]))

    # -- serialization ----------------------------------------------------------------

    def transcript(self) -> dict:
        rounds = []
        for r in self.position.rounds:
            probed = self.a if r.side is Side.A else self.b
            entry = {
                "clock": ordinal.format_ord(r.clock),
                "side": r.side.value,
                "move": probed.element_to_json(r.probe),
            }
            if self.kind == "PI":
                entry["eps"] = str(r.eps)
                entry["answer"] = {"a": self.a.element_to_json(r.answer_a),
                                   "b": self.b.element_to_json(r.answer_b)}
            else:
                answered = self.b if r.side is Side.A else self.a
                entry["answer"] = answered.element_to_json(r.answer)
            rounds.append(entry)
        out = {
            "initial_clock": ordinal.format_ord(self.position.initial_clock),
            "rounds": rounds,
        }
        if self.verdict:
            out["verdict"] = self.verdict
        return out

    def witness(self) -> Optional[dict]:
        if self.status != "Finished" or self.verdict not in ("II_WINS", "I_WINS"):
            return None
        pairs = list(self.position.pairs())
        if self.kind == "PI":
            return win_witness(pairs, self.a, self.b) if self.verdict == "II_WINS" else None
        if isinstance(self.a, DimGroupStructure):
            iso = check_partial_iso_group(pairs, self.a.top, self.b.top)
            return {"generator_map": [
                {"g": self.a.element_to_json(g), "h": self.b.element_to_json(h)} for g, h in pairs
            ], "unit_to_unit": True, "bounded": iso.bounded} if iso.ii_wins else None
        if self.verdict == "II_WINS":
            return {"order_map": [
                {"a": self.a.element_to_json(x), "b": self.b.element_to_json(y)} for x, y in pairs
            ]}
        return None

    def state_json(self, include_transcript: bool = True) -> dict:
        out = {
            "id": self.id,
            "kind": self.kind,
            "a": self.a.describe(),
            "b": self.b.describe(),
            "clock": ordinal.format_ord(self.clock),
            "current_clock": ordinal.format_ord(self.position.clock),
            "engine": self.engine_side,
            "strategy": self.strategy_name,
            "seed": self.seed,
            "status": self.status,
            "verdict": self.verdict,
            "forfeit": self.forfeit,
        }
        if self.pending is not None:
            probed = self.a if self.pending.side is Side.A else self.b
            pending = {
                "clock": ordinal.format_ord(self.pending.clock),
                "side": self.pending.side.value,
                "element": probed.element_to_json(self.pending.element),
            }
            if self.kind == "PI":
                pending["eps"] = str(self.pending.eps)
            out["pending"] = pending
        else:
            out["pending"] = None
        if include_transcript:
            out["transcript"] = self.transcript()
            out["witness"] = self.witness()
        return out


def create_session(spec: dict) -> Session:
    kind = spec.get("kind", "EFD")
    if kind not in ("EFD", "PI"):
        raise ServiceError("BAD_SPEC", f"unknown game kind {kind!r}")
    a = build_structure(spec.get("A", spec.get("a", "")))
    b = build_structure(spec.get("B", spec.get("b", "")))
    if kind == "PI" and not isinstance(a, ToyAlgebra):
        raise ServiceError("BAD_SPEC", "PI games run on algebra structures")
    if kind == "EFD" and isinstance(a, ToyAlgebra):
        raise ServiceError("BAD_SPEC", "EFD games run on order or group structures")
    if type(a) is not type(b):
        raise ServiceError("BAD_SPEC", "both sides must be the same structure kind")
    try:
        clock = ordinal.parse(str(spec.get("clock", "w")))
    except ordinal.OrdinalError as exc:
        raise ServiceError("BAD_NOTATION", str(exc)) from exc
    engine_side = spec.get("engine")
    if engine_side not in (None, "I", "II"):
        raise ServiceError("BAD_SPEC", "engine must be I, II or omitted")
    strategy = spec.get("strategy", "auto")
    seed = int(spec.get("seed", 0))
    session = Session(
        id=uuid.uuid4().hex[:12],
        kind=kind,
        spec=spec,
        a=a,
        b=b,
        clock=clock,
        engine_side=engine_side,
        strategy_name=strategy,
        seed=seed,
    )
    if engine_side is not None:
        session.engine = _build_engine(kind, engine_side, strategy, a, b, clock, seed)
    session.start()
    return session


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, spec: dict) -> Session:
        session = create_session(spec)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ServiceError("UNKNOWN_SESSION", f"no session {session_id!r}", http_status=404)
        return session

    def delete(self, session_id: str):
        with self._lock:
            if session_id not in self._sessions:
                raise ServiceError("UNKNOWN_SESSION", f"no session {session_id!r}", http_status=404)
            del self._sessions[session_id]

    def list(self) -> list[dict]:
        with self._lock:
            sessions = list(self._sessions.values())
        return [s.state_json(include_transcript=False) for s in sessions]

    # -- snapshots ----------------------------------------------------------------

    def save_snapshot(self, path: str):
        with self._lock:
            sessions = list(self._sessions.values())
        with open(path, "w") as fh:
            for s in sessions:
                fh.write(json.dumps({"spec": s.spec, "id": s.id,
                                     "transcript": s.transcript()}) + "\n")

    def load_snapshot(self, path: str):
        with open(path) as fh:
            for line in fh:
                if not line.strip():
                    continue
                data = json.loads(line)
                session = replay_session(data["spec"], data["transcript"])
                session.id = data["id"]
                with self._lock:
                    self._sessions[session.id] = session


def replay_session(spec: dict, transcript: dict) -> Session:
    """Rebuild a session by replaying its transcript through the step
    functions; the result must match the recorded rounds exactly."""
    raw = dict(spec)
    engine = raw.pop("engine", None)
    session = create_session({**raw, "engine": None})
    session.engine_side = engine
    if engine is not None:
        session.engine = _build_engine(session.kind, engine, session.strategy_name,
                                       session.a, session.b, session.clock, session.seed)
    for entry in transcript["rounds"]:
        side = Side(entry["side"])
        probed = session.a if side is Side.A else session.b
        clock = ordinal.parse(entry["clock"])
        element = probed.element_from_json(entry["move"])
        if session.kind == "PI":
            move = PIMove(clock, side, element, Fraction(entry["eps"]))
            pending = pi_step(session.position, move, session.a, session.b)
            session.position = pending.complete(
                session.a.element_from_json(entry["answer"]["a"]),
                session.b.element_from_json(entry["answer"]["b"]),
                session.a, session.b)
        else:
            move = Move(clock, side, element)
            pending = efd_step(session.position, move, session.a, session.b)
            other = session.b if side is Side.A else session.a
            session.position = pending.complete(other.element_from_json(entry["answer"]),
                                                session.a, session.b)
    session.pending = None
    if session.position.is_over:
        session._finish()
    else:
        session.status = "AwaitingI"
        if session.engine_side == "I":
            # the engine re-opens with a fresh seed stream; pending probes
            # are not part of snapshots
            session._engine_turn()
    return session
