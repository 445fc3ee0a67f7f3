// View-model construction: pure functions from server state to what the
// page shows. The service transcript is the single source of truth; this
// module only derives presentation facts from it.

import type { SessionState, Status } from "./types.js";

export interface FormModel {
  visible: boolean;
  role: "I" | "II" | null;        // which player the human acts as right now
  needsEps: boolean;              // PI probe entry
  structureKind: "order" | "group" | "algebra";
  answerSide: "A" | "B" | null;   // side the answer must come from (role II)
}

export interface ViewModel {
  id: string;
  kind: string;
  title: string;
  clockBadge: string;
  status: Status;
  rounds: SessionState["transcript"] extends undefined ? never : NonNullable<SessionState["transcript"]>["rounds"];
  pending: SessionState["pending"];
  verdictBanner: string | null;
  form: FormModel;
}

const ERROR_MESSAGES: Record<string, string> = {
  CLOCK_NOT_DECREASING: "The clock must strictly decrease: pick an ordinal below the current clock.",
  EPS_NON_POSITIVE: "The tolerance must be a strictly positive rational.",
  ELEMENT_NOT_IN_STRUCTURE: "That element does not belong to the chosen side.",
  GAME_OVER: "The game is already over.",
  GAME_NOT_OVER: "The game is still running.",
  NOT_YOUR_TURN: "It is the engine's turn; wait for its reply.",
  BAD_MOVE: "The move is missing a field or malformed.",
  BAD_NOTATION: "That is not a valid ordinal notation.",
  BAD_SPEC: "The session description is invalid.",
  UNSUPPORTED_STRUCTURE: "Unknown structure kind; use order:, group: or algebra:.",
  UNKNOWN_SESSION: "This session no longer exists.",
  BALL_VIOLATION: "The answer on the probed side must be strictly within the tolerance.",
  ENGINE_BUDGET: "The engine ran out of its move budget and forfeited.",
  NO_ANSWER: "No legal answer exists.",
  NETWORK: "Could not reach the server; retry.",
};

export function errorMessage(code: string): string {
  return ERROR_MESSAGES[code] ?? `Unexpected error (${code}).`;
}

export function structureKind(tag: string): "order" | "group" | "algebra" {
  const kind = tag.split(":", 1)[0];
  if (kind === "order" || kind === "group" || kind === "algebra") {
    return kind;
  }
  return "order";
}

export function humanTurn(state: SessionState): "I" | "II" | null {
  if (state.status === "Finished") {
    return null;
  }
  const awaiting = state.status === "AwaitingI" ? "I" : "II";
  return state.engine === awaiting ? null : awaiting;
}

export function buildForm(state: SessionState): FormModel {
  const role = humanTurn(state);
  return {
    visible: role !== null,
    role,
    needsEps: state.kind === "PI" && role === "I",
    structureKind: structureKind(state.a),
    answerSide: role === "II" && state.pending ? (state.pending.side === "A" ? "B" : "A") : null,
  };
}

export function verdictBanner(state: SessionState): string | null {
  if (state.status !== "Finished") {
    return null;
  }
  const winner = state.verdict === "II_WINS" ? "Player II wins" : "Player I wins";
  if (state.forfeit) {
    return `${winner} — forfeit by ${state.forfeit.by} in round ${state.forfeit.round}: ${state.forfeit.reason}`;
  }
  return `${winner} — the final map ${state.verdict === "II_WINS" ? "induces" : "does not induce"} an isomorphism of the generated substructures`;
}

export function buildViewModel(state: SessionState): ViewModel {
  return {
    id: state.id,
    kind: state.kind,
    title: `${state.kind}: ${state.a} vs ${state.b} (clock ${state.clock})`,
    clockBadge: `clock ${state.current_clock}`,
    status: state.status,
    rounds: (state.transcript?.rounds ?? []) as ViewModel["rounds"],
    pending: state.pending,
    verdictBanner: verdictBanner(state),
    form: buildForm(state),
  };
}

// Polling support: only re-render when the server state meaningfully moved.
export function stateFingerprint(state: SessionState): string {
  return [
    state.status,
    state.current_clock,
    state.transcript?.rounds.length ?? 0,
    state.pending ? JSON.stringify(state.pending) : "-",
    state.verdict ?? "-",
  ].join("|");
}

export function shouldRerender(prev: SessionState | null, next: SessionState): boolean {
  return prev === null || stateFingerprint(prev) !== stateFingerprint(next);
}

// Move payload assembly from raw form fields; validation stays on the
// server, the form only ships what the user typed.
export interface MoveFormInput {
  clock: string;
  side: "A" | "B";
  element: string;
  eps?: string;
}

export function probePayload(kind: string, input: MoveFormInput,
                             structure: "order" | "group" | "algebra"): Record<string, unknown> {
  const element = parseElementInput(structure, input.element);
  const payload: Record<string, unknown> = {
    clock: input.clock.trim(),
    side: input.side,
    element,
  };
  if (kind === "PI") {
    payload.eps = (input.eps ?? "").trim();
  }
  return payload;
}

export function answerPayload(kind: string, raw: string,
                              structure: "order" | "group" | "algebra",
                              rawB?: string): Record<string, unknown> {
  if (kind === "PI") {
    return { a: parseElementInput(structure, raw), b: parseElementInput(structure, rawB ?? raw) };
  }
  return { element: parseElementInput(structure, raw) };
}

export function parseElementInput(structure: "order" | "group" | "algebra", raw: string): unknown {
  const text = raw.trim();
  if (structure === "order") {
    return text;
  }
  if (structure === "algebra") {
    // "1, 2+i" -> [["1","0"], ["2","1"]]
    return text.split(",").map((coord) => {
      const m = coord.trim().match(/^(-?\d+(?:\/\d+)?)?\s*(?:([+-]?)\s*(\d+(?:\/\d+)?)?(i))?$/);
      if (!m || (m[1] === undefined && m[4] === undefined)) {
        throw new Error(`cannot read coordinate ${coord.trim()}`);
      }
      const re = m[1] ?? "0";
      const im = m[4] ? `${m[2] === "-" ? "-" : ""}${m[3] ?? "1"}` : "0";
      return [re, im];
    });
  }
  // group elements arrive as JSON {breakpoints, values}
  const parsed = JSON.parse(text);
  if (!parsed.breakpoints || !parsed.values) {
    throw new Error("a step function needs breakpoints and values");
  }
  return parsed;
}
