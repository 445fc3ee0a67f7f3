// Mirrors of the service JSON shapes. The UI never builds game state
// locally; everything below arrives from the server verbatim.

export type GameKind = "EFD" | "PI";
export type Status = "AwaitingI" | "AwaitingII" | "Finished";

export type OrderElement = string;                    // ordinal notation
export type GroupElement = { ambient: string; breakpoints: string[]; values: string[] };
export type AlgebraElement = [string, string][];      // [re, im] per coordinate
export type ElementJson = OrderElement | GroupElement | AlgebraElement;

export interface RoundJson {
  clock: string;
  side: "A" | "B";
  move: ElementJson;
  answer: ElementJson | { a: AlgebraElement; b: AlgebraElement };
  eps?: string;
}

export interface TranscriptJson {
  initial_clock: string;
  rounds: RoundJson[];
  verdict?: string;
}

export interface PendingJson {
  clock: string;
  side: "A" | "B";
  element: ElementJson;
  eps?: string;
}

export interface SessionState {
  id: string;
  kind: GameKind;
  a: string;
  b: string;
  clock: string;
  current_clock: string;
  engine: "I" | "II" | null;
  strategy: string;
  seed: number;
  status: Status;
  verdict: string | null;
  forfeit: { by: string; round: number; reason: string } | null;
  pending: PendingJson | null;
  transcript?: TranscriptJson;
  witness?: unknown;
}

export interface ApiError {
  error: { code: string; message: string };
}

export interface ParseResult {
  ok: boolean;
  canonical?: string;
  error?: string;
  position?: number;
}

export interface SessionSpec {
  kind: GameKind;
  A: string;
  B: string;
  clock: string;
  engine?: "I" | "II" | null;
  strategy?: string;
  seed?: number;
}
