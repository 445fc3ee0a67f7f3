// Scripted session against the real backend: drives the same client and
// payload-assembly code the page uses, through a live HTTP server.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiRequestError } from "../src/api.js";
import { buildForm, errorMessage, probePayload } from "../src/model.js";
import { renderBoard } from "../src/render.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(timeoutMs = 30000) {
  const start = Date.now();
  while (Date.now() - start < timeoutMs) {
    try {
      const resp = await fetch(`${BASE}/health`);
      if (resp.ok) {
        return;
      }
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error("backend did not come up in time");
}

beforeAll(async () => {
  server = spawn("python3", ["-c", [
    "from ordarena.service.http import create_app",
    "import uvicorn",
    `uvicorn.run(create_app(), host='127.0.0.1', port=${PORT}, log_level='error')`,
  ].join("; ")], { stdio: "ignore" });
  await waitForServer();
}, 40000);

afterAll(() => {
  server?.kill();
});

describe("scripted arena session", () => {
  const api = new ApiClient(BASE);

  it("plays three human Player-I moves on w+1 vs w+1 and ends with II_WINS", async () => {
    let state = await api.createSession({
      kind: "EFD", A: "order:w+1", B: "order:w+1", clock: "w",
      engine: "II", strategy: "identity",
    });
    expect(state.status).toBe("AwaitingI");
    expect(buildForm(state).role).toBe("I");

    const script: { clock: string; side: "A" | "B"; element: string }[] = [
      { clock: "2", side: "A", element: "w" },
      { clock: "1", side: "B", element: "3" },
      { clock: "0", side: "A", element: "17" },
    ];
    for (const move of script) {
      state = await api.postMove(state.id, probePayload("EFD", move, "order"));
      // every human move comes back with the engine's reply recorded
      const last = state.transcript!.rounds[state.transcript!.rounds.length - 1];
      expect(last.move).toBe(move.element);
      expect(last.answer).toBe(move.element); // identity engine echoes
    }
    expect(state.transcript!.rounds).toHaveLength(3);
    expect(state.status).toBe("Finished");
    expect(state.verdict).toBe("II_WINS");
    const board = renderBoard(state);
    expect(board).toContain("Player II wins");
  });

  it("surfaces CLOCK_NOT_DECREASING inline", async () => {
    let state = await api.createSession({
      kind: "EFD", A: "order:w+1", B: "order:w+1", clock: "w",
      engine: "II", strategy: "identity",
    });
    state = await api.postMove(state.id, { clock: "4", side: "A", element: "1" });
    try {
      await api.postMove(state.id, { clock: "4", side: "A", element: "2" });
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiRequestError);
      const code = (err as ApiRequestError).code;
      expect(code).toBe("CLOCK_NOT_DECREASING");
      expect(errorMessage(code)).toContain("strictly decrease");
    }
    // the session is untouched by the rejected move
    const after = await api.getSession(state.id);
    expect(after.transcript!.rounds).toHaveLength(1);
  });

  it("surfaces EPS_NON_POSITIVE for PI games", async () => {
    const state = await api.createSession({
      kind: "PI", A: "algebra:2", B: "algebra:2", clock: "3",
      engine: "II", strategy: "echo_mirror",
    });
    try {
      await api.postMove(state.id, probePayload("PI", {
        clock: "1", side: "A", element: "1, 0", eps: "0",
      }, "algebra"));
      expect.unreachable();
    } catch (err) {
      const code = (err as ApiRequestError).code;
      expect(code).toBe("EPS_NON_POSITIVE");
      expect(errorMessage(code)).toContain("positive");
    }
  });

  it("validates ordinal notations through the parse endpoint", async () => {
    const good = await api.parseOrdinal("w^(e0)+w*2");
    expect(good.ok).toBe(true);
    expect(good.canonical).toBe("e0+w*2");
    const bad = await api.parseOrdinal("w^(");
    expect(bad.ok).toBe(false);
    expect(bad.position).toBeTypeOf("number");
  });

  it("redirect-worthy deletions return UNKNOWN_SESSION afterwards", async () => {
    const state = await api.createSession({
      kind: "EFD", A: "order:3", B: "order:3", clock: "1", engine: "II", strategy: "identity",
    });
    await api.deleteSession(state.id);
    await expect(api.getSession(state.id)).rejects.toMatchObject({ code: "UNKNOWN_SESSION" });
  });
});
