// DOM wiring: lobby (create/join) and the single-session game view with
// polling. Server errors surface inline without clearing the form.

import { ApiClient, ApiRequestError, NetworkError } from "./api.js";
import {
  answerPayload,
  buildForm,
  errorMessage,
  probePayload,
  shouldRerender,
  structureKind,
} from "./model.js";
import { renderBoard } from "./render.js";
import type { SessionState } from "./types.js";

const POLL_MS = 1500;

const api = new ApiClient("");
let currentState: SessionState | null = null;
let pollTimer: number | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function showError(target: string, err: unknown) {
  const box = el<HTMLElement>(target);
  if (err instanceof ApiRequestError) {
    if (err.code === "UNKNOWN_SESSION") {
      toLobby();
      return;
    }
    box.textContent = `${errorMessage(err.code)} [${err.code}]`;
  } else if (err instanceof NetworkError) {
    box.textContent = `${errorMessage("NETWORK")}`;
  } else {
    box.textContent = String(err);
  }
  box.classList.remove("hidden");
}

function clearError(target: string) {
  const box = el<HTMLElement>(target);
  box.textContent = "";
  box.classList.add("hidden");
}

function toLobby() {
  if (pollTimer !== null) {
    clearInterval(pollTimer);
    pollTimer = null;
  }
  currentState = null;
  el("game").classList.add("hidden");
  el("lobby").classList.remove("hidden");
  void refreshSessionList();
}

async function refreshSessionList() {
  try {
    const { sessions } = await api.listSessions();
    const list = el("session-list");
    list.innerHTML = sessions.map((s) =>
      `<li><a href="#" data-session="${s.id}">${s.id}</a> ${s.kind} ${s.a} vs ${s.b} — ${s.status}</li>`
    ).join("") || "<li>No sessions yet.</li>";
  } catch {
    // lobby list is best-effort
  }
}

function applyState(state: SessionState) {
  const changed = shouldRerender(currentState, state);
  currentState = state;
  if (!changed) {
    return;
  }
  el("board").innerHTML = renderBoard(state);
  const form = buildForm(state);
  el("move-form").classList.toggle("hidden", !form.visible || form.role !== "I");
  el("answer-form").classList.toggle("hidden", !form.visible || form.role !== "II");
  el("eps-field").classList.toggle("hidden", !form.needsEps);
  el("pi-answer-b").classList.toggle("hidden", state.kind !== "PI");
  el<HTMLElement>("turn-note").textContent =
    state.status === "Finished" ? "Game over."
      : form.visible ? `You act as Player ${form.role}.` : "Waiting for the engine...";
}

async function enterSession(id: string) {
  clearError("game-error");
  try {
    const state = await api.getSession(id);
    el("lobby").classList.add("hidden");
    el("game").classList.remove("hidden");
    applyState(state);
    if (pollTimer !== null) {
      clearInterval(pollTimer);
    }
    pollTimer = window.setInterval(poll, POLL_MS);
  } catch (err) {
    showError("lobby-error", err);
  }
}

async function poll() {
  if (!currentState) {
    return;
  }
  try {
    applyState(await api.getSession(currentState.id));
  } catch (err) {
    if (err instanceof ApiRequestError && err.code === "UNKNOWN_SESSION") {
      toLobby();
    }
    // transient network failures: keep polling
  }
}

async function submitCreate(evt: Event) {
  evt.preventDefault();
  clearError("lobby-error");
  const engine = el<HTMLSelectElement>("create-engine").value;
  try {
    const state = await api.createSession({
      kind: el<HTMLSelectElement>("create-kind").value as "EFD" | "PI",
      A: el<HTMLInputElement>("create-a").value.trim(),
      B: el<HTMLInputElement>("create-b").value.trim(),
      clock: el<HTMLInputElement>("create-clock").value.trim(),
      engine: engine === "none" ? null : (engine as "I" | "II"),
      strategy: el<HTMLInputElement>("create-strategy").value.trim() || "auto",
      seed: Number(el<HTMLInputElement>("create-seed").value || "0"),
    });
    await enterSession(state.id);
  } catch (err) {
    showError("lobby-error", err);
  }
}

async function validateClockField(input: HTMLInputElement, noteId: string) {
  const note = el<HTMLElement>(noteId);
  const text = input.value.trim();
  if (!text) {
    note.textContent = "";
    return;
  }
  try {
    const res = await api.parseOrdinal(text);
    note.textContent = res.ok ? `= ${res.canonical}` : `${res.error}`;
    note.classList.toggle("invalid", !res.ok);
  } catch {
    note.textContent = "";
  }
}

async function submitMove(evt: Event) {
  evt.preventDefault();
  if (!currentState) {
    return;
  }
  clearError("game-error");
  const kind = structureKind(currentState.a);
  try {
    const payload = probePayload(currentState.kind, {
      clock: el<HTMLInputElement>("move-clock").value,
      side: el<HTMLSelectElement>("move-side").value as "A" | "B",
      element: el<HTMLInputElement>("move-element").value,
      eps: el<HTMLInputElement>("move-eps").value,
    }, kind);
    applyState(await api.postMove(currentState.id, payload));
  } catch (err) {
    showError("game-error", err);   // inputs stay untouched for retry
  }
}

async function submitAnswer(evt: Event) {
  evt.preventDefault();
  if (!currentState) {
    return;
  }
  clearError("game-error");
  const kind = structureKind(currentState.a);
  try {
    const payload = answerPayload(
      currentState.kind,
      el<HTMLInputElement>("answer-element").value,
      kind,
      el<HTMLInputElement>("answer-element-b").value,
    );
    applyState(await api.postMove(currentState.id, payload));
  } catch (err) {
    showError("game-error", err);
  }
}

export function boot() {
  el("create-form").addEventListener("submit", submitCreate);
  el("move-form").addEventListener("submit", submitMove);
  el("answer-form").addEventListener("submit", submitAnswer);
  el("leave").addEventListener("click", (evt) => {
    evt.preventDefault();
    toLobby();
  });
  const clockInput = el<HTMLInputElement>("create-clock");
  clockInput.addEventListener("blur", () => void validateClockField(clockInput, "clock-note"));
  const moveClock = el<HTMLInputElement>("move-clock");
  moveClock.addEventListener("blur", () => void validateClockField(moveClock, "move-clock-note"));
  el("session-list").addEventListener("click", (evt) => {
    const target = evt.target as HTMLElement;
    const id = target.dataset?.session;
    if (id) {
      evt.preventDefault();
      void enterSession(id);
    }
  });
  void refreshSessionList();
}

if (typeof document !== "undefined" && document.getElementById("lobby")) {
  boot();
}
