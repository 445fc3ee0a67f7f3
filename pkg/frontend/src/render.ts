// Deterministic HTML-string rendering of positions: ordinal orders as
// annotated number lines, step functions as bar charts, algebra vectors as
// tables. No client-side game logic lives here.

import type { AlgebraElement, ElementJson, GroupElement, RoundJson, SessionState } from "./types.js";
import { buildViewModel } from "./model.js";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderClockBadge(clock: string): string {
  return `<span class="clock-badge">clock <strong>${esc(clock)}</strong></span>`;
}

function isGroupElement(e: ElementJson): e is GroupElement {
  return typeof e === "object" && !Array.isArray(e) && "breakpoints" in e;
}

export function renderElement(e: ElementJson): string {
  if (typeof e === "string") {
    return `<span class="ord">${esc(e)}</span>`;
  }
  if (isGroupElement(e)) {
    return renderStepFunction(e);
  }
  return renderAlgebraVector(e as AlgebraElement);
}

export function renderStepFunction(f: GroupElement): string {
  const cells = f.values.map((v, i) => {
    const left = f.breakpoints[i];
    const right = f.breakpoints[i + 1];
    const height = barHeight(v);
    return `<div class="bar" style="height:${height}px" data-value="${esc(v)}" ` +
      `title="[${esc(left)}${i === 0 ? "" : "+1"}, ${esc(right)}] = ${esc(v)}"></div>`;
  }).join("");
  return `<div class="stepfn" data-ambient="${esc(f.ambient)}">${cells}</div>`;
}

function barHeight(value: string): number {
  const [num, den] = value.split("/").map(Number);
  const x = den ? num / den : num;
  return Math.max(4, Math.min(60, Math.round(Math.abs(x) * 12 + 4)));
}

export function renderAlgebraVector(v: AlgebraElement): string {
  const cols = v.map(([re, im]) => {
    const imPart = im === "0" ? "" : `${im.startsWith("-") ? "" : "+"}${im}i`;
    return `<td>${esc(re)}${esc(imPart)}</td>`;
  }).join("");
  return `<table class="vector"><tr>${cols}</tr></table>`;
}

// Number line: the probed points of one side, in play order, labeled with
// their notations. The geometry is symbolic (equal spacing), the labels
// carry the real positions.
export function renderNumberLine(label: string, points: string[]): string {
  const unique = [...new Set(points)];
  const marks = unique.map((p) =>
    `<span class="mark"><span class="dot"></span><span class="lbl">${esc(p)}</span></span>`).join("");
  return `<div class="numline"><span class="side-label">${esc(label)}</span>${marks}` +
    `${unique.length === 0 ? '<span class="empty">no points yet</span>' : ""}</div>`;
}

export function renderRound(r: RoundJson, index: number): string {
  const eps = r.eps ? ` <span class="eps">eps=${esc(r.eps)}</span>` : "";
  const answer = (typeof r.answer === "object" && r.answer !== null && "a" in r.answer)
    ? `a: ${renderElement((r.answer as { a: AlgebraElement }).a)} / b: ` +
      renderElement((r.answer as { b: AlgebraElement }).b)
    : renderElement(r.answer as ElementJson);
  return `<li class="round"><span class="rnd">#${index}</span> ` +
    `${renderClockBadge(r.clock)} <span class="side">side ${esc(r.side)}</span>${eps} ` +
    `probe ${renderElement(r.move)} &rarr; answer ${answer}</li>`;
}

export function renderBoard(state: SessionState): string {
  const vm = buildViewModel(state);
  const parts: string[] = [];
  parts.push(`<h2>${esc(vm.title)}</h2>`);
  parts.push(renderClockBadge(state.current_clock));
  if (vm.rounds.length === 0 && !vm.pending) {
    parts.push('<p class="empty-position">Empty position.</p>');
  }
  if (typeof (vm.rounds[0]?.move ?? "") === "string") {
    const aPoints = vm.rounds.filter((r) => r.side === "A").map((r) => r.move as string)
      .concat(vm.rounds.filter((r) => r.side === "B").map((r) => r.answer as string));
    const bPoints = vm.rounds.filter((r) => r.side === "B").map((r) => r.move as string)
      .concat(vm.rounds.filter((r) => r.side === "A").map((r) => r.answer as string));
    if (state.a.startsWith("order:")) {
      parts.push(renderNumberLine(`A = ${state.a}`, aPoints));
      parts.push(renderNumberLine(`B = ${state.b}`, bPoints));
    }
  }
  parts.push(`<ol class="rounds">${vm.rounds.map(renderRound).join("")}</ol>`);
  if (vm.pending) {
    parts.push(`<p class="pending">Player I probed ${renderElement(vm.pending.element)} on side ` +
      `${esc(vm.pending.side)} at ${renderClockBadge(vm.pending.clock)}` +
      `${vm.pending.eps ? ` with eps=${esc(vm.pending.eps)}` : ""}; awaiting the answer.</p>`);
  }
  if (vm.verdictBanner) {
    parts.push(`<div class="verdict">${esc(vm.verdictBanner)}</div>`);
    if (state.witness) {
      parts.push(`<pre class="witness">${esc(JSON.stringify(state.witness, null, 2))}</pre>`);
    }
  }
  return parts.join("\n");
}
