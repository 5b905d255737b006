// HTML renderers: pure string functions so they are testable without a DOM.
// main.ts injects the output and wires events by element id/data attributes.

import type { GradingState, StyleState } from "./session";
import { LABELS, type Progress } from "./types";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const verseBlock = (lines: string[]): string =>
  `<div class="verse">${lines
    .map((l) => `<div class="line">${escapeHtml(l)}</div>`)
    .join("")}</div>`;

export function renderStylePage(state: StyleState): string {
  const { task } = state;
  const choices = task.choices
    .map((lines, i) => {
      const selected = state.chosen === i ? " selected" : "";
      return (
        `<div class="choice${selected}" data-choice="${i}">` +
        `<div class="choice-key">${i + 1}</div>${verseBlock(lines)}</div>`
      );
    })
    .join("");
  return (
    `<section class="style-task">` +
    `<h2>Which verse is by the same artist?</h2>` +
    `<p class="hint">Press 1–${task.choices.length} or click a candidate.</p>` +
    `<div class="eval">${verseBlock(task.eval_lines)}</div>` +
    `<div class="choices">${choices}</div>` +
    `</section>`
  );
}

const TASK_PROMPTS: Record<string, string> = {
  fluency: "Grade each line on its own: is it fluent English?",
  coherence:
    "Grade each line against the lines before it: does it fit? " +
    "The first line has nothing to cohere with and is not graded.",
};

export function renderGradingPage(state: GradingState): string {
  const { task } = state;
  const rows = task.lines
    .map((line, i) => {
      if (!state.isEligible(i))
        return (
          `<div class="grade-row ineligible">` +
          `<span class="line">${escapeHtml(line)}</span>` +
          `<span class="controls muted">not graded</span></div>`
        );
      const buttons = LABELS.map((label) => {
        const on = state.labels.get(i) === label ? " on" : "";
        return (
          `<button class="label${on}" data-line="${i}" ` +
          `data-label="${label}">${label}</button>`
        );
      }).join("");
      return (
        `<div class="grade-row"><span class="line">${escapeHtml(line)}</span>` +
        `<span class="controls">${buttons}</span></div>`
      );
    })
    .join("");
  return (
    `<section class="grading-task">` +
    `<h2>${escapeHtml(task.task)}</h2>` +
    `<p class="hint">${escapeHtml(TASK_PROMPTS[task.task] ?? "")}</p>` +
    `${rows}</section>`
  );
}

export function renderProgress(p: Progress, annotator: string): string {
  const mine = p.by_annotator[annotator];
  const done = mine ? mine.submitted : 0;
  const total = mine ? mine.total : 0;
  const pct = total === 0 ? 0 : Math.round((100 * done) / total);
  return (
    `<div class="progress" role="progressbar" aria-valuenow="${pct}">` +
    `<div class="bar" style="width:${pct}%"></div>` +
    `<span class="count">${done} / ${total}</span></div>`
  );
}

export function renderDone(): string {
  return `<section class="done"><h2>All tasks complete.</h2>` +
    `<p>Thank you — you can close this tab.</p></section>`;
}

export function renderError(message: string): string {
  return `<div class="error">${escapeHtml(message)}</div>`;
}
