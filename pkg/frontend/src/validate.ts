// Client-side mirrors of the server's submission validation, so the UI can
// block the submit button and explain what is missing before any request.

import { LABELS, type GradingTask, type Label, type StyleTask } from "./types";

export interface ValidationResult {
  ok: boolean;
  problems: string[];
}

const valid = (): ValidationResult => ({ ok: true, problems: [] });
const invalid = (...problems: string[]): ValidationResult => ({
  ok: false,
  problems,
});

export function validateStyleChoice(
  task: StyleTask,
  chosen: number | null,
): ValidationResult {
  if (chosen === null) return invalid("pick one of the candidate verses");
  if (!Number.isInteger(chosen) || chosen < 0 || chosen >= task.choices.length)
    return invalid(`choice must be between 1 and ${task.choices.length}`);
  return valid();
}

export function validateGradingLabels(
  task: GradingTask,
  labels: ReadonlyMap<number, Label>,
): ValidationResult {
  const problems: string[] = [];
  for (const [line, label] of labels) {
    if (!task.eligible_lines.includes(line))
      problems.push(`line ${line + 1} is not gradable for this task`);
    if (!LABELS.includes(label)) problems.push(`bad label ${String(label)}`);
  }
  const missing = task.eligible_lines.filter((i) => !labels.has(i));
  if (missing.length > 0)
    problems.push(
      `grade ${missing.length} more line(s): ${missing.map((i) => i + 1).join(", ")}`,
    );
  return problems.length === 0 ? valid() : invalid(...problems);
}

/** Submission body for a grading task, keyed the way the server expects. */
export function labelsBody(
  labels: ReadonlyMap<number, Label>,
): Record<string, Label> {
  const out: Record<string, Label> = {};
  for (const line of [...labels.keys()].sort((a, b) => a - b))
    out[String(line)] = labels.get(line)!;
  return out;
}
