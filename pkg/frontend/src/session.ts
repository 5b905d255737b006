// Per-task UI state: the current answer in progress and its validity.
// Pure data + transitions; rendering and transport live elsewhere.

import {
  isStyleTask,
  type GradingTask,
  type Label,
  type StyleTask,
  type Submission,
  type Task,
} from "./types";
import {
  labelsBody,
  validateGradingLabels,
  validateStyleChoice,
  type ValidationResult,
} from "./validate";

export class StyleState {
  chosen: number | null = null;

  constructor(readonly task: StyleTask) {}

  choose(index: number): void {
    if (Number.isInteger(index) && index >= 0 && index < this.task.choices.length)
      this.chosen = index;
  }

  /** Digit keys 1..k select choices 0..k-1; other keys are ignored. */
  handleKey(key: string): boolean {
    const n = Number.parseInt(key, 10);
    if (!Number.isInteger(n) || n < 1 || n > this.task.choices.length)
      return false;
    this.choose(n - 1);
    return true;
  }

  validate(): ValidationResult {
    return validateStyleChoice(this.task, this.chosen);
  }

  submission(): Submission {
    return { chosen_index: this.chosen ?? -1 };
  }
}

export class GradingState {
  readonly labels = new Map<number, Label>();

  constructor(readonly task: GradingTask) {}

  isEligible(line: number): boolean {
    return this.task.eligible_lines.includes(line);
  }

  /** Tri-state toggle per line; setting the same label again clears it. */
  setLabel(line: number, label: Label): boolean {
    if (!this.isEligible(line)) return false;
    if (this.labels.get(line) === label) this.labels.delete(line);
    else this.labels.set(line, label);
    return true;
  }

  validate(): ValidationResult {
    return validateGradingLabels(this.task, this.labels);
  }

  submission(): Submission {
    return { labels: labelsBody(this.labels) };
  }
}

export type TaskState = StyleState | GradingState;

export function stateFor(task: Task): TaskState {
  return isStyleTask(task) ? new StyleState(task) : new GradingState(task);
}
