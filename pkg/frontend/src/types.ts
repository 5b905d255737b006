// Wire types for the annotation service API.  Payloads are blind by design:
// the server never sends artist names, verse ids, or the correct choice.

export interface StyleTask {
  assignment_id: string;
  task: "style";
  eval_lines: string[];
  choices: string[][]; // one entry per candidate verse, each a list of lines
}

export interface GradingTask {
  assignment_id: string;
  task: "fluency" | "coherence";
  lines: string[];
  eligible_lines: number[]; // coherence excludes line 0 server-side
}

export type Task = StyleTask | GradingTask;

export type Label = "strong" | "weak" | "none";
export const LABELS: readonly Label[] = ["strong", "weak", "none"];

export interface TaskResponse {
  task: Task | null;
}

export type Submission =
  | { chosen_index: number }
  | { labels: Record<string, Label> };

export interface SubmitAck {
  ok: boolean;
  assignment_id: string;
  ack_id: number;
  duplicate: boolean;
}

export interface Progress {
  total: number;
  submitted: number;
  pending: number;
  complete: boolean;
  by_annotator: Record<string, { total: number; submitted: number }>;
}

export function isStyleTask(t: Task): t is StyleTask {
  return t.task === "style";
}
