// Entry point: fetch tasks for the annotator named in the query string and
// run the annotate/submit loop until the queue is empty.

import { ApiClient, ApiError, OfflineQueue } from "./client";
import {
  renderDone,
  renderError,
  renderGradingPage,
  renderProgress,
  renderStylePage,
} from "./render";
import { GradingState, StyleState, stateFor, type TaskState } from "./session";
import type { Label } from "./types";

function requireElement(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

async function refreshProgress(
  client: ApiClient,
  bar: HTMLElement,
): Promise<void> {
  try {
    bar.innerHTML = renderProgress(await client.getProgress(), client.annotator);
  } catch {
    // progress is cosmetic; never block annotation on it
  }
}

function wireStyle(root: HTMLElement, state: StyleState, redraw: () => void) {
  root.querySelectorAll<HTMLElement>("[data-choice]").forEach((el) => {
    el.addEventListener("click", () => {
      state.choose(Number(el.dataset.choice));
      redraw();
    });
  });
}

function wireGrading(root: HTMLElement, state: GradingState, redraw: () => void) {
  root.querySelectorAll<HTMLButtonElement>("button[data-line]").forEach((el) => {
    el.addEventListener("click", () => {
      state.setLabel(Number(el.dataset.line), el.dataset.label as Label);
      redraw();
    });
  });
}

export async function run(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const annotator = params.get("annotator") ?? "";
  const main = requireElement("main");
  const bar = requireElement("progressbar");
  const status = requireElement("status");
  if (!annotator) {
    main.innerHTML = renderError("add ?annotator=<your id> to the URL");
    return;
  }

  const client = new ApiClient(window.location.origin, annotator);
  const queue = new OfflineQueue(client, window.localStorage);
  let keyHandler: ((ev: KeyboardEvent) => void) | null = null;

  const nextTask = async (): Promise<void> => {
    if (keyHandler) document.removeEventListener("keydown", keyHandler);
    await queue.flush().catch(() => undefined);
    await refreshProgress(client, bar);

    let resp;
    try {
      resp = await client.getTask();
    } catch (err) {
      main.innerHTML = renderError(
        err instanceof ApiError ? err.message : "service unreachable",
      );
      return;
    }
    if (resp.task === null) {
      main.innerHTML = renderDone();
      return;
    }

    const state: TaskState = stateFor(resp.task);
    const redraw = () => {
      main.innerHTML =
        state instanceof StyleState
          ? renderStylePage(state)
          : renderGradingPage(state);
      const check = state.validate();
      status.textContent = check.ok ? "" : check.problems.join("; ");
      const submit = document.createElement("button");
      submit.id = "submit";
      submit.textContent = "Submit";
      submit.disabled = !check.ok;
      submit.addEventListener("click", () => void doSubmit());
      main.append(submit);
      if (state instanceof StyleState) wireStyle(main, state, redraw);
      else wireGrading(main, state, redraw);
    };

    const doSubmit = async (): Promise<void> => {
      if (!state.validate().ok) return;
      try {
        const ack = await queue.submitOrQueue(
          resp.task!.assignment_id,
          state.submission(),
        );
        status.textContent = ack
          ? ""
          : "saved offline; will retry automatically";
      } catch (err) {
        status.textContent =
          err instanceof ApiError ? err.message : String(err);
        return;
      }
      await nextTask();
    };

    if (state instanceof StyleState) {
      keyHandler = (ev: KeyboardEvent) => {
        if (state.handleKey(ev.key)) redraw();
        else if (ev.key === "Enter") void doSubmit();
      };
      document.addEventListener("keydown", keyHandler);
    }
    redraw();
  };

  await nextTask();
}

if (typeof document !== "undefined" && document.getElementById("main")) {
  void run();
}
