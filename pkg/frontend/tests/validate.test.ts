import { describe, expect, it } from "vitest";

import { labelsBody, validateGradingLabels, validateStyleChoice } from "../src/validate";
import type { GradingTask, Label, StyleTask } from "../src/types";

const styleTask: StyleTask = {
  assignment_id: "t1",
  task: "style",
  eval_lines: ["a b c"],
  choices: [["x"], ["y"], ["z"], ["w"]],
};

const gradingTask: GradingTask = {
  assignment_id: "t2",
  task: "coherence",
  lines: ["l0", "l1", "l2"],
  eligible_lines: [1, 2], // server excludes line 0 for coherence
};

describe("validateStyleChoice", () => {
  it("requires a selection", () => {
    const r = validateStyleChoice(styleTask, null);
    expect(r.ok).toBe(false);
    expect(r.problems[0]).toMatch(/pick/);
  });

  it("accepts in-range indices", () => {
    for (const i of [0, 1, 2, 3])
      expect(validateStyleChoice(styleTask, i).ok).toBe(true);
  });

  it("rejects out-of-range and fractional indices", () => {
    for (const i of [-1, 4, 1.5])
      expect(validateStyleChoice(styleTask, i).ok).toBe(false);
  });
});

describe("validateGradingLabels", () => {
  it("lists missing lines one-based for the annotator", () => {
    const r = validateGradingLabels(gradingTask, new Map([[1, "strong"]]));
    expect(r.ok).toBe(false);
    expect(r.problems.join(" ")).toContain("3"); // line index 2 shown as 3
  });

  it("accepts exactly the eligible lines", () => {
    const labels = new Map<number, Label>([
      [1, "weak"],
      [2, "none"],
    ]);
    expect(validateGradingLabels(gradingTask, labels).ok).toBe(true);
  });

  it("rejects labels on ineligible lines", () => {
    const labels = new Map<number, Label>([
      [0, "strong"],
      [1, "strong"],
      [2, "strong"],
    ]);
    const r = validateGradingLabels(gradingTask, labels);
    expect(r.ok).toBe(false);
    expect(r.problems.join(" ")).toMatch(/not gradable/);
  });
});

describe("labelsBody", () => {
  it("emits string keys in line order", () => {
    const labels = new Map<number, Label>([
      [2, "none"],
      [1, "strong"],
    ]);
    expect(Object.entries(labelsBody(labels))).toEqual([
      ["1", "strong"],
      ["2", "none"],
    ]);
  });
});
