// Live round-trip against the real annotation service: the pipeline CLI
// builds pages from a fixture corpus, `verseval serve` hosts them, and the
// client completes a full scripted session over HTTP.

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdirSync, mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { createServer, type AddressInfo } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/client";
import { GradingState, StyleState, stateFor } from "../src/session";
import type { Label, SubmitAck, Task } from "../src/types";

const ARTISTS = ["artemis", "boreas", "castor", "daphne"];
const ADMIN_TOKEN = "roundtrip-admin-token";
const BANK = (
  "night bright street sweet deep green clean gold cold game " +
  "shame sound ground gray town down run love moon stone"
).split(" ");

function verseText(artistIdx: number, verse: number): string {
  const lines: string[] = [];
  for (let li = 0; li < 10; li++) {
    const start = artistIdx * 11 + verse * 7 + li * 3;
    const words: string[] = [];
    for (let w = 0; w < 5; w++) words.push(BANK[(start + w) % BANK.length]!);
    lines.push(words.join(" "));
  }
  return lines.join("\n");
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.on("error", reject);
    srv.listen(0, "127.0.0.1", () => {
      const port = (srv.address() as AddressInfo).port;
      srv.close(() => resolve(port));
    });
  });
}

function cli(cfgPath: string, ...args: string[]): void {
  const res = spawnSync("verseval", ["--config", cfgPath, ...args], {
    encoding: "utf-8",
  });
  if (res.status !== 0)
    throw new Error(
      `verseval ${args.join(" ")} failed (${res.status}): ${res.stderr}`,
    );
}

interface Recorded {
  url: string;
  text: string;
}

/** fetch wrapper that keeps the raw text of every annotator-facing response
 * so the blindness scan can inspect exactly what went over the wire. */
function recordingFetch(log: Recorded[]) {
  return async (url: string, init?: RequestInit): Promise<Response> => {
    const res = await fetch(url, init);
    const text = await res.text();
    log.push({ url, text });
    return new Response(text, {
      status: res.status,
      headers: { "content-type": res.headers.get("content-type") ?? "" },
    });
  };
}

let workspace: string;
let child: ChildProcess;
let base: string;
const served: Recorded[] = [];
const submitted: {
  annotator: string;
  task: string;
  lineCount?: number;
  body: { chosen_index?: number; labels?: Record<string, Label> };
  ack: SubmitAck;
}[] = [];

function clientFor(annotator: string): ApiClient {
  return new ApiClient(base, annotator, recordingFetch(served), {
    retries: 2,
    baseDelayMs: 100,
  });
}

async function completeAll(annotator: string): Promise<void> {
  const client = clientFor(annotator);
  let styleCount = 0;
  for (let guard = 0; guard < 100; guard++) {
    const { task } = await client.getTask();
    if (task === null) return;
    const state = stateFor(task as Task);
    if (state instanceof StyleState) {
      state.choose(styleCount++ % state.task.choices.length);
    } else {
      const labels: Label[] = ["strong", "weak", "none"];
      for (const [k, line] of state.task.eligible_lines.entries())
        state.setLabel(line, labels[k % labels.length]!);
    }
    expect(state.validate().ok).toBe(true);
    const ack = await client.submit(task.assignment_id, state.submission());
    expect(ack.ok).toBe(true);
    expect(ack.duplicate).toBe(false);
    submitted.push({
      annotator,
      task: task.task,
      lineCount: state instanceof GradingState ? state.task.lines.length : undefined,
      body: state.submission() as (typeof submitted)[number]["body"],
      ack,
    });
  }
  throw new Error("task queue did not drain");
}

beforeAll(async () => {
  workspace = mkdtempSync(join(tmpdir(), "annotator-ui-"));
  for (const [i, artist] of ARTISTS.entries()) {
    const dir = join(workspace, "corpus", artist);
    mkdirSync(dir, { recursive: true });
    const verses = [0, 1, 2].map((v) => verseText(i, v));
    writeFileSync(join(dir, "songs.txt"), verses.join("\n\n") + "\n");
  }
  const port = await freePort();
  base = `http://127.0.0.1:${port}`;
  const cfgPath = join(workspace, "config.json");
  writeFileSync(
    cfgPath,
    JSON.stringify({
      corpus_root: join(workspace, "corpus"),
      output_dir: join(workspace, "out"),
      seed: 23,
      eval_verses_per_artist: 1,
      service_port: port,
      roster: ["scripted1", "scripted2"],
      admin_token: ADMIN_TOKEN,
    }),
  );
  cli(cfgPath, "ingest");
  cli(cfgPath, "pages");

  child = spawn("verseval", ["--config", cfgPath, "serve", "--grade-all"], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const res = await fetch(`${base}/api/progress`);
      if (res.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("service did not start");
    await new Promise((r) => setTimeout(r, 200));
  }
}, 60_000);

afterAll(() => {
  child?.kill("SIGTERM");
  if (workspace) rmSync(workspace, { recursive: true, force: true });
});

describe("scripted session round-trip", () => {
  it("completes every assigned task, including style pages and a 10-line fluency verse", async () => {
    await completeAll("scripted1");
    await completeAll("scripted2");

    const progress = await clientFor("scripted1").getProgress();
    expect(progress.complete).toBe(true);
    expect(progress.pending).toBe(0);

    const styles = submitted.filter((s) => s.task === "style");
    const fluency = submitted.filter((s) => s.task === "fluency");
    expect(styles.length).toBeGreaterThan(0);
    expect(fluency.length).toBeGreaterThan(0);
    expect(fluency.some((s) => s.lineCount === 10)).toBe(true);
  });

  it("never serves artist identity in any payload", () => {
    expect(served.length).toBeGreaterThan(0);
    for (const { url, text } of served) {
      for (const artist of ARTISTS) {
        expect(text.toLowerCase(), url).not.toContain(artist);
      }
      expect(text, url).not.toMatch(/:v\d{3}/); // verse id shape
      expect(text, url).not.toContain("page_id");
      expect(text, url).not.toContain("provenance");
    }
  });

  it("answers a double submit with the original ack and keeps one record", async () => {
    const first = submitted.find((s) => s.task === "style");
    expect(first).toBeDefined();
    const client = clientFor(first!.annotator);
    const again = await client.submit(first!.ack.assignment_id, {
      chosen_index: 3, // contradictory resubmission must not overwrite
    });
    expect(again.duplicate).toBe(true);
    expect(again.ack_id).toBe(first!.ack.ack_id);

    const ndjson = await client.exportNdjson(ADMIN_TOKEN, "style");
    const records = ndjson.trim().split("\n").map((l) => JSON.parse(l));
    const mine = records.filter(
      (r) => r.annotator_id === first!.annotator,
    );
    expect(mine).toHaveLength(
      submitted.filter(
        (s) => s.task === "style" && s.annotator === first!.annotator,
      ).length,
    );
  });

  it("exports exactly the submitted records, in submission order", async () => {
    const client = clientFor("scripted1");
    const ndjson = await client.exportNdjson(ADMIN_TOKEN);
    const records = ndjson.trim().split("\n").map((l) => JSON.parse(l));

    const styleRecords = records.filter((r) => r.task === "style");
    const styleSubmitted = submitted.filter((s) => s.task === "style");
    expect(styleRecords.map((r) => [r.annotator_id, r.chosen_index])).toEqual(
      styleSubmitted.map((s) => [s.annotator, s.body.chosen_index]),
    );

    for (const task of ["fluency", "coherence"]) {
      const taskRecords = records.filter((r) => r.task === task);
      const want = submitted
        .filter((s) => s.task === task)
        .flatMap((s) =>
          Object.entries(s.body.labels!).map(([line, label]) => [
            s.annotator,
            Number(line),
            label,
          ]),
        );
      expect(
        taskRecords.map((r) => [r.annotator_id, r.line_index, r.label]),
      ).toEqual(want);
    }
    expect(records).toHaveLength(
      styleSubmitted.length +
        submitted
          .filter((s) => s.task !== "style")
          .reduce((n, s) => n + Object.keys(s.body.labels!).length, 0),
    );
  });

  it("rejects an export request without the admin token", async () => {
    const res = await fetch(`${base}/api/export`);
    expect(res.status).toBe(403);
  });
});
