// HTTP client for the annotation service: retrying fetch wrapper plus an
// offline submission queue.  Submits are safe to replay because the server
// answers duplicates with the original acknowledgement.

import type { Progress, SubmitAck, Submission, TaskResponse } from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface RetryOptions {
  retries?: number;
  baseDelayMs?: number;
  sleep?: (ms: number) => Promise<void>;
}

const defaultSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

/** Retry on network failure and 5xx with exponential backoff; 4xx responses
 * are the server rejecting the request and are never retried. */
export async function withRetry<T>(
  task: () => Promise<T>,
  opts: RetryOptions = {},
): Promise<T> {
  const retries = opts.retries ?? 3;
  const base = opts.baseDelayMs ?? 250;
  const sleep = opts.sleep ?? defaultSleep;
  let lastError: unknown;
  for (let attempt = 0; attempt <= retries; attempt++) {
    try {
      return await task();
    } catch (err) {
      if (err instanceof ApiError && err.status < 500) throw err;
      lastError = err;
      if (attempt === retries) break;
      await sleep(base * 2 ** attempt + Math.floor(Math.random() * 100));
    }
  }
  throw lastError;
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    readonly annotator: string,
    private readonly fetchImpl: FetchLike = (...a) => globalThis.fetch(...a),
    private readonly retry: RetryOptions = {},
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    return withRetry(async () => {
      const res = await this.fetchImpl(this.baseUrl + path, init);
      if (!res.ok) {
        let message = `HTTP ${res.status}`;
        try {
          const body = await res.json();
          if (body && typeof body.error === "string") message = body.error;
        } catch {
          // non-JSON error body: keep the status message
        }
        throw new ApiError(res.status, message);
      }
      return (await res.json()) as T;
    }, this.retry);
  }

  getTask(): Promise<TaskResponse> {
    const q = new URLSearchParams({ annotator: this.annotator });
    return this.request<TaskResponse>(`/api/task?${q}`);
  }

  submit(assignmentId: string, body: Submission): Promise<SubmitAck> {
    return this.request<SubmitAck>("/api/submit", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        assignment_id: assignmentId,
        annotator: this.annotator,
        ...body,
      }),
    });
  }

  getProgress(): Promise<Progress> {
    return this.request<Progress>("/api/progress");
  }

  async exportNdjson(adminToken: string, task?: string): Promise<string> {
    const q = new URLSearchParams({ token: adminToken });
    if (task) q.set("task", task);
    const res = await this.fetchImpl(`${this.baseUrl}/api/export?${q}`);
    if (!res.ok) throw new ApiError(res.status, `HTTP ${res.status}`);
    return res.text();
  }
}

interface QueuedSubmit {
  assignmentId: string;
  body: Submission;
}

/** Minimal persistence surface so tests can inject a map-backed store and
 * the browser can use localStorage. */
export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export class MemoryStore implements KeyValueStore {
  private map = new Map<string, string>();
  getItem(key: string) {
    return this.map.get(key) ?? null;
  }
  setItem(key: string, value: string) {
    this.map.set(key, value);
  }
  removeItem(key: string) {
    this.map.delete(key);
  }
}

/** Holds submissions that failed with a network error (never validation
 * errors) and replays them in order.  Survives reloads via the store. */
export class OfflineQueue {
  private readonly key: string;

  constructor(
    private readonly client: ApiClient,
    private readonly store: KeyValueStore,
  ) {
    this.key = `annotator-ui:queue:${client.annotator}`;
  }

  pending(): QueuedSubmit[] {
    const raw = this.store.getItem(this.key);
    return raw ? (JSON.parse(raw) as QueuedSubmit[]) : [];
  }

  private save(items: QueuedSubmit[]): void {
    if (items.length === 0) this.store.removeItem(this.key);
    else this.store.setItem(this.key, JSON.stringify(items));
  }

  /** Submit now; on transport failure park the submission for later flush.
   * Validation rejections (4xx) propagate to the caller unqueued. */
  async submitOrQueue(
    assignmentId: string,
    body: Submission,
  ): Promise<SubmitAck | null> {
    try {
      return await this.client.submit(assignmentId, body);
    } catch (err) {
      if (err instanceof ApiError && err.status < 500) throw err;
      this.save([...this.pending(), { assignmentId, body }]);
      return null;
    }
  }

  /** Replay queued submissions oldest-first; stops at the first transport
   * failure so order is preserved.  Returns acks for everything delivered. */
  async flush(): Promise<SubmitAck[]> {
    const items = this.pending();
    const acks: SubmitAck[] = [];
    while (items.length > 0) {
      const item = items[0]!;
      try {
        acks.push(await this.client.submit(item.assignmentId, item.body));
      } catch (err) {
        if (err instanceof ApiError && err.status < 500) {
          // rejected outright: drop it, replaying forever would not help
          items.shift();
          this.save(items);
          throw err;
        }
        break;
      }
      items.shift();
      this.save(items);
    }
    return acks;
  }
}
