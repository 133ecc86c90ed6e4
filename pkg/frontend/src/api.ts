/** Thin typed client over the analysis service.
 *
 * Every request is spaced by a rate limiter so the page as a whole never
 * issues more than ten per second, and slow computations that the server
 * parks behind a job id are polled transparently.
 */

import type { ErrorPayload, JobPayload, PendingPayload } from './types.js';

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.status = status;
    this.code = code;
  }
}

/** Subset of fetch the client needs; tests substitute fakes. */
export type FetchLike = (
  url: string,
  init?: { method?: string; body?: string },
) => Promise<{ status: number; text(): Promise<string> }>;

const MIN_INTERVAL_MS = 100;

/** Grants callers slots spaced at least MIN_INTERVAL_MS apart. */
export class RateLimiter {
  private last = 0;
  private chain: Promise<void> = Promise.resolve();

  acquire(): Promise<void> {
    const granted = this.chain.then(async () => {
      const wait = this.last + MIN_INTERVAL_MS - Date.now();
      if (wait > 0) {
        await new Promise((resolve) => setTimeout(resolve, wait));
      }
      this.last = Date.now();
    });
    // swallow so one rejected waiter cannot poison the chain
    this.chain = granted.then(
      () => undefined,
      () => undefined,
    );
    return granted;
  }
}

export interface RequestRecord {
  url: string;
  status: number;
  ms: number;
  body: unknown;
  /** Verbatim response text, kept for the debug panel. */
  text: string;
}

export class ApiClient {
  readonly base: string;
  private readonly fetchFn: FetchLike;
  private readonly limiter: RateLimiter;

  constructor(base: string, fetchFn?: FetchLike, limiter?: RateLimiter) {
    this.base = base.replace(/\/$/, '');
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
    this.limiter = limiter ?? new RateLimiter();
  }

  /** GET a JSON body, following the 202+poll protocol when the server
   * turns the computation into a job. */
  async getJson<T>(path: string, onRecord?: (rec: RequestRecord) => void): Promise<T> {
    const rec = await this.request(path);
    onRecord?.(rec);
    if (rec.status === 202) {
      const pending = rec.body as PendingPayload;
      return this.poll<T>(pending.poll, onRecord);
    }
    if (rec.status >= 400) {
      throw toApiError(rec);
    }
    return rec.body as T;
  }

  /** POST a graph file; body is the raw file text. */
  async upload<T>(
    name: string,
    format: string,
    body: string,
    onRecord?: (rec: RequestRecord) => void,
  ): Promise<T> {
    const path = `/graphs?name=${encodeURIComponent(name)}&format=${format}`;
    const rec = await this.request(path, { method: 'POST', body });
    onRecord?.(rec);
    if (rec.status >= 400) {
      throw toApiError(rec);
    }
    return rec.body as T;
  }

  private async poll<T>(
    pollPath: string,
    onRecord?: (rec: RequestRecord) => void,
  ): Promise<T> {
    const deadline = Date.now() + 60_000;
    for (;;) {
      await new Promise((resolve) => setTimeout(resolve, MIN_INTERVAL_MS));
      const rec = await this.request(pollPath);
      onRecord?.(rec);
      if (rec.status >= 400) {
        throw toApiError(rec);
      }
      const job = rec.body as JobPayload;
      if (job.status === 'done') {
        return job.result as T;
      }
      if (Date.now() > deadline) {
        throw new ApiError(0, 'timeout', `job ${job.job} still pending after 60s`);
      }
    }
  }

  private async request(
    path: string,
    init?: { method?: string; body?: string },
  ): Promise<RequestRecord> {
    await this.limiter.acquire();
    const started = Date.now();
    const res = await this.fetchFn(this.base + path, init);
    const text = await res.text();
    let body: unknown = null;
    try {
      body = JSON.parse(text);
    } catch {
      body = text;
    }
    return { url: path, status: res.status, ms: Date.now() - started, body, text };
  }
}

function toApiError(rec: RequestRecord): ApiError {
  const err = rec.body as Partial<ErrorPayload>;
  return new ApiError(
    rec.status,
    err.code ?? 'error',
    err.message ?? `request failed with status ${rec.status}`,
  );
}
