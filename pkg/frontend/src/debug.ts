/** Debug log: a bounded record of every request the explorer issued,
 * what came back, and whether the response was applied or discarded.
 * The panel exists so every number on screen can be traced to the
 * exact response body it was read from.
 */

export type Outcome = "applied" | "discarded" | "error";

export interface DebugEntry {
  seq: number;
  url: string;
  status: number;
  ms: number;
  outcome: Outcome;
  /** Raw response body, kept verbatim for cross-checking. */
  body: string;
}

export class DebugLog {
  private readonly limit: number;
  private entries_: DebugEntry[] = [];

  constructor(limit = 200) {
    this.limit = limit;
  }

  push(entry: DebugEntry): void {
    this.entries_.push(entry);
    if (this.entries_.length > this.limit) {
      this.entries_.splice(0, this.entries_.length - this.limit);
    }
  }

  /** Newest first. */
  entries(): DebugEntry[] {
    return [...this.entries_].reverse();
  }

  /** Most recent applied entry for a URL, if any. */
  appliedFor(url: string): DebugEntry | undefined {
    for (let i = this.entries_.length - 1; i >= 0; i -= 1) {
      const e = this.entries_[i];
      if (e !== undefined && e.url === url && e.outcome === "applied") {
        return e;
      }
    }
    return undefined;
  }

  bySeq(seq: number): DebugEntry[] {
    return this.entries_.filter((e) => e.seq === seq);
  }

  clear(): void {
    this.entries_ = [];
  }
}

/** Walk a dotted path ("metrics.components.component_count", array
 * indices as bare numbers) through parsed JSON. */
export function lookupPath(doc: unknown, path: string): unknown {
  let cur: unknown = doc;
  for (const part of path.split(".")) {
    if (cur === null || cur === undefined) return undefined;
    if (Array.isArray(cur)) {
      const idx = Number(part);
      if (!Number.isInteger(idx)) return undefined;
      cur = cur[idx];
    } else if (typeof cur === "object") {
      cur = (cur as Record<string, unknown>)[part];
    } else {
      return undefined;
    }
  }
  return cur;
}
