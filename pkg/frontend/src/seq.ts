/** Request sequencing: every refresh gets a sequence number, and a
 * response only lands if no newer refresh was issued meanwhile. */

export class SequenceGate {
  private issued = 0;
  private applied = 0;

  issue(): number {
    this.issued += 1;
    return this.issued;
  }

  /** True when seq is still the newest issued. */
  isCurrent(seq: number): boolean {
    return seq === this.issued;
  }

  /** Try to land a response; superseded sequence numbers are refused. */
  apply(seq: number): boolean {
    if (!this.isCurrent(seq)) {
      return false;
    }
    this.applied = seq;
    return true;
  }

  get lastApplied(): number {
    return this.applied;
  }

  get lastIssued(): number {
    return this.issued;
  }
}

/** Trailing-edge debounce: rapid calls collapse so the wrapped action
 * runs at most once per interval, always with the latest arguments. */
export class Debouncer {
  private readonly intervalMs: number;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private lastRun = 0;

  constructor(intervalMs = 100) {
    this.intervalMs = intervalMs;
  }

  schedule(action: () => void): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    const elapsed = Date.now() - this.lastRun;
    if (elapsed >= this.intervalMs) {
      this.lastRun = Date.now();
      action();
      return;
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      this.lastRun = Date.now();
      action();
    }, this.intervalMs - elapsed);
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }
}
