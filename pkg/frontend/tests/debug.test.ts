import { describe, expect, it } from 'vitest';

import { DebugLog, lookupPath } from '../src/debug.js';
import type { DebugEntry } from '../src/debug.js';

function entry(over: Partial<DebugEntry>): DebugEntry {
  return {
    seq: 1,
    url: '/x',
    status: 200,
    ms: 5,
    outcome: 'applied',
    body: '{}',
    ...over,
  };
}

describe('DebugLog', () => {
  it('returns entries newest first', () => {
    const log = new DebugLog();
    log.push(entry({ url: '/a' }));
    log.push(entry({ url: '/b' }));
    expect(log.entries().map((e) => e.url)).toEqual(['/b', '/a']);
  });

  it('drops the oldest entries past the limit', () => {
    const log = new DebugLog(3);
    for (let i = 0; i < 5; i += 1) {
      log.push(entry({ seq: i }));
    }
    const seqs = log.entries().map((e) => e.seq);
    expect(seqs).toEqual([4, 3, 2]);
  });

  it('appliedFor skips discarded entries and finds the newest applied', () => {
    const log = new DebugLog();
    log.push(entry({ url: '/a', body: 'first' }));
    log.push(entry({ url: '/a', body: 'second' }));
    log.push(entry({ url: '/a', body: 'stale', outcome: 'discarded' }));
    expect(log.appliedFor('/a')?.body).toBe('second');
    expect(log.appliedFor('/missing')).toBeUndefined();
  });

  it('bySeq collects all requests of one refresh', () => {
    const log = new DebugLog();
    log.push(entry({ seq: 7, url: '/a' }));
    log.push(entry({ seq: 8, url: '/b' }));
    log.push(entry({ seq: 7, url: '/c' }));
    expect(log.bySeq(7).map((e) => e.url)).toEqual(['/a', '/c']);
  });
});

describe('lookupPath', () => {
  const doc = {
    metrics: {
      nodes: 4,
      components: { sizes: [3, 1], component_count: 2 },
      apl: null,
    },
  };

  it('walks nested objects', () => {
    expect(lookupPath(doc, 'metrics.nodes')).toBe(4);
    expect(lookupPath(doc, 'metrics.components.component_count')).toBe(2);
  });

  it('indexes arrays with bare numbers', () => {
    expect(lookupPath(doc, 'metrics.components.sizes.0')).toBe(3);
    expect(lookupPath(doc, 'metrics.components.sizes.1')).toBe(1);
  });

  it('surfaces null values as null, not undefined', () => {
    expect(lookupPath(doc, 'metrics.apl')).toBeNull();
  });

  it('returns undefined for anything that is not there', () => {
    expect(lookupPath(doc, 'metrics.missing')).toBeUndefined();
    expect(lookupPath(doc, 'metrics.nodes.deeper')).toBeUndefined();
    expect(lookupPath(doc, 'metrics.components.sizes.x')).toBeUndefined();
    expect(lookupPath(doc, 'metrics.components.sizes.9')).toBeUndefined();
  });
});
