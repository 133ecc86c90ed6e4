/** End-to-end: a scripted explorer session against the real service.
 *
 * A throwaway server process is started on a random port; the app goes
 * through upload, threshold moves, a forced stale-response race, and
 * the big-view fallback, with every displayed number checked against
 * the debug log's backing bodies.
 */

import { spawn } from 'node:child_process';
import type { ChildProcess } from 'node:child_process';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import type { FetchLike } from '../src/api.js';
import { ExplorerApp } from '../src/controller.js';
import { backingValue, sleep } from './helpers.js';

const PORT = 21000 + Math.floor(Math.random() * 18000);
const BASE = `http://127.0.0.1:${PORT}`;

let proc: ChildProcess | null = null;
let stderrTail = '';

const realFetch: FetchLike = (url, init) => fetch(url, init);

function numbersByLabel(app: ExplorerApp): Map<string, number | null> {
  return new Map(app.snapshot().numbers.map((n) => [n.label, n.value]));
}

function checkAllNumbersBacked(app: ExplorerApp): void {
  const vm = app.snapshot();
  expect(vm.numbers.length).toBeGreaterThan(0);
  for (const n of vm.numbers) {
    expect(backingValue(app.debug, n), `${n.label} via ${n.url}`).toBe(n.value);
  }
}

beforeAll(async () => {
  proc = spawn(
    'python3',
    ['-m', 'topofilter.cli', 'serve', '--port', String(PORT), '--budget', '0.5'],
    { stdio: ['ignore', 'ignore', 'pipe'] },
  );
  proc.stderr?.on('data', (chunk: Buffer) => {
    stderrTail = (stderrTail + chunk.toString()).slice(-4000);
  });
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const res = await fetch(`${BASE}/graphs`);
      if (res.status === 200) return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      throw new Error(`server did not come up on ${PORT}:\n${stderrTail}`);
    }
    await sleep(250);
  }
}, 40_000);

afterAll(() => {
  proc?.kill('SIGTERM');
});

describe('explorer against the live service', () => {
  it('walks the triangle through max-mode thresholds', async () => {
    const app = new ExplorerApp(new ApiClient(BASE, realFetch));
    await app.uploadGraph('triangle', 'edge-list', '1 2\n2 3\n3 1\n');
    let vm = app.snapshot();
    expect(vm.error).toBeNull();
    expect(vm.state.graph).toBe('triangle');
    expect(vm.state.maxDegree).toBe(2);
    expect(vm.state.d).toBe(2);
    expect(numbersByLabel(app).get('nodes')).toBe(3);
    expect(vm.view?.nodes).toHaveLength(3);
    checkAllNumbersBacked(app);

    await app.setD(1);
    vm = app.snapshot();
    expect(numbersByLabel(app).get('nodes')).toBe(0);
    expect(numbersByLabel(app).get('edges')).toBe(0);
    expect(vm.view?.nodes).toHaveLength(0);
    checkAllNumbersBacked(app);

    await app.setD(2);
    vm = app.snapshot();
    expect(numbersByLabel(app).get('nodes')).toBe(3);
    expect(numbersByLabel(app).get('edges')).toBe(3);
    expect(vm.view?.nodes).toHaveLength(3);
    checkAllNumbersBacked(app);
  });

  it('kcore and top-k modes agree with the triangle by hand', async () => {
    const app = new ExplorerApp(new ApiClient(BASE, realFetch));
    await app.selectGraph('triangle');
    await app.setMode('kcore');
    expect(app.snapshot().state.d).toBe(2);
    expect(numbersByLabel(app).get('nodes')).toBe(3);

    await app.setK(2);
    await app.setMode('top');
    const vm = app.snapshot();
    expect(numbersByLabel(app).get('nodes')).toBe(2);
    expect(numbersByLabel(app).get('implied threshold')).toBe(2);
    checkAllNumbersBacked(app);
  });

  it('discards the slow loser of a rapid slider race', async () => {
    const delayed: FetchLike = async (url, init) => {
      if (url.includes('/dis?') && url.includes('&d=1&')) {
        await sleep(400);
      }
      return fetch(url, init);
    };
    const app = new ExplorerApp(new ApiClient(BASE, delayed));
    await app.selectGraph('triangle');

    void app.setD(1);
    await sleep(50);
    await app.setD(2);
    await app.idle();

    const vm = app.snapshot();
    expect(vm.state.d).toBe(2);
    expect(numbersByLabel(app).get('nodes')).toBe(3);
    expect(vm.view?.nodes).toHaveLength(3);
    expect(vm.error).toBeNull();

    const entries = app.debug.entries();
    const discarded = entries.filter((e) => e.outcome === 'discarded');
    expect(discarded.some((e) => e.url.includes('d=1'))).toBe(true);
    // the stale refresh never got as far as requesting a drawing
    expect(
      entries.some((e) => e.url.includes('/layout') && e.url.includes('d=1')),
    ).toBe(false);
    checkAllNumbersBacked(app);
  });

  it('rejects a bad threshold inline without losing the view', async () => {
    const raw = new ApiClient(BASE, realFetch);
    const app = new ExplorerApp(raw);
    await app.selectGraph('triangle');
    // bypass the clamped setters: ask for a fraction the server refuses
    const err = await raw
      .getJson('/graphs/triangle/dis-top?k=2&fraction=0.5')
      .catch((e: unknown) => e);
    expect((err as { code: string }).code).toBe('bad_request');
    // the app itself is untouched
    expect(numbersByLabel(app).get('nodes')).toBe(3);
  });

  it('falls back to the largest component above the render limit', async () => {
    const lines: string[] = [];
    for (let i = 0; i < 1999; i += 1) {
      lines.push(`p${i} p${i + 1}`);
    }
    for (let j = 0; j < 1499; j += 1) {
      lines.push(`hub s${j}`);
    }
    const app = new ExplorerApp(new ApiClient(BASE, realFetch));
    await app.setAlgorithm('circular');
    await app.uploadGraph('big', 'edge-list', `${lines.join('\n')}\n`);

    const vm = app.snapshot();
    expect(vm.error).toBeNull();
    expect(numbersByLabel(app).get('nodes')).toBe(3500);
    expect(vm.banner).not.toBeNull();
    expect(vm.banner).toContain('3500');
    expect(vm.banner).toContain('2000');
    expect(numbersByLabel(app).get('drawn nodes')).toBe(2000);
    expect(vm.view?.nodes).toHaveLength(2000);
    checkAllNumbersBacked(app);
  }, 180_000);
});
