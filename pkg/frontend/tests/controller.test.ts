import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { ExplorerApp } from '../src/controller.js';
import type { NodeRecord } from '../src/types.js';
import {
  FakeServer,
  InstantLimiter,
  backingValue,
  mkGraphBody,
  mkMetrics,
  mkSweep,
  sleep,
} from './helpers.js';

// triangle 1-2-3 plus a tail node 4 hanging off 3
const TRI_NODES: NodeRecord[] = [
  { id: '1', degree: 2 },
  { id: '2', degree: 2 },
  { id: '3', degree: 3 },
  { id: '4', degree: 1 },
];
const TRI_EDGES: [number, number][] = [
  [0, 1],
  [0, 2],
  [1, 2],
  [2, 3],
];

function placed(nodes: NodeRecord[]): NodeRecord[] {
  return nodes.map((n, i) => ({ ...n, x: i * 1.0, y: -i * 0.5 }));
}

const TRI_METRICS = mkMetrics({
  nodes: 4,
  edges: 4,
  maxDegree: 3,
  histogram: { '1': 1, '2': 2, '3': 1 },
  apl: 1.5,
});

// max d=1 keeps only the tail node, isolated
const D1_NODES: NodeRecord[] = [{ id: '4', degree: 0 }];
const D1_METRICS = mkMetrics({
  nodes: 1,
  edges: 0,
  maxDegree: 0,
  histogram: { '0': 1 },
  apl: null,
});

// max d=2 keeps 1, 2, 4; only the 1-2 edge survives
const D2_NODES: NodeRecord[] = [
  { id: '1', degree: 1 },
  { id: '2', degree: 1 },
  { id: '4', degree: 0 },
];
const D2_EDGES: [number, number][] = [[0, 1]];
const D2_METRICS = mkMetrics({
  nodes: 3,
  edges: 1,
  maxDegree: 1,
  histogram: { '0': 1, '1': 2 },
  sizes: [2, 1],
  ids: [0, 1],
  apl: 1.0,
});

const LAYOUT_META = { algorithm: 'force', seed: 0, iterations: 50 };

function triServer(): FakeServer {
  const server = new FakeServer();
  server.on('/graphs', [{ name: 'tri', nodes: 4, edges: 4 }]);
  server.on('/graphs/tri/metrics', {
    schema_version: 1,
    name: 'tri',
    ...TRI_METRICS,
  });
  server.on(
    '/graphs/tri/sweep?mode=max',
    mkSweep('tri', 'max', [
      [0, 0, 0],
      [1, 1, 1],
      [2, 3, 2 / 3],
      [3, 4, 1],
    ]),
  );
  server.on(
    '/graphs/tri/sweep?mode=min',
    mkSweep('tri', 'min', [
      [0, 4, 1],
      [1, 4, 1],
      [2, 3, 1],
      [3, 1, 1],
    ]),
  );
  server.on('/graphs/tri/tail-start?fraction=0.05', {
    schema_version: 1,
    name: 'tri',
    fraction: 0.05,
    d: 1,
  });

  server.on(
    '/graphs/tri/dis?mode=max&d=3&include=metrics',
    mkGraphBody('tri', TRI_NODES, TRI_EDGES, {
      provenance: { mode: 'max-dis', parameter: 3, implied_threshold: null },
      metrics: TRI_METRICS,
    }),
  );
  server.on(
    '/graphs/tri/layout?algorithm=force&seed=0&mode=max&d=3',
    mkGraphBody('tri', placed(TRI_NODES), TRI_EDGES, { layout: LAYOUT_META }),
  );

  server.on(
    '/graphs/tri/dis?mode=max&d=1&include=metrics',
    mkGraphBody('tri', D1_NODES, [], {
      provenance: { mode: 'max-dis', parameter: 1, implied_threshold: null },
      metrics: D1_METRICS,
    }),
  );
  server.on(
    '/graphs/tri/layout?algorithm=force&seed=0&mode=max&d=1',
    mkGraphBody('tri', placed(D1_NODES), [], { layout: LAYOUT_META }),
  );

  server.on(
    '/graphs/tri/dis?mode=max&d=2&include=metrics',
    mkGraphBody('tri', D2_NODES, D2_EDGES, {
      provenance: { mode: 'max-dis', parameter: 2, implied_threshold: null },
      metrics: D2_METRICS,
    }),
  );
  server.on(
    '/graphs/tri/layout?algorithm=force&seed=0&mode=max&d=2',
    mkGraphBody('tri', placed(D2_NODES), D2_EDGES, { layout: LAYOUT_META }),
  );

  return server;
}

function mkApp(server: FakeServer): ExplorerApp {
  return new ExplorerApp(new ApiClient('', server.fetch, new InstantLimiter()));
}

describe('ExplorerApp', () => {
  it('selectGraph loads statics and lands on the whole graph', async () => {
    const server = triServer();
    const app = mkApp(server);
    await app.selectGraph('tri');
    const vm = app.snapshot();
    expect(vm.state.graph).toBe('tri');
    expect(vm.state.d).toBe(3);
    expect(vm.state.maxDegree).toBe(3);
    expect(vm.state.nodeCount).toBe(4);
    expect(vm.histogram).toEqual({ '1': 1, '2': 2, '3': 1 });
    expect(vm.tailStartD).toBe(1);
    expect(vm.sweepMax?.mode).toBe('max');
    expect(vm.sweepMin?.mode).toBe('min');
    expect(vm.view?.nodes).toHaveLength(4);
    expect(vm.error).toBeNull();
    expect(vm.busy).toBe(false);

    const byLabel = new Map(vm.numbers.map((n) => [n.label, n.value]));
    expect(byLabel.get('graph nodes')).toBe(4);
    expect(byLabel.get('nodes')).toBe(4);
    expect(byLabel.get('edges')).toBe(4);
    expect(byLabel.get('components')).toBe(1);
    expect(byLabel.get('APL (largest comp)')).toBe(1.5);
    expect(byLabel.get('tail start d')).toBe(1);
  });

  it('fetches the numbers before the drawing', async () => {
    const server = triServer();
    const app = mkApp(server);
    await app.selectGraph('tri');
    const dis = server.served.findIndex((u) => u.includes('/dis?'));
    const layout = server.served.findIndex((u) => u.includes('/layout?'));
    expect(dis).toBeGreaterThanOrEqual(0);
    expect(layout).toBeGreaterThan(dis);
  });

  it('every displayed number is readable from a logged body', async () => {
    const server = triServer();
    const app = mkApp(server);
    await app.selectGraph('tri');
    await app.setD(2);
    const vm = app.snapshot();
    expect(vm.numbers.length).toBeGreaterThanOrEqual(8);
    for (const n of vm.numbers) {
      expect(backingValue(app.debug, n), n.label).toBe(n.value);
    }
  });

  it('setD refreshes counts, components and the view', async () => {
    const server = triServer();
    const app = mkApp(server);
    await app.selectGraph('tri');
    await app.setD(1);
    const vm = app.snapshot();
    const byLabel = new Map(vm.numbers.map((n) => [n.label, n.value]));
    expect(byLabel.get('nodes')).toBe(1);
    expect(byLabel.get('edges')).toBe(0);
    expect(vm.view?.nodes.map((n) => n.id)).toEqual(['4']);
    expect(vm.components).toEqual([{ id: 0, size: 1 }]);
  });

  it('discards a slow response that lost the race', async () => {
    const server = triServer();
    server.delay('&d=1&', 120);
    const app = mkApp(server);
    await app.selectGraph('tri');

    void app.setD(1);
    await sleep(10);
    await app.setD(2);
    await app.idle();

    const vm = app.snapshot();
    const byLabel = new Map(vm.numbers.map((n) => [n.label, n.value]));
    expect(vm.state.d).toBe(2);
    expect(byLabel.get('nodes')).toBe(3);
    expect(vm.view?.nodes).toHaveLength(3);
    expect(vm.error).toBeNull();

    const discarded = app.debug
      .entries()
      .filter((e) => e.outcome === 'discarded');
    expect(discarded.some((e) => e.url.includes('d=1'))).toBe(true);
    // the losing refresh stopped before asking for a drawing
    expect(server.served.some((u) => u.includes('layout') && u.includes('d=1'))).toBe(
      false,
    );
  });

  it('keeps the view and the slider position when the server rejects', async () => {
    const server = triServer();
    server.on('/graphs/tri/dis?mode=max&d=0&include=metrics', {
      schema_version: 1,
      code: 'bad_request',
      message: 'synthetic failure',
    }, 400);
    const app = mkApp(server);
    await app.selectGraph('tri');
    await app.setD(2);

    await app.setD(0);
    let vm = app.snapshot();
    expect(vm.error).toContain('bad_request');
    expect(vm.state.d).toBe(0);
    const byLabel = new Map(vm.numbers.map((n) => [n.label, n.value]));
    expect(byLabel.get('nodes')).toBe(3);
    expect(vm.view?.nodes).toHaveLength(3);

    await app.setD(2);
    vm = app.snapshot();
    expect(vm.error).toBeNull();
  });

  it('top mode goes through dis-top and shows the implied threshold', async () => {
    const server = triServer();
    server.on(
      '/graphs/tri/dis-top?k=2&include=metrics',
      mkGraphBody(
        'tri',
        [
          { id: '1', degree: 1 },
          { id: '3', degree: 1 },
        ],
        [[0, 1]],
        {
          provenance: { mode: 'top-k', parameter: 2, implied_threshold: 2 },
          metrics: mkMetrics({
            nodes: 2,
            edges: 1,
            maxDegree: 1,
            histogram: { '1': 2 },
            apl: 1.0,
          }),
        },
      ),
    );
    server.on(
      '/graphs/tri/layout?algorithm=force&seed=0&mode=top&k=2',
      mkGraphBody(
        'tri',
        placed([
          { id: '1', degree: 1 },
          { id: '3', degree: 1 },
        ]),
        [[0, 1]],
        { layout: LAYOUT_META },
      ),
    );
    const app = mkApp(server);
    await app.selectGraph('tri');
    await app.setK(2);
    await app.setMode('top');
    const vm = app.snapshot();
    const implied = vm.numbers.find((n) => n.label === 'implied threshold');
    expect(implied?.value).toBe(2);
    expect(implied?.path).toBe('provenance.implied_threshold');
    expect(backingValue(app.debug, implied!)).toBe(2);
    expect(server.served.some((u) => u.includes('mode=top&k=2'))).toBe(true);
  });

  it('component selection adds a sliced request for the panel', async () => {
    const server = triServer();
    const sliced = mkGraphBody('tri', [{ id: '4', degree: 0 }], [], {
      provenance: { mode: 'max-dis', parameter: 2, implied_threshold: null },
      metrics: mkMetrics({
        nodes: 1,
        edges: 0,
        maxDegree: 0,
        histogram: { '0': 1 },
        apl: null,
      }),
      component: 1,
    });
    server.on('/graphs/tri/dis?mode=max&d=2&include=metrics&component=1', sliced);
    server.on(
      '/graphs/tri/layout?algorithm=force&seed=0&mode=max&d=2&component=1',
      mkGraphBody('tri', placed([{ id: '4', degree: 0 }]), [], {
        layout: LAYOUT_META,
        component: 1,
      }),
    );
    const app = mkApp(server);
    await app.selectGraph('tri');
    await app.setD(2);
    await app.setComponent(1);
    const vm = app.snapshot();
    const nodesNumber = vm.numbers.find((n) => n.label === 'nodes');
    expect(nodesNumber?.value).toBe(1);
    expect(nodesNumber?.url).toContain('component=1');
    // the unsliced component list is still on screen
    expect(vm.components).toEqual([
      { id: 0, size: 2 },
      { id: 1, size: 1 },
    ]);
    expect(vm.view?.nodes.map((n) => n.id)).toEqual(['4']);
  });

  it('falls back to the largest component above the render limit', async () => {
    const server = new FakeServer();
    const bigMetrics = mkMetrics({
      nodes: 3500,
      edges: 3499,
      maxDegree: 2,
      histogram: { '1': 2, '2': 3498 },
      sizes: [2000, 1500],
      ids: [0, 1],
      apl: null,
    });
    server.on('/graphs/big/metrics', {
      schema_version: 1,
      name: 'big',
      ...bigMetrics,
    });
    server.on('/graphs/big/sweep?mode=max', mkSweep('big', 'max', [[2, 3500, 1]]));
    server.on('/graphs/big/sweep?mode=min', mkSweep('big', 'min', [[2, 3500, 1]]));
    server.on('/graphs/big/tail-start?fraction=0.05', {
      schema_version: 1,
      name: 'big',
      fraction: 0.05,
      d: 2,
    });
    server.on(
      '/graphs/big/dis?mode=max&d=2&include=metrics',
      mkGraphBody('big', [], [], {
        provenance: { mode: 'max-dis', parameter: 2, implied_threshold: null },
        metrics: bigMetrics,
      }),
    );
    server.on(
      '/graphs/big/layout?algorithm=force&seed=0&mode=max&d=2&component=0',
      mkGraphBody('big', placed([{ id: '0', degree: 2 }]), [], {
        layout: LAYOUT_META,
        component: 0,
      }),
    );
    const app = mkApp(server);
    await app.selectGraph('big');
    const vm = app.snapshot();
    expect(vm.banner).toContain('3500');
    expect(vm.banner).toContain('2000');
    const drawn = vm.numbers.find((n) => n.label === 'drawn nodes');
    expect(drawn?.value).toBe(2000);
    expect(drawn?.path).toBe('metrics.components.sizes.0');
    expect(
      server.served.some((u) => u.includes('/layout') && u.includes('component=0')),
    ).toBe(true);
  });

  it('uploadGraph registers, lists and selects the new graph', async () => {
    const server = triServer();
    server.on(
      '/graphs?name=tri&format=edge-list',
      {
        schema_version: 1,
        name: 'tri',
        format: 'edge-list',
        nodes: 4,
        edges: 4,
        self_loops_dropped: 0,
        duplicate_edges_collapsed: 0,
      },
      201,
    );
    const app = mkApp(server);
    await app.uploadGraph('tri', 'edge-list', '1 2\n2 3\n3 1\n3 4\n');
    const vm = app.snapshot();
    expect(vm.graphs).toEqual([{ name: 'tri', nodes: 4, edges: 4 }]);
    expect(vm.state.graph).toBe('tri');
    expect(vm.error).toBeNull();
  });

  it('start() picks the first listed graph', async () => {
    const server = triServer();
    const app = mkApp(server);
    await app.start();
    expect(app.snapshot().state.graph).toBe('tri');
  });

  it('a failed upload reports inline and selects nothing', async () => {
    const server = new FakeServer();
    server.on('/graphs', []);
    server.on(
      '/graphs?name=bad&format=edge-list',
      { schema_version: 1, code: 'unparsable', message: 'line 1: junk' },
      422,
    );
    const app = mkApp(server);
    await app.uploadGraph('bad', 'edge-list', 'junk');
    const vm = app.snapshot();
    expect(vm.error).toContain('unparsable');
    expect(vm.state.graph).toBeNull();
  });
});
