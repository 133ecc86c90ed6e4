/** Test doubles and canned payload builders. */

import type { FetchLike } from '../src/api.js';
import { RateLimiter } from '../src/api.js';
import type { DebugLog } from '../src/debug.js';
import { lookupPath } from '../src/debug.js';
import type { DisplayedNumber } from '../src/controller.js';
import type {
  ComponentsDict,
  DegreeDict,
  GraphPayload,
  MetricsDict,
  NodeRecord,
  SweepPayload,
} from '../src/types.js';

export const sleep = (ms: number): Promise<void> =>
  new Promise((resolve) => setTimeout(resolve, ms));

/** Rate limiting off, so unit tests run at full speed. */
export class InstantLimiter extends RateLimiter {
  override acquire(): Promise<void> {
    return Promise.resolve();
  }
}

export interface RouteEntry {
  status: number;
  body: unknown;
}

/** Exact-URL fake endpoint with per-substring artificial delays. */
export class FakeServer {
  readonly served: string[] = [];
  private readonly routes = new Map<string, RouteEntry>();
  private readonly sequenced = new Map<string, RouteEntry[]>();
  private readonly delays: [string, number][] = [];

  on(url: string, body: unknown, status = 200): void {
    this.routes.set(url, { status, body });
  }

  /** Successive hits on url walk through entries, then fall through. */
  onSequence(url: string, entries: RouteEntry[]): void {
    this.sequenced.set(url, [...entries]);
  }

  delay(substring: string, ms: number): void {
    this.delays.push([substring, ms]);
  }

  fetch: FetchLike = async (url) => {
    this.served.push(url);
    for (const [substring, ms] of this.delays) {
      if (url.includes(substring)) {
        await sleep(ms);
      }
    }
    const queued = this.sequenced.get(url)?.shift();
    const entry: RouteEntry = queued ??
      this.routes.get(url) ?? {
        status: 404,
        body: { schema_version: 1, code: 'not_found', message: `no route ${url}` },
      };
    return {
      status: entry.status,
      text: () => Promise.resolve(JSON.stringify(entry.body)),
    };
  };
}

export function mkDegree(
  nodes: number,
  edges: number,
  maxDegree: number,
  histogram: Record<string, number>,
): DegreeDict {
  return {
    histogram,
    max_degree: maxDegree,
    mean_degree: nodes > 0 ? (2 * edges) / nodes : 0,
    edge_node_ratio: nodes > 0 ? edges / nodes : 0,
    loglog_points: [],
  };
}

export function mkComponents(
  sizes: number[],
  ids: number[],
  totalNodes: number,
): ComponentsDict {
  return {
    component_count: sizes.length,
    sizes,
    ids_by_size: ids,
    largest_fraction: totalNodes > 0 ? (sizes[0] ?? 0) / totalNodes : 0,
  };
}

export interface MetricsInit {
  nodes: number;
  edges: number;
  maxDegree: number;
  histogram?: Record<string, number>;
  sizes?: number[];
  ids?: number[];
  apl?: number | null;
}

export function mkMetrics(init: MetricsInit): MetricsDict {
  const sizes = init.sizes ?? (init.nodes > 0 ? [init.nodes] : []);
  const ids = init.ids ?? sizes.map((_, i) => i);
  return {
    nodes: init.nodes,
    edges: init.edges,
    degree: mkDegree(init.nodes, init.edges, init.maxDegree, init.histogram ?? {}),
    components: mkComponents(sizes, ids, init.nodes),
    apl_largest_component: init.apl ?? null,
    apl_sources: null,
    apl_exact: init.nodes > 0 ? true : null,
    clustering_coefficient: 0,
  };
}

export function mkGraphBody(
  name: string,
  nodes: NodeRecord[],
  edges: [number, number][],
  extra: Partial<GraphPayload> = {},
): GraphPayload {
  return {
    schema_version: 1,
    name,
    provenance: null,
    nodes,
    edges,
    ...extra,
  };
}

export function mkSweep(
  name: string,
  mode: string,
  points: [number, number, number][],
): SweepPayload {
  return {
    schema_version: 1,
    name,
    mode,
    d_min: points[0]?.[0] ?? 0,
    d_max: points[points.length - 1]?.[0] ?? 0,
    rows: points.map(([d, nodes, frac]) => ({
      d,
      nodes,
      edges: nodes,
      edge_node_ratio: nodes > 0 ? 1 : 0,
      component_count: nodes > 0 ? 1 : 0,
      largest_component_nodes: Math.round(nodes * frac),
      largest_component_fraction: frac,
    })),
  };
}

/** Resolve the value a displayed number is backed by, walking through
 * the job indirection when the original request was parked as 202. */
export function backingValue(debug: DebugLog, n: DisplayedNumber): unknown {
  const applied = debug
    .entries()
    .filter((e) => e.seq === n.seq && e.outcome === 'applied');
  const direct = applied.find((e) => e.url === n.url);
  if (direct === undefined) {
    return '<no applied entry>';
  }
  if (direct.status === 202) {
    const pending = JSON.parse(direct.body) as { poll: string };
    const poll = applied.find((e) => {
      if (e.url !== pending.poll) return false;
      const body = JSON.parse(e.body) as { status: string };
      return body.status === 'done';
    });
    if (poll === undefined) {
      return '<no finished poll entry>';
    }
    return lookupPath(JSON.parse(poll.body), `result.${n.path}`);
  }
  return lookupPath(JSON.parse(direct.body), n.path);
}
