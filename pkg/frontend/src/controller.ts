/** Orchestration for the explorer page.
 *
 * The controller owns the state, issues every request through the rate
 * limited client, and gates responses by sequence number so a slow
 * reply from an abandoned slider position can never overwrite a newer
 * one. Every number destined for the screen is recorded together with
 * the request URL and the JSON path it was read from, which makes the
 * debug panel a complete audit trail: displayed value -> backing body.
 *
 * No analytics happen here. Counts, ratios, path lengths and layouts
 * all come out of response bodies verbatim.
 */

import { ApiClient, ApiError } from './api.js';
import type { RequestRecord } from './api.js';
import { DebugLog } from './debug.js';
import { SequenceGate } from './seq.js';
import * as st from './state.js';
import type {
  GraphPayload,
  ListingEntry,
  MetricsPayload,
  SweepPayload,
  TailStartPayload,
  UploadPayload,
} from './types.js';

/** Views larger than this fall back to the largest component. */
export const LCC_RENDER_LIMIT = 3000;
export const TAIL_FRACTION = 0.05;

export type Algorithm = 'force' | 'circular';

export interface DisplayedNumber {
  label: string;
  value: number | null;
  seq: number;
  /** Request path whose response body carries the value. */
  url: string;
  /** Dotted path to the value inside that body. */
  path: string;
}

export interface ComponentEntry {
  id: number;
  size: number;
}

export interface ViewModel {
  state: st.ExplorerState;
  algorithm: Algorithm;
  graphs: ListingEntry[];
  view: GraphPayload | null;
  numbers: DisplayedNumber[];
  components: ComponentEntry[];
  sweepMax: SweepPayload | null;
  sweepMin: SweepPayload | null;
  histogram: Record<string, number>;
  tailStartD: number | null;
  banner: string | null;
  error: string | null;
  busy: boolean;
}

/** Internal marker: a response lost the race and was dropped. */
class StaleResponse extends Error {
  constructor(seq: number) {
    super(`response for refresh ${seq} superseded`);
  }
}

export class ExplorerApp {
  readonly client: ApiClient;
  readonly debug = new DebugLog();

  private readonly gate = new SequenceGate();
  private state = st.initialState();
  private algorithm: Algorithm = 'force';
  private graphs: ListingEntry[] = [];
  private view: GraphPayload | null = null;
  private refreshNumbers: DisplayedNumber[] = [];
  private staticNumbers: DisplayedNumber[] = [];
  private components: ComponentEntry[] = [];
  private sweepMax: SweepPayload | null = null;
  private sweepMin: SweepPayload | null = null;
  private histogram: Record<string, number> = {};
  private tailStartD: number | null = null;
  private banner: string | null = null;
  private error: string | null = null;
  private inflight = 0;
  private idleResolvers: (() => void)[] = [];
  private listeners: ((vm: ViewModel) => void)[] = [];

  constructor(client: ApiClient) {
    this.client = client;
  }

  onChange(fn: (vm: ViewModel) => void): void {
    this.listeners.push(fn);
  }

  snapshot(): ViewModel {
    return {
      state: this.state,
      algorithm: this.algorithm,
      graphs: this.graphs,
      view: this.view,
      numbers: [...this.staticNumbers, ...this.refreshNumbers],
      components: this.components,
      sweepMax: this.sweepMax,
      sweepMin: this.sweepMin,
      histogram: this.histogram,
      tailStartD: this.tailStartD,
      banner: this.banner,
      error: this.error,
      busy: this.inflight > 0,
    };
  }

  /** Resolves once no requests are in flight. */
  idle(): Promise<void> {
    if (this.inflight === 0) return Promise.resolve();
    return new Promise((resolve) => this.idleResolvers.push(resolve));
  }

  async start(): Promise<void> {
    await this.refreshGraphList();
    const first = this.graphs[0];
    if (first !== undefined) {
      await this.selectGraph(first.name);
    }
  }

  async refreshGraphList(): Promise<void> {
    this.enter();
    try {
      this.graphs = await this.tracked<ListingEntry[]>(
        this.gate.lastIssued,
        '/graphs',
        true,
      );
      this.error = null;
    } catch (err) {
      this.fail(err);
    } finally {
      this.exit();
    }
  }

  async uploadGraph(name: string, format: string, body: string): Promise<void> {
    this.enter();
    try {
      const recs: RequestRecord[] = [];
      await this.client.upload<UploadPayload>(name, format, body, (r) =>
        recs.push(r),
      );
      this.record(this.gate.lastIssued, recs, 'applied');
      this.error = null;
    } catch (err) {
      this.fail(err);
      this.exit();
      this.emit();
      return;
    }
    this.exit();
    await this.refreshGraphList();
    await this.selectGraph(name);
  }

  /** Load the per-graph statics (metrics, tail start, both sweep
   * profiles), reset thresholds to the whole graph, then refresh. */
  async selectGraph(name: string): Promise<void> {
    const seq = this.gate.issue();
    this.enter();
    this.emit();
    try {
      const g = encodeURIComponent(name);
      const metricsUrl = `/graphs/${g}/metrics`;
      const metrics = await this.tracked<MetricsPayload>(seq, metricsUrl);
      this.state = st.selectGraph(
        this.state,
        name,
        metrics.degree.max_degree,
        metrics.nodes,
      );
      this.histogram = metrics.degree.histogram;
      this.staticNumbers = [
        {
          label: 'graph nodes',
          value: metrics.nodes,
          seq,
          url: metricsUrl,
          path: 'nodes',
        },
        {
          label: 'graph edges',
          value: metrics.edges,
          seq,
          url: metricsUrl,
          path: 'edges',
        },
        {
          label: 'max degree',
          value: metrics.degree.max_degree,
          seq,
          url: metricsUrl,
          path: 'degree.max_degree',
        },
      ];
      this.sweepMax = await this.tracked<SweepPayload>(
        seq,
        `/graphs/${g}/sweep?mode=max`,
      );
      this.sweepMin = await this.tracked<SweepPayload>(
        seq,
        `/graphs/${g}/sweep?mode=min`,
      );
      this.tailStartD = null;
      try {
        const tailUrl = `/graphs/${g}/tail-start?fraction=${TAIL_FRACTION}`;
        const tail = await this.tracked<TailStartPayload>(seq, tailUrl);
        this.tailStartD = tail.d;
        this.staticNumbers.push({
          label: 'tail start d',
          value: tail.d,
          seq,
          url: tailUrl,
          path: 'd',
        });
      } catch (err) {
        // degenerate distributions have no tail; the marker just goes away
        if (!(err instanceof ApiError)) throw err;
      }
      this.emit();
      await this.refreshView(seq);
      this.error = null;
    } catch (err) {
      this.fail(err);
    } finally {
      this.exit();
      this.emit();
    }
  }

  async setMode(mode: st.Mode): Promise<void> {
    this.state = st.setMode(this.state, mode);
    await this.refresh();
  }

  async setD(d: number): Promise<void> {
    this.state = st.setD(this.state, d);
    await this.refresh();
  }

  async setK(k: number): Promise<void> {
    this.state = st.setK(this.state, k);
    await this.refresh();
  }

  async setComponent(component: number | null): Promise<void> {
    this.state = st.setComponent(this.state, component);
    await this.refresh();
  }

  async reseed(): Promise<void> {
    this.state = st.setLayoutSeed(this.state, this.state.layoutSeed + 1);
    await this.refresh();
  }

  async setAlgorithm(algorithm: Algorithm): Promise<void> {
    this.algorithm = algorithm;
    await this.refresh();
  }

  async refresh(): Promise<void> {
    if (this.state.graph === null) {
      this.emit();
      return;
    }
    const seq = this.gate.issue();
    this.enter();
    this.emit();
    try {
      await this.refreshView(seq);
      this.error = null;
    } catch (err) {
      this.fail(err);
    } finally {
      this.exit();
      this.emit();
    }
  }

  /** One view update: filtered numbers first, then the drawing. */
  private async refreshView(seq: number): Promise<void> {
    const s = this.state;
    if (s.graph === null) return;
    const g = encodeURIComponent(s.graph);
    const filterUrl =
      s.mode === 'top'
        ? `/graphs/${g}/dis-top?k=${s.k}&include=metrics`
        : `/graphs/${g}/dis?mode=${s.mode}&d=${s.d}&include=metrics`;
    const all = await this.tracked<GraphPayload>(seq, filterUrl);
    const metrics = all.metrics;
    if (metrics === undefined) {
      throw new Error('server omitted metrics from filter response');
    }

    const components: ComponentEntry[] = metrics.components.ids_by_size.map(
      (id, i) => ({ id, size: metrics.components.sizes[i] ?? 0 }),
    );

    let panelUrl = filterUrl;
    let panelMetrics = metrics;
    if (s.component !== null) {
      const selUrl = `${filterUrl}&component=${s.component}`;
      const sel = await this.tracked<GraphPayload>(seq, selUrl);
      if (sel.metrics === undefined) {
        throw new Error('server omitted metrics from component response');
      }
      panelUrl = selUrl;
      panelMetrics = sel.metrics;
    }

    const numbers: DisplayedNumber[] = [
      num('nodes', panelMetrics.nodes, seq, panelUrl, 'metrics.nodes'),
      num('edges', panelMetrics.edges, seq, panelUrl, 'metrics.edges'),
      num(
        'components',
        panelMetrics.components.component_count,
        seq,
        panelUrl,
        'metrics.components.component_count',
      ),
      num(
        'edge/node ratio',
        panelMetrics.degree.edge_node_ratio,
        seq,
        panelUrl,
        'metrics.degree.edge_node_ratio',
      ),
      num(
        'APL (largest comp)',
        panelMetrics.apl_largest_component,
        seq,
        panelUrl,
        'metrics.apl_largest_component',
      ),
    ];
    if (all.provenance !== null && all.provenance.implied_threshold !== null) {
      numbers.push(
        num(
          'implied threshold',
          all.provenance.implied_threshold,
          seq,
          filterUrl,
          'provenance.implied_threshold',
        ),
      );
    }

    // the drawing falls back to the largest component when the filtered
    // view is too big to render whole
    let banner: string | null = null;
    let viewComponent = s.component;
    if (viewComponent === null && metrics.nodes > LCC_RENDER_LIMIT) {
      const largest = metrics.components.ids_by_size[0];
      const size = metrics.components.sizes[0];
      if (largest !== undefined && size !== undefined) {
        viewComponent = largest;
        banner = `view has ${metrics.nodes} nodes; drawing largest component (${size} nodes)`;
        numbers.push(
          num(
            'drawn nodes',
            size,
            seq,
            filterUrl,
            'metrics.components.sizes.0',
          ),
        );
      }
    }

    const parts = [`algorithm=${this.algorithm}`, `seed=${s.layoutSeed}`];
    if (s.mode === 'top') {
      parts.push('mode=top', `k=${s.k}`);
    } else {
      parts.push(`mode=${s.mode}`, `d=${s.d}`);
    }
    if (viewComponent !== null) {
      parts.push(`component=${viewComponent}`);
    }
    const layoutUrl = `/graphs/${g}/layout?${parts.join('&')}`;
    const view = await this.tracked<GraphPayload>(seq, layoutUrl);

    this.view = view;
    this.refreshNumbers = numbers;
    this.components = components;
    this.banner = banner;
    this.emit();
  }

  /** Fetch, log to the debug panel, and refuse superseded responses. */
  private async tracked<T>(
    seq: number,
    path: string,
    alwaysApply = false,
  ): Promise<T> {
    const recs: RequestRecord[] = [];
    let value: T;
    try {
      value = await this.client.getJson<T>(path, (r) => recs.push(r));
    } catch (err) {
      this.record(seq, recs, 'error');
      throw err;
    }
    if (!alwaysApply && !this.gate.isCurrent(seq)) {
      this.record(seq, recs, 'discarded');
      throw new StaleResponse(seq);
    }
    this.record(seq, recs, 'applied');
    this.gate.apply(seq);
    return value;
  }

  private record(
    seq: number,
    recs: RequestRecord[],
    outcome: 'applied' | 'discarded' | 'error',
  ): void {
    for (const r of recs) {
      this.debug.push({
        seq,
        url: r.url,
        status: r.status,
        ms: r.ms,
        outcome,
        body: r.text,
      });
    }
  }

  private fail(err: unknown): void {
    if (err instanceof StaleResponse) {
      return; // a newer refresh owns the screen; nothing to report
    }
    if (err instanceof ApiError) {
      this.error = `${err.code}: ${err.message}`;
      return;
    }
    this.error = err instanceof Error ? err.message : String(err);
  }

  private emit(): void {
    const vm = this.snapshot();
    for (const fn of this.listeners) {
      fn(vm);
    }
  }

  private enter(): void {
    this.inflight += 1;
  }

  private exit(): void {
    this.inflight -= 1;
    if (this.inflight === 0) {
      for (const resolve of this.idleResolvers.splice(0)) {
        resolve();
      }
    }
  }
}

function num(
  label: string,
  value: number | null,
  seq: number,
  url: string,
  path: string,
): DisplayedNumber {
  return { label, value, seq, url, path };
}
