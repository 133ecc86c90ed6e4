/** Explorer state and its pure transitions.
 *
 * All transitions return a new state object; nothing here touches the
 * DOM or the network, so the reducer logic is testable in isolation.
 */

export type Mode = "max" | "min" | "kcore" | "top";

export interface ExplorerState {
  graph: string | null;
  mode: Mode;
  /** Degree threshold for max/min/kcore; clamped to [0, maxDegree]. */
  d: number;
  /** Node count for top-k; clamped to [1, nodeCount]. */
  k: number;
  /** Selected component id within the filtered view, or null for all. */
  component: number | null;
  layoutSeed: number;
  /** Degree ceiling of the uploaded graph, used for clamping d. */
  maxDegree: number;
  /** Node count of the uploaded graph, used for clamping k. */
  nodeCount: number;
}

export function initialState(): ExplorerState {
  return {
    graph: null,
    mode: "max",
    d: 0,
    k: 1,
    component: null,
    layoutSeed: 0,
    maxDegree: 0,
    nodeCount: 0,
  };
}

export function clampD(d: number, maxDegree: number): number {
  if (!Number.isFinite(d)) return 0;
  return Math.min(Math.max(Math.trunc(d), 0), Math.max(maxDegree, 0));
}

export function clampK(k: number, nodeCount: number): number {
  if (!Number.isFinite(k)) return 1;
  return Math.min(Math.max(Math.trunc(k), 1), Math.max(nodeCount, 1));
}

/** Switch graphs: thresholds re-clamp against the new graph's bounds
 * and any component selection is dropped (ids are not comparable). */
export function selectGraph(
  state: ExplorerState,
  graph: string,
  maxDegree: number,
  nodeCount: number,
): ExplorerState {
  return {
    ...state,
    graph,
    maxDegree,
    nodeCount,
    d: maxDegree,
    k: clampK(state.k, nodeCount),
    component: null,
  };
}

/** Toggle modes: d carries over but re-clamps, so a threshold set in
 * max mode stays meaningful after switching to min or kcore. */
export function setMode(state: ExplorerState, mode: Mode): ExplorerState {
  return {
    ...state,
    mode,
    d: clampD(state.d, state.maxDegree),
    k: clampK(state.k, state.nodeCount),
    component: null,
  };
}

export function setD(state: ExplorerState, d: number): ExplorerState {
  return { ...state, d: clampD(d, state.maxDegree), component: null };
}

export function setK(state: ExplorerState, k: number): ExplorerState {
  return { ...state, k: clampK(k, state.nodeCount), component: null };
}

export function setComponent(
  state: ExplorerState,
  component: number | null,
): ExplorerState {
  return { ...state, component };
}

export function setLayoutSeed(state: ExplorerState, seed: number): ExplorerState {
  return { ...state, layoutSeed: Math.max(Math.trunc(seed), 0) };
}
