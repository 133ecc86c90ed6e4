/** Shapes of the server's JSON bodies, field for field. */

export interface Provenance {
  mode: string;
  parameter: number | null;
  implied_threshold: number | null;
}

export interface NodeRecord {
  id: string;
  label?: string;
  degree: number;
  x?: number;
  y?: number;
}

export interface DegreeDict {
  histogram: Record<string, number>;
  max_degree: number;
  mean_degree: number;
  edge_node_ratio: number;
  loglog_points: [number, number][];
}

export interface ComponentsDict {
  component_count: number;
  sizes: number[];
  ids_by_size: number[];
  largest_fraction: number;
}

export interface MetricsDict {
  nodes: number;
  edges: number;
  degree: DegreeDict;
  components: ComponentsDict;
  apl_largest_component: number | null;
  apl_sources: number | null;
  apl_exact: boolean | null;
  clustering_coefficient: number;
}

export interface GraphPayload {
  schema_version: number;
  name: string;
  provenance: Provenance | null;
  nodes: NodeRecord[];
  edges: [number, number][];
  component?: number;
  layout?: { algorithm: string; seed: number; iterations: number };
  metrics?: MetricsDict;
}

export type MetricsPayload = { schema_version: number; name: string } & MetricsDict;

export type DegreePayload = { schema_version: number; name: string } & DegreeDict;

export interface SweepRow {
  d: number;
  nodes: number;
  edges: number;
  edge_node_ratio: number;
  component_count: number;
  largest_component_nodes: number;
  largest_component_fraction: number;
  apl_largest_component?: number | null;
}

export interface SweepPayload {
  schema_version: number;
  name: string;
  mode: string;
  d_min: number;
  d_max: number;
  rows: SweepRow[];
}

export interface TailStartPayload {
  schema_version: number;
  name: string;
  fraction: number;
  d: number;
}

export interface UploadPayload {
  schema_version: number;
  name: string;
  format: string;
  nodes: number;
  edges: number;
  self_loops_dropped: number;
  duplicate_edges_collapsed: number;
}

export interface ListingEntry {
  name: string;
  nodes: number;
  edges: number;
}

export interface ErrorPayload {
  schema_version: number;
  code: string;
  message: string;
}

export interface PendingPayload {
  schema_version: number;
  status: 'pending';
  job: string;
  poll: string;
}

export interface JobPayload {
  schema_version: number;
  status: 'pending' | 'done';
  job: string;
  result?: unknown;
}
