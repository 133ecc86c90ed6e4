/** Canvas drawing for the three panels: the node-link view, the degree
 * histogram, and the sweep chart. The geometry helpers are pure and
 * exported so the scaling logic is testable without a canvas.
 */

import type { GraphPayload, NodeRecord, SweepPayload } from './types.js';

export interface Box {
  minX: number;
  maxX: number;
  minY: number;
  maxY: number;
}

export function bounds(nodes: NodeRecord[]): Box {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const n of nodes) {
    if (n.x === undefined || n.y === undefined) continue;
    if (n.x < minX) minX = n.x;
    if (n.x > maxX) maxX = n.x;
    if (n.y < minY) minY = n.y;
    if (n.y > maxY) maxY = n.y;
  }
  if (minX > maxX) {
    return { minX: -1, maxX: 1, minY: -1, maxY: 1 };
  }
  if (minX === maxX) {
    minX -= 1;
    maxX += 1;
  }
  if (minY === maxY) {
    minY -= 1;
    maxY += 1;
  }
  return { minX, maxX, minY, maxY };
}

/** Map a layout coordinate into a width x height pixel box, preserving
 * aspect ratio and leaving a margin on every side. */
export function project(
  x: number,
  y: number,
  box: Box,
  width: number,
  height: number,
  margin = 24,
): [number, number] {
  const spanX = box.maxX - box.minX;
  const spanY = box.maxY - box.minY;
  const scale = Math.min(
    (width - 2 * margin) / spanX,
    (height - 2 * margin) / spanY,
  );
  const cx = (box.minX + box.maxX) / 2;
  const cy = (box.minY + box.maxY) / 2;
  return [width / 2 + (x - cx) * scale, height / 2 - (y - cy) * scale];
}

/** Node size grows with the log of the degree, not linearly. */
export function nodeRadius(degree: number): number {
  return 2.5 + 1.8 * Math.log2(1 + Math.max(degree, 0));
}

/** Histogram dict has string keys; sort them as numbers. */
export function histogramBars(
  histogram: Record<string, number>,
): [number, number][] {
  return Object.entries(histogram)
    .map(([d, count]): [number, number] => [Number(d), count])
    .sort((a, b) => a[0] - b[0]);
}

const EDGE_COLOR = '#b9c2cf';
const MARK_COLOR = '#d9534f';
const AXIS_COLOR = '#6b7480';

function clear(ctx: CanvasRenderingContext2D, w: number, h: number): void {
  ctx.clearRect(0, 0, w, h);
}

function nodeColor(degree: number, maxDegree: number): string {
  const t = maxDegree > 0 ? degree / maxDegree : 0;
  const hue = 215 - 175 * t;
  return `hsl(${hue.toFixed(0)}, 70%, 48%)`;
}

export function drawGraph(
  ctx: CanvasRenderingContext2D,
  w: number,
  h: number,
  payload: GraphPayload,
): void {
  clear(ctx, w, h);
  const nodes = payload.nodes;
  if (nodes.length === 0) {
    ctx.fillStyle = AXIS_COLOR;
    ctx.font = '14px sans-serif';
    ctx.textAlign = 'center';
    ctx.fillText('empty selection', w / 2, h / 2);
    return;
  }
  const box = bounds(nodes);
  const pts: [number, number][] = nodes.map((n) =>
    project(n.x ?? 0, n.y ?? 0, box, w, h),
  );
  ctx.strokeStyle = EDGE_COLOR;
  ctx.lineWidth = 1;
  ctx.beginPath();
  for (const [a, b] of payload.edges) {
    const pa = pts[a];
    const pb = pts[b];
    if (pa === undefined || pb === undefined) continue;
    ctx.moveTo(pa[0], pa[1]);
    ctx.lineTo(pb[0], pb[1]);
  }
  ctx.stroke();
  let maxDegree = 0;
  for (const n of nodes) {
    if (n.degree > maxDegree) maxDegree = n.degree;
  }
  nodes.forEach((n, i) => {
    const p = pts[i];
    if (p === undefined) return;
    ctx.beginPath();
    ctx.arc(p[0], p[1], nodeRadius(n.degree), 0, 2 * Math.PI);
    ctx.fillStyle = nodeColor(n.degree, maxDegree);
    ctx.fill();
  });
}

export function drawHistogram(
  ctx: CanvasRenderingContext2D,
  w: number,
  h: number,
  histogram: Record<string, number>,
  tailStartD: number | null,
): void {
  clear(ctx, w, h);
  const bars = histogramBars(histogram);
  if (bars.length === 0) return;
  const pad = 18;
  const last = bars[bars.length - 1];
  const maxD = last === undefined ? 0 : last[0];
  let maxCount = 0;
  for (const [, c] of bars) {
    if (c > maxCount) maxCount = c;
  }
  const xOf = (d: number): number =>
    pad + (maxD > 0 ? (d / maxD) * (w - 2 * pad) : 0);
  const slot = maxD > 0 ? (w - 2 * pad) / (maxD + 1) : w - 2 * pad;
  const barW = Math.max(Math.min(slot * 0.8, 18), 1);
  ctx.fillStyle = '#4a78b8';
  for (const [d, count] of bars) {
    // sqrt scale keeps hub counts from flattening everything else
    const barH = (Math.sqrt(count) / Math.sqrt(maxCount)) * (h - 2 * pad);
    ctx.fillRect(xOf(d) - barW / 2, h - pad - barH, barW, barH);
  }
  ctx.strokeStyle = AXIS_COLOR;
  ctx.beginPath();
  ctx.moveTo(pad / 2, h - pad + 0.5);
  ctx.lineTo(w - pad / 2, h - pad + 0.5);
  ctx.stroke();
  if (tailStartD !== null) {
    const x = xOf(tailStartD);
    ctx.strokeStyle = MARK_COLOR;
    ctx.beginPath();
    ctx.moveTo(x, pad / 2);
    ctx.lineTo(x, h - pad);
    ctx.stroke();
    ctx.fillStyle = MARK_COLOR;
    ctx.font = '11px sans-serif';
    ctx.textAlign = x > w / 2 ? 'right' : 'left';
    ctx.fillText(`tail d=${tailStartD}`, x + (x > w / 2 ? -4 : 4), pad);
  }
}

export function drawSweep(
  ctx: CanvasRenderingContext2D,
  w: number,
  h: number,
  sweep: SweepPayload,
  markD: number | null,
): void {
  clear(ctx, w, h);
  const rows = sweep.rows;
  if (rows.length === 0) return;
  const pad = 18;
  const first = rows[0];
  const lastRow = rows[rows.length - 1];
  if (first === undefined || lastRow === undefined) return;
  const dMin = first.d;
  const dMax = lastRow.d;
  let maxNodes = 1;
  for (const r of rows) {
    if (r.nodes > maxNodes) maxNodes = r.nodes;
  }
  const xOf = (d: number): number =>
    pad + (dMax > dMin ? ((d - dMin) / (dMax - dMin)) * (w - 2 * pad) : 0);
  const yOf = (frac: number): number => h - pad - frac * (h - 2 * pad);

  ctx.strokeStyle = AXIS_COLOR;
  ctx.beginPath();
  ctx.moveTo(pad / 2, h - pad + 0.5);
  ctx.lineTo(w - pad / 2, h - pad + 0.5);
  ctx.stroke();

  const line = (pick: (r: (typeof rows)[number]) => number, color: string) => {
    ctx.strokeStyle = color;
    ctx.lineWidth = 1.75;
    ctx.beginPath();
    rows.forEach((r, i) => {
      const x = xOf(r.d);
      const y = yOf(pick(r));
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
  };
  line((r) => r.nodes / maxNodes, '#4a78b8');
  line((r) => r.largest_component_fraction, '#3d9b6f');

  if (markD !== null && markD >= dMin && markD <= dMax) {
    const x = xOf(markD);
    ctx.strokeStyle = MARK_COLOR;
    ctx.beginPath();
    ctx.moveTo(x, pad / 2);
    ctx.lineTo(x, h - pad);
    ctx.stroke();
  }
}
