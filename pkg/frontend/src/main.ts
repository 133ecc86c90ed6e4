/** DOM wiring. Everything interesting lives in the controller; this
 * file only moves values between the view model and page elements. */

import { ApiClient } from './api.js';
import { ExplorerApp } from './controller.js';
import type { ViewModel } from './controller.js';
import type { Algorithm } from './controller.js';
import { Debouncer } from './seq.js';
import { drawGraph, drawHistogram, drawSweep } from './render.js';
import type { Mode } from './state.js';

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

function ctx2d(canvas: HTMLCanvasElement): CanvasRenderingContext2D {
  const ctx = canvas.getContext('2d');
  if (ctx === null) throw new Error('canvas 2d context unavailable');
  return ctx;
}

const app = new ExplorerApp(new ApiClient(''));
const sliderDebounce = new Debouncer(100);

const graphSelect = el<HTMLSelectElement>('graph-select');
const uploadForm = el<HTMLFormElement>('upload-form');
const uploadFile = el<HTMLInputElement>('upload-file');
const uploadName = el<HTMLInputElement>('upload-name');
const uploadFormat = el<HTMLSelectElement>('upload-format');
const dSlider = el<HTMLInputElement>('d-slider');
const dValue = el<HTMLElement>('d-value');
const dRow = el<HTMLElement>('d-row');
const kRow = el<HTMLElement>('k-row');
const kInput = el<HTMLInputElement>('k-input');
const componentSelect = el<HTMLSelectElement>('component-select');
const algorithmSelect = el<HTMLSelectElement>('algorithm-select');
const reseedButton = el<HTMLButtonElement>('reseed');
const metricsPanel = el<HTMLElement>('metrics-panel');
const bannerBox = el<HTMLElement>('banner');
const errorBox = el<HTMLElement>('error');
const busyBox = el<HTMLElement>('busy');
const sweepLabel = el<HTMLElement>('sweep-label');
const debugBody = el<HTMLElement>('debug-body');

const graphCanvas = el<HTMLCanvasElement>('graph-canvas');
const histogramCanvas = el<HTMLCanvasElement>('histogram-canvas');
const sweepCanvas = el<HTMLCanvasElement>('sweep-canvas');

function render(vm: ViewModel): void {
  busyBox.classList.toggle('hidden', !vm.busy);
  errorBox.classList.toggle('hidden', vm.error === null);
  errorBox.textContent = vm.error ?? '';
  bannerBox.classList.toggle('hidden', vm.banner === null);
  bannerBox.textContent = vm.banner ?? '';

  renderGraphList(vm);
  renderControls(vm);
  renderMetrics(vm);
  renderCharts(vm);
  renderDebug();
}

function renderGraphList(vm: ViewModel): void {
  const names = vm.graphs.map((g) => g.name);
  const existing = Array.from(graphSelect.options).map((o) => o.value);
  if (names.join('|') !== existing.join('|')) {
    graphSelect.textContent = '';
    for (const g of vm.graphs) {
      const opt = document.createElement('option');
      opt.value = g.name;
      opt.textContent = `${g.name} (${g.nodes}n/${g.edges}e)`;
      graphSelect.append(opt);
    }
  }
  if (vm.state.graph !== null) {
    graphSelect.value = vm.state.graph;
  }
}

function renderControls(vm: ViewModel): void {
  const s = vm.state;
  for (const input of document.querySelectorAll<HTMLInputElement>(
    'input[name="mode"]',
  )) {
    input.checked = input.value === s.mode;
  }
  dRow.classList.toggle('hidden', s.mode === 'top');
  kRow.classList.toggle('hidden', s.mode !== 'top');
  dSlider.max = String(s.maxDegree);
  if (document.activeElement !== dSlider) {
    dSlider.value = String(s.d);
  }
  dValue.textContent = String(s.d);
  kInput.max = String(Math.max(s.nodeCount, 1));
  if (document.activeElement !== kInput) {
    kInput.value = String(s.k);
  }
  algorithmSelect.value = vm.algorithm;

  const want = ['', ...vm.components.map((c) => String(c.id))];
  const have = Array.from(componentSelect.options).map((o) => o.value);
  if (want.join('|') !== have.join('|')) {
    componentSelect.textContent = '';
    const all = document.createElement('option');
    all.value = '';
    all.textContent = 'all components';
    componentSelect.append(all);
    for (const c of vm.components) {
      const opt = document.createElement('option');
      opt.value = String(c.id);
      opt.textContent = `component ${c.id} (${c.size} nodes)`;
      componentSelect.append(opt);
    }
  }
  componentSelect.value = s.component === null ? '' : String(s.component);
}

function renderMetrics(vm: ViewModel): void {
  metricsPanel.textContent = '';
  for (const n of vm.numbers) {
    const dt = document.createElement('dt');
    dt.textContent = n.label;
    const dd = document.createElement('dd');
    // full precision on purpose: what is shown is what the body holds
    dd.textContent = n.value === null ? 'n/a' : String(n.value);
    dd.dataset['url'] = n.url;
    dd.dataset['path'] = n.path;
    dd.dataset['seq'] = String(n.seq);
    metricsPanel.append(dt, dd);
  }
}

function renderCharts(vm: ViewModel): void {
  const gctx = ctx2d(graphCanvas);
  if (vm.view !== null) {
    drawGraph(gctx, graphCanvas.width, graphCanvas.height, vm.view);
  } else {
    gctx.clearRect(0, 0, graphCanvas.width, graphCanvas.height);
  }
  drawHistogram(
    ctx2d(histogramCanvas),
    histogramCanvas.width,
    histogramCanvas.height,
    vm.histogram,
    vm.tailStartD,
  );
  const sweep = vm.state.mode === 'max' ? vm.sweepMax : vm.sweepMin;
  sweepLabel.textContent =
    vm.state.mode === 'max' ? 'sweep (max mode)' : 'sweep (min mode)';
  const sctx = ctx2d(sweepCanvas);
  if (sweep !== null) {
    const mark =
      vm.state.mode === 'top'
        ? (vm.view?.provenance?.implied_threshold ?? null)
        : vm.state.d;
    drawSweep(sctx, sweepCanvas.width, sweepCanvas.height, sweep, mark);
  } else {
    sctx.clearRect(0, 0, sweepCanvas.width, sweepCanvas.height);
  }
}

function renderDebug(): void {
  debugBody.textContent = '';
  for (const e of app.debug.entries().slice(0, 50)) {
    const tr = document.createElement('tr');
    tr.className = e.outcome;
    for (const cell of [
      String(e.seq),
      e.outcome,
      String(e.status),
      `${e.ms}ms`,
      e.url,
    ]) {
      const td = document.createElement('td');
      td.textContent = cell;
      tr.append(td);
    }
    const body = document.createElement('td');
    body.className = 'body';
    body.textContent = e.body.length > 160 ? `${e.body.slice(0, 160)}…` : e.body;
    body.title = e.body;
    tr.append(body);
    debugBody.append(tr);
  }
}

function guessFormat(filename: string): string {
  const lower = filename.toLowerCase();
  if (lower.endsWith('.net') || lower.endsWith('.paj')) return 'pajek';
  if (lower.endsWith('.json')) return 'json';
  return 'edge-list';
}

function sanitizeName(raw: string): string {
  const cleaned = raw.replace(/[^A-Za-z0-9._-]/g, '-').slice(0, 64);
  return cleaned.length > 0 ? cleaned : 'graph';
}

graphSelect.addEventListener('change', () => {
  if (graphSelect.value !== '') {
    void app.selectGraph(graphSelect.value);
  }
});

for (const input of document.querySelectorAll<HTMLInputElement>(
  'input[name="mode"]',
)) {
  input.addEventListener('change', () => {
    if (input.checked) {
      void app.setMode(input.value as Mode);
    }
  });
}

dSlider.addEventListener('input', () => {
  const d = Number(dSlider.value);
  dValue.textContent = dSlider.value;
  sliderDebounce.schedule(() => void app.setD(d));
});

kInput.addEventListener('change', () => {
  sliderDebounce.schedule(() => void app.setK(Number(kInput.value)));
});

componentSelect.addEventListener('change', () => {
  const raw = componentSelect.value;
  void app.setComponent(raw === '' ? null : Number(raw));
});

algorithmSelect.addEventListener('change', () => {
  void app.setAlgorithm(algorithmSelect.value as Algorithm);
});

reseedButton.addEventListener('click', () => {
  void app.reseed();
});

uploadFile.addEventListener('change', () => {
  const file = uploadFile.files?.[0];
  if (file === undefined) return;
  if (uploadName.value === '') {
    uploadName.value = sanitizeName(file.name.replace(/\.[^.]*$/, ''));
  }
  uploadFormat.value = guessFormat(file.name);
});

uploadForm.addEventListener('submit', (ev) => {
  ev.preventDefault();
  const file = uploadFile.files?.[0];
  if (file === undefined) return;
  const name = sanitizeName(uploadName.value || file.name);
  void file.text().then((text) => {
    void app.uploadGraph(name, uploadFormat.value, text);
  });
});

app.onChange(render);
void app.start();

// handy for consoles and scripted checks
declare global {
  interface Window {
    explorer: ExplorerApp;
  }
}
window.explorer = app;
