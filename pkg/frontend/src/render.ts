/** DOM layer: redraws everything from the current state.
 *
 * Full redraw per state change keeps the wiring simple; the chart is a
 * few hundred SVG nodes at most. Drag feedback during a brush gesture is
 * the one thing handled outside the state loop, in attachBrush.
 */

import {
  Frame,
  extent,
  innerHeight,
  innerWidth,
  linearScale,
  polylinePoints,
  ticks,
  yearAtPixel,
} from "./chart.js";
import { AppState, SeriesView, yearDomain } from "./state.js";
import { Panel, docLines, findingLabel, groupPanels, suggestionLists } from "./viewmodel.js";

export interface Handlers {
  onBrush(a: number, b: number): void;
  onSuggestion(kind: "key" | "dataset", name: string): void;
}

export interface Elements {
  finding: HTMLElement;
  query: HTMLElement;
  error: HTMLElement;
  charts: HTMLElement;
  legend: HTMLElement;
  documents: HTMLElement;
  suggestions: HTMLElement;
}

const SVG_NS = "http://www.w3.org/2000/svg";

const MAIN_FRAME: Frame = {
  width: 760,
  height: 300,
  margin: { top: 14, right: 16, bottom: 28, left: 52 },
};

const MINI_FRAME: Frame = { ...MAIN_FRAME, height: 150 };

const el = <K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] => {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
};

const svg = (tag: string, attrs: Record<string, string | number>): SVGElement => {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, String(value));
  }
  return node;
};

const fmtValue = (v: number): string =>
  Math.abs(v) >= 100 ? v.toFixed(0) : v.toFixed(1);

export function render(els: Elements, state: AppState, handlers: Handlers): void {
  els.finding.textContent = findingLabel(state.response);
  els.query.textContent = state.response ? state.response.es_query : "";

  els.error.hidden = !state.error;
  els.error.textContent = state.error ?? "";

  els.charts.classList.toggle("pending", state.pending);
  els.charts.replaceChildren();
  const panels = groupPanels(state.series);
  panels.forEach((panel, i) => {
    const frame = i === 0 ? MAIN_FRAME : MINI_FRAME;
    const brushable = i === 0;
    els.charts.append(renderPanel(panel, frame, state, brushable ? handlers : null));
  });

  renderLegend(els.legend, state.series);
  renderDocuments(els.documents, state);
  renderSuggestions(els.suggestions, state, handlers);
}

function renderPanel(
  panel: Panel,
  frame: Frame,
  state: AppState,
  handlers: Handlers | null,
): HTMLElement {
  const wrap = el("div", "panel");
  wrap.append(el("h3", "panel-title", panel.dataset));

  const domain = yearDomain(panel.series) ?? [0, 1];
  const [vLo, vHi] = extent(panel.series.flatMap((s) => s.values));
  const { margin } = frame;
  const x = linearScale(domain[0], domain[1], margin.left, margin.left + innerWidth(frame));
  const y = linearScale(vLo, vHi, margin.top + innerHeight(frame), margin.top);

  const root = svg("svg", {
    viewBox: `0 0 ${frame.width} ${frame.height}`,
    width: frame.width,
    height: frame.height,
  }) as SVGSVGElement;

  for (const t of ticks(domain[0], domain[1], 6)) {
    root.append(
      svg("line", {
        class: "grid", x1: x(t), x2: x(t),
        y1: margin.top, y2: margin.top + innerHeight(frame),
      }),
      textAt(x(t), frame.height - 8, String(t), "middle"),
    );
  }
  for (const t of ticks(vLo, vHi, 4)) {
    root.append(
      svg("line", {
        class: "grid", y1: y(t), y2: y(t),
        x1: margin.left, x2: margin.left + innerWidth(frame),
      }),
      textAt(margin.left - 6, y(t) + 3, fmtValue(t), "end"),
    );
  }

  if (handlers && state.brush) {
    const [a, b] = state.brush;
    const x0 = x(Math.max(a, domain[0]));
    const x1 = x(Math.min(b, domain[1]));
    root.append(
      svg("rect", {
        class: "brush", x: x0, y: margin.top,
        width: Math.max(x1 - x0, 1), height: innerHeight(frame),
      }),
    );
  }

  for (const s of panel.series) {
    root.append(
      svg("polyline", {
        class: "series", points: polylinePoints(s.years, s.values, x, y),
        stroke: s.color,
      }),
    );
  }

  if (handlers) attachBrush(root, frame, domain, x.invert, handlers);
  wrap.append(root);
  return wrap;
}

/** Pointer-driven brush on the main panel. The drag rectangle is drawn
 * directly; the gesture only reaches the controller on release.
 */
function attachBrush(
  root: SVGSVGElement,
  frame: Frame,
  domain: [number, number],
  invert: (px: number) => number,
  handlers: Handlers,
): void {
  const { margin } = frame;
  const overlay = svg("rect", {
    class: "overlay", x: margin.left, y: margin.top,
    width: innerWidth(frame), height: innerHeight(frame),
  });
  root.append(overlay);

  const pxOf = (event: PointerEvent): number =>
    event.clientX - root.getBoundingClientRect().left;

  let startPx: number | null = null;
  let drag: SVGElement | null = null;

  overlay.addEventListener("pointerdown", (event) => {
    startPx = pxOf(event);
    overlay.setPointerCapture(event.pointerId);
    drag = svg("rect", {
      class: "brush live", x: startPx, y: margin.top,
      width: 1, height: innerHeight(frame),
    });
    root.insertBefore(drag, overlay);
  });

  overlay.addEventListener("pointermove", (event) => {
    if (startPx === null || !drag) return;
    const px = pxOf(event);
    drag.setAttribute("x", String(Math.min(px, startPx)));
    drag.setAttribute("width", String(Math.max(Math.abs(px - startPx), 1)));
  });

  overlay.addEventListener("pointerup", (event) => {
    if (startPx === null) return;
    const a = yearAtPixel(startPx, invert, domain[0], domain[1]);
    const b = yearAtPixel(pxOf(event), invert, domain[0], domain[1]);
    startPx = null;
    drag?.remove();
    drag = null;
    handlers.onBrush(a, b);
  });
}

const textAt = (x: number, y: number, text: string, anchor: string): SVGElement => {
  const node = svg("text", { x, y, "text-anchor": anchor, class: "tick" });
  node.textContent = text;
  return node;
};

function renderLegend(container: HTMLElement, series: SeriesView[]): void {
  container.replaceChildren();
  for (const s of series) {
    const item = el("span", "legend-item");
    const swatch = el("span", "swatch");
    swatch.style.background = s.color;
    item.append(swatch, `${s.key} (${s.dataset})`);
    container.append(item);
  }
}

function renderDocuments(container: HTMLElement, state: AppState): void {
  container.replaceChildren();
  if (!state.response) {
    container.append(el("p", "hint", "Brush a year range to search."));
    return;
  }
  const lines = docLines(state.response);
  if (!lines.length) {
    container.append(el("p", "hint", "No documents matched this selection."));
    return;
  }
  for (const line of lines) {
    const item = el("article", "doc");
    const head = el("h4");
    if (line.url) {
      const link = el("a", undefined, line.title);
      link.setAttribute("href", line.url);
      link.setAttribute("target", "_blank");
      head.append(link);
    } else {
      head.textContent = line.title;
    }
    head.append(el("span", "score", line.score.toFixed(2)));
    item.append(head, el("p", "snippet", line.snippet));
    if (line.related.length) {
      item.append(el("p", "related", `related keys: ${line.related.join(", ")}`));
    }
    container.append(item);
  }
}

function renderSuggestions(
  container: HTMLElement,
  state: AppState,
  handlers: Handlers,
): void {
  container.replaceChildren();
  if (!state.response) return;
  const lists = suggestionLists(state.response);
  if (!lists.length) {
    container.append(el("p", "hint", "No pattern finding for this selection."));
    return;
  }
  for (const list of lists) {
    container.append(el("h4", undefined, list.title));
    const ul = el("ul", "ranking");
    for (const [name, score] of list.entries) {
      const li = el("li");
      const button = el("button", undefined, name);
      button.addEventListener("click", () => handlers.onSuggestion(list.kind, name));
      li.append(button, el("span", "score", score.toFixed(3)));
      ul.append(li);
    }
    container.append(ul);
  }
}
