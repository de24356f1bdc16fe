/** Application state and the pure transitions behind every UI event.
 *
 * Transitions return fresh objects, so the shell can redraw whenever the
 * reference changes. Query responses carry the sequence number of the
 * request that produced them; anything older than the newest issued
 * request is stale and silently dropped, which keeps a slow response
 * from overwriting a faster, later one.
 */

import type { QueryResponse, SeriesPayload } from "./api.js";

export const PALETTE = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

export interface SeriesView extends SeriesPayload {
  color: string;
}

export interface AppState {
  series: SeriesView[];
  brush: [number, number] | null;
  response: QueryResponse | null;
  error: string | null;
  issued: number;
  pending: boolean;
}

export const initialState = (): AppState => ({
  series: [],
  brush: null,
  response: null,
  error: null,
  issued: 0,
  pending: false,
});

export const hasSeries = (state: AppState, dataset: string, key: string): boolean =>
  state.series.some((s) => s.dataset === dataset && s.key === key);

export const addSeries = (state: AppState, payload: SeriesPayload): AppState => {
  if (hasSeries(state, payload.dataset, payload.key)) return state;
  const color = PALETTE[state.series.length % PALETTE.length];
  return {
    ...state,
    error: null,
    series: [...state.series, { ...payload, color }],
  };
};

/** Union of the years covered by any visible series. */
export const yearDomain = (series: SeriesPayload[]): [number, number] | null => {
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of series) {
    for (const year of s.years) {
      if (year < lo) lo = year;
      if (year > hi) hi = year;
    }
  }
  return lo <= hi ? [lo, hi] : null;
};

/** Orders the endpoints and clamps them into the visible year domain. */
export const setBrush = (state: AppState, a: number, b: number): AppState => {
  const domain = yearDomain(state.series);
  if (!domain) return state;
  let lo = Math.min(a, b);
  let hi = Math.max(a, b);
  lo = Math.min(Math.max(lo, domain[0]), domain[1]);
  hi = Math.min(Math.max(hi, domain[0]), domain[1]);
  return { ...state, brush: [lo, hi] };
};

export const beginRequest = (state: AppState): { state: AppState; seq: number } => {
  const seq = state.issued + 1;
  return { state: { ...state, issued: seq, pending: true }, seq };
};

export const applyResponse = (
  state: AppState,
  seq: number,
  response: QueryResponse,
): AppState =>
  seq === state.issued
    ? { ...state, response, error: null, pending: false }
    : state;

/** Failures surface as a banner; earlier results stay on screen. */
export const applyError = (state: AppState, seq: number, message: string): AppState =>
  seq === state.issued ? { ...state, error: message, pending: false } : state;
