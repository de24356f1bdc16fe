/** Render-ready fragments derived from state. Values are lifted from the
 * server response as-is; ordering and scores are never recomputed here.
 */

import type { QueryResponse } from "./api.js";
import type { SeriesView } from "./state.js";

export interface DocLine {
  docId: string;
  title: string;
  url: string | null;
  snippet: string;
  score: number;
  related: string[];
}

export const docLines = (response: QueryResponse): DocLine[] =>
  response.documents.map((hit, i) => ({
    docId: hit.doc_id,
    title: hit.title ?? hit.doc_id,
    url: hit.url,
    snippet: hit.snippet,
    score: hit.score,
    related: (response.per_document_suggestions[i]?.keys.entries ?? [])
      .slice(0, 3)
      .map(([name]) => name),
  }));

export interface SuggestionList {
  title: string;
  kind: "key" | "dataset";
  entries: [string, number][];
}

export const suggestionLists = (response: QueryResponse): SuggestionList[] => {
  const block = response.pattern_suggestions;
  if (!block) return [];
  return [
    { title: "Related keys", kind: "key", entries: block.keys.entries },
    { title: "Related datasets", kind: "dataset", entries: block.datasets.entries },
  ];
};

export const findingLabel = (response: QueryResponse | null): string => {
  if (!response || (response.trend === null && response.pattern === null)) {
    return "no finding";
  }
  const parts: string[] = [];
  if (response.trend) parts.push(`trend: ${response.trend}`);
  if (response.pattern) parts.push(`pattern: ${response.pattern}`);
  if (response.pf !== null) parts.push(`pf ${response.pf.toFixed(2)}`);
  return parts.join(", ");
};

export interface Panel {
  dataset: string;
  series: SeriesView[];
}

/** One chart per dataset, in first-seen order. The first panel is the
 * one that takes the brush; later ones are overview charts for datasets
 * added from the suggestion ranking, which have their own value scale.
 */
export const groupPanels = (series: SeriesView[]): Panel[] => {
  const panels: Panel[] = [];
  for (const s of series) {
    const panel = panels.find((p) => p.dataset === s.dataset);
    if (panel) panel.series.push(s);
    else panels.push({ dataset: s.dataset, series: [s] });
  }
  return panels;
};
