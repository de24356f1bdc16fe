/** Canned /v1 payloads shaped exactly like the service responses. */

import type { QueryResponse, SeriesPayload } from "../src/api.js";

export const usSeries: SeriesPayload = {
  dataset: "life expectancy",
  key: "united states",
  years: Array.from({ length: 81 }, (_, i) => 1850 + i),
  values: Array.from({ length: 81 }, (_, i) => 40 + Math.sin(i / 7) * 6),
};

export const swedenSeries: SeriesPayload = {
  dataset: "life expectancy",
  key: "sweden",
  years: usSeries.years.slice(),
  values: usSeries.values.map((v) => v + 2),
};

export const democracySeries: SeriesPayload = {
  dataset: "democracy index",
  key: "united states",
  years: Array.from({ length: 50 }, (_, i) => 1860 + i),
  values: Array.from({ length: 50 }, (_, i) => 5 + i * 0.05),
};

const keyRanking = {
  kind: "key",
  entries: [
    ["sweden", 0.954],
    ["united kingdom", 0.913],
  ] as [string, number][],
};

const datasetRanking = {
  kind: "dataset",
  entries: [["democracy index", 0.061]] as [string, number][],
};

const doc = (id: string, title: string, score: number) => ({
  doc_id: id,
  score,
  snippet: `... words surrounding the best match inside ${id} ...`,
  title,
  url: `https://example.org/${id}`,
});

/** What the service returns for the planted 1860-1866 valley. */
export const valleyResponse: QueryResponse = {
  ir_text: '(((united states)^2 | usa^2) & (life expectancy)^2)',
  es_query: '((united states)^2 | usa^2) + ((life expectancy)^2)',
  trend: "neutral",
  pattern: "valley",
  pf: -63.81,
  documents: [
    doc("appomattox-aftermath", "Aftermath at Appomattox", 28.06),
    doc("antietam-mortality", "Mortality after Antietam", 27.39),
    doc("gettysburg-toll", "The Toll of Gettysburg", 26.95),
    doc("wilderness-campaign", "The Wilderness Campaign", 25.33),
    doc("civil-war-outbreak", "Outbreak of the Civil War", 22.05),
  ],
  per_document_suggestions: Array.from({ length: 5 }, () => ({
    datasets: datasetRanking,
    keys: keyRanking,
  })),
  pattern_suggestions: { keys: keyRanking, datasets: datasetRanking },
};

/** A later, different answer used by the stale-response tests. */
export const plateauResponse: QueryResponse = {
  ...valleyResponse,
  trend: "ascending",
  pattern: null,
  pf: 0.4,
  documents: valleyResponse.documents.slice(0, 2),
  per_document_suggestions: valleyResponse.per_document_suggestions.slice(0, 2),
  pattern_suggestions: null,
};

/** Single-year selection: finding is empty, documents still come back. */
export const noFindingResponse: QueryResponse = {
  ...valleyResponse,
  trend: null,
  pattern: null,
  pf: null,
  pattern_suggestions: null,
};
