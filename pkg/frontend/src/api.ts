/** Typed client for the /v1 JSON API.
 *
 * Every shape here mirrors a service response verbatim; the UI never
 * invents or rescores anything, it only rearranges what came back.
 */

export interface DatasetInfo {
  name: string;
  keys: string[];
  year_min: number | null;
  year_max: number | null;
}

export interface SeriesPayload {
  dataset: string;
  key: string;
  years: number[];
  values: number[];
}

export interface DocHit {
  doc_id: string;
  score: number;
  snippet: string;
  title: string | null;
  url: string | null;
}

export interface Ranking {
  kind: string;
  entries: [string, number][];
}

export interface SuggestionPair {
  datasets: Ranking;
  keys: Ranking;
}

export interface QueryResponse {
  ir_text: string;
  es_query: string;
  trend: string | null;
  pattern: string | null;
  pf: number | null;
  documents: DocHit[];
  per_document_suggestions: SuggestionPair[];
  pattern_suggestions: { keys: Ranking; datasets: Ranking } | null;
}

export interface QueryRequest {
  dataset_names: string[];
  keys: string[];
  year_ranges: [number, number][];
  top_k?: number;
  text_mode?: "direct" | "indirect" | "nlp";
  pattern_method?: "pearson" | "dtw";
}

export class ApiError extends Error {
  constructor(message: string, readonly code: string, readonly status: number) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let res: Response;
  try {
    res = await fetch(url, init);
  } catch {
    throw new ApiError("service unreachable", "network", 0);
  }
  const body = await res.json().catch(() => null);
  if (!res.ok) {
    const code = typeof body?.code === "string" ? body.code : "error";
    const message =
      typeof body?.message === "string" ? body.message : `request failed with ${res.status}`;
    throw new ApiError(message, code, res.status);
  }
  return body as T;
}

export interface Api {
  collections(): Promise<string[]>;
  datasets(collection: string): Promise<DatasetInfo[]>;
  series(dataset: string, key: string): Promise<SeriesPayload>;
  query(body: QueryRequest): Promise<QueryResponse>;
}

/** The UI is served under /ui, so API paths are origin-relative. */
export const createApi = (base = ""): Api => ({
  collections: () => request(`${base}/v1/collections`),

  datasets: (collection) =>
    request(`${base}/v1/collections/${encodeURIComponent(collection)}/datasets`),

  series: (dataset, key) =>
    request(`${base}/v1/series?${new URLSearchParams({ dataset, key })}`),

  query: (body) =>
    request(`${base}/v1/query`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }),
});
