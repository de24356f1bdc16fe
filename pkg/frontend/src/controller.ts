/** Event handlers shared by the DOM shell and the tests.
 *
 * Owns the state, talks to the API through an injected client, and
 * pushes every new state through onChange. One query is in flight per
 * brush gesture at most; see state.ts for how stale replies are dropped.
 */

import { Api, ApiError, QueryRequest } from "./api.js";
import {
  AppState,
  addSeries,
  applyError,
  applyResponse,
  beginRequest,
  hasSeries,
  initialState,
  setBrush,
} from "./state.js";

const unique = (values: string[]): string[] => [...new Set(values)];

const messageOf = (err: unknown): string =>
  err instanceof ApiError ? err.message : String(err);

export class Controller {
  state: AppState = initialState();

  constructor(
    private readonly api: Api,
    private readonly onChange: (state: AppState) => void = () => {},
  ) {}

  private set(next: AppState): void {
    if (next === this.state) return;
    this.state = next;
    this.onChange(next);
  }

  async addSeries(dataset: string, key: string): Promise<boolean> {
    if (hasSeries(this.state, dataset, key)) return false;
    try {
      const payload = await this.api.series(dataset, key);
      this.set(addSeries(this.state, payload));
      return true;
    } catch (err) {
      this.set({ ...this.state, error: messageOf(err) });
      return false;
    }
  }

  /** A key suggestion joins the brushable dataset; a dataset suggestion
   * opens a second panel showing the first visible key. The brush and
   * the current results survive either way.
   */
  async addSuggestion(kind: "key" | "dataset", name: string): Promise<boolean> {
    const first = this.state.series[0];
    if (!first) return false;
    return kind === "key"
      ? this.addSeries(first.dataset, name)
      : this.addSeries(name, first.key);
  }

  async brush(a: number, b: number): Promise<void> {
    const brushed = setBrush(this.state, a, b);
    if (!brushed.brush) return;
    const { state: next, seq } = beginRequest(brushed);
    this.set(next);
    try {
      const response = await this.api.query(queryBody(next));
      this.set(applyResponse(this.state, seq, response));
    } catch (err) {
      this.set(applyError(this.state, seq, messageOf(err)));
    }
  }
}

export const queryBody = (state: AppState): QueryRequest => ({
  dataset_names: unique(state.series.map((s) => s.dataset)),
  keys: unique(state.series.map((s) => s.key)),
  year_ranges: [state.brush ?? [0, 0]],
  top_k: 5,
});
