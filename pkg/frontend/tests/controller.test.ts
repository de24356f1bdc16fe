import { describe, expect, it } from "vitest";

import {
  Api,
  ApiError,
  DatasetInfo,
  QueryRequest,
  QueryResponse,
  SeriesPayload,
} from "../src/api.js";
import { Controller, queryBody } from "../src/controller.js";
import { AppState } from "../src/state.js";
import { docLines, groupPanels, suggestionLists } from "../src/viewmodel.js";
import {
  democracySeries,
  plateauResponse,
  swedenSeries,
  usSeries,
  valleyResponse,
} from "./fixtures.js";

const deferred = <T,>() => {
  let resolve!: (value: T) => void;
  let reject!: (reason: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
};

class FakeApi implements Api {
  private readonly known = new Map<string, SeriesPayload>();
  readonly seriesCalls: [string, string][] = [];
  readonly queryCalls: QueryRequest[] = [];
  nextQuery: () => Promise<QueryResponse> = async () => valleyResponse;

  constructor(...series: SeriesPayload[]) {
    for (const s of series) this.known.set(`${s.dataset}/${s.key}`, s);
  }

  async collections(): Promise<string[]> {
    return ["historical-indicators"];
  }

  async datasets(): Promise<DatasetInfo[]> {
    return [];
  }

  async series(dataset: string, key: string): Promise<SeriesPayload> {
    this.seriesCalls.push([dataset, key]);
    const hit = this.known.get(`${dataset}/${key}`);
    if (!hit) throw new ApiError(`unknown key '${key}'`, "not_found", 404);
    return hit;
  }

  query(body: QueryRequest): Promise<QueryResponse> {
    this.queryCalls.push(body);
    return this.nextQuery();
  }
}

const setup = async () => {
  const api = new FakeApi(usSeries, swedenSeries, democracySeries);
  const changes: AppState[] = [];
  const controller = new Controller(api, (s) => changes.push(s));
  await controller.addSeries("life expectancy", "united states");
  return { api, controller, changes };
};

describe("the exploration loop", () => {
  it("brushing the valley renders the documents and both rankings", async () => {
    const { api, controller } = await setup();
    await controller.brush(1860, 1866);

    expect(api.queryCalls).toEqual([
      {
        dataset_names: ["life expectancy"],
        keys: ["united states"],
        year_ranges: [[1860, 1866]],
        top_k: 5,
      },
    ]);
    const response = controller.state.response!;
    expect(docLines(response).map((l) => l.docId)).toContain("civil-war-outbreak");
    expect(docLines(response)).toHaveLength(5);
    expect(suggestionLists(response).map((l) => l.kind)).toEqual(["key", "dataset"]);
  });

  it("clicking the rank-1 key overlays its series and keeps brush and results", async () => {
    const { api, controller } = await setup();
    await controller.brush(1860, 1866);
    const before = controller.state.response;

    const [rank1] = suggestionLists(before!)[0].entries[0];
    const added = await controller.addSuggestion("key", rank1);

    expect(added).toBe(true);
    expect(api.seriesCalls).toContainEqual(["life expectancy", "sweden"]);
    expect(controller.state.series.map((s) => s.key)).toEqual(["united states", "sweden"]);
    expect(controller.state.brush).toEqual([1860, 1866]);
    expect(controller.state.response).toBe(before);
  });

  it("ignores a click on an already visible key", async () => {
    const { api, controller } = await setup();
    const state = controller.state;
    const added = await controller.addSuggestion("key", "united states");
    expect(added).toBe(false);
    expect(api.seriesCalls).toHaveLength(1);
    expect(controller.state).toBe(state);
  });

  it("a dataset suggestion opens a second panel for the visible key", async () => {
    const { controller } = await setup();
    await controller.addSuggestion("dataset", "democracy index");
    const panels = groupPanels(controller.state.series);
    expect(panels.map((p) => p.dataset)).toEqual(["life expectancy", "democracy index"]);
  });

  it("widens the next query once more series are visible", async () => {
    const { api, controller } = await setup();
    await controller.addSuggestion("key", "sweden");
    await controller.addSuggestion("dataset", "democracy index");
    await controller.brush(1860, 1866);
    expect(api.queryCalls.at(-1)).toEqual({
      dataset_names: ["life expectancy", "democracy index"],
      keys: ["united states", "sweden"],
      year_ranges: [[1860, 1866]],
      top_k: 5,
    });
  });
});

describe("stale responses", () => {
  it("a rapid double-brush keeps only the newest answer", async () => {
    const { api, controller } = await setup();
    const slow = deferred<QueryResponse>();
    const fast = deferred<QueryResponse>();
    const pending = [slow, fast];
    api.nextQuery = () => pending.shift()!.promise;

    const first = controller.brush(1860, 1866);
    const second = controller.brush(1890, 1900);

    fast.resolve(plateauResponse);
    await second;
    expect(controller.state.response).toBe(plateauResponse);

    slow.resolve(valleyResponse);
    await first;
    expect(controller.state.response).toBe(plateauResponse);
    expect(controller.state.brush).toEqual([1890, 1900]);
    expect(controller.state.pending).toBe(false);
  });

  it("a late failure from a superseded brush is dropped too", async () => {
    const { api, controller } = await setup();
    const slow = deferred<QueryResponse>();
    const fast = deferred<QueryResponse>();
    const pending = [slow, fast];
    api.nextQuery = () => pending.shift()!.promise;

    const first = controller.brush(1860, 1866);
    const second = controller.brush(1890, 1900);
    fast.resolve(plateauResponse);
    await second;
    slow.reject(new ApiError("service unreachable", "network", 0));
    await first;

    expect(controller.state.error).toBeNull();
    expect(controller.state.response).toBe(plateauResponse);
  });
});

describe("failures", () => {
  it("a failing query raises the banner but keeps earlier results", async () => {
    const { api, controller } = await setup();
    await controller.brush(1860, 1866);
    api.nextQuery = async () => {
      throw new ApiError("backend search failed: es unreachable", "backend_error", 502);
    };
    await controller.brush(1870, 1880);

    expect(controller.state.error).toMatch(/backend search failed/);
    expect(controller.state.response).toBe(valleyResponse);
    expect(docLines(controller.state.response!)).toHaveLength(5);
  });

  it("an unknown suggestion surfaces the service message", async () => {
    const { controller } = await setup();
    const added = await controller.addSuggestion("dataset", "no such dataset");
    expect(added).toBe(false);
    expect(controller.state.error).toMatch(/unknown key/);
    expect(controller.state.series).toHaveLength(1);
  });

  it("brushing before any series is loaded does nothing", async () => {
    const api = new FakeApi();
    const controller = new Controller(api);
    await controller.brush(1860, 1866);
    expect(api.queryCalls).toEqual([]);
    expect(controller.state.response).toBeNull();
  });
});

describe("queryBody", () => {
  it("deduplicates datasets and keys in first-seen order", async () => {
    const { controller } = await setup();
    await controller.addSuggestion("key", "sweden");
    await controller.addSuggestion("dataset", "democracy index");
    const body = queryBody({ ...controller.state, brush: [1901, 1910] });
    expect(body.dataset_names).toEqual(["life expectancy", "democracy index"]);
    expect(body.keys).toEqual(["united states", "sweden"]);
    expect(body.year_ranges).toEqual([[1901, 1910]]);
  });
});
