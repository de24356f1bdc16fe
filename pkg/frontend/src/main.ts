/** Entry point: resolves the page skeleton, boots the controller with
 * the first dataset and key, and wires the picker for manual adds.
 */

import { DatasetInfo, createApi } from "./api.js";
import { Controller } from "./controller.js";
import { Elements, Handlers, render } from "./render.js";

const api = createApi();

const byId = (id: string): HTMLElement => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
};

const els: Elements = {
  finding: byId("finding"),
  query: byId("query"),
  error: byId("error"),
  charts: byId("charts"),
  legend: byId("legend"),
  documents: byId("documents"),
  suggestions: byId("suggestions"),
};

const handlers: Handlers = {
  onBrush: (a, b) => void controller.brush(a, b),
  onSuggestion: (kind, name) => void controller.addSuggestion(kind, name),
};

const controller = new Controller(api, (state) => render(els, state, handlers));

function buildPicker(datasets: DatasetInfo[]): void {
  const picker = byId("picker");
  const datasetSelect = document.createElement("select");
  const keySelect = document.createElement("select");
  const add = document.createElement("button");
  add.textContent = "Add series";

  for (const info of datasets) {
    const option = document.createElement("option");
    option.value = info.name;
    option.textContent = info.name;
    datasetSelect.append(option);
  }

  const fillKeys = () => {
    keySelect.replaceChildren();
    const info = datasets.find((d) => d.name === datasetSelect.value);
    for (const key of info?.keys ?? []) {
      const option = document.createElement("option");
      option.value = key;
      option.textContent = key;
      keySelect.append(option);
    }
  };
  fillKeys();

  datasetSelect.addEventListener("change", fillKeys);
  add.addEventListener("click", () => {
    if (keySelect.value) void controller.addSeries(datasetSelect.value, keySelect.value);
  });
  picker.append(datasetSelect, keySelect, add);
}

async function boot(): Promise<void> {
  const [collection] = await api.collections();
  const datasets = await api.datasets(collection);
  buildPicker(datasets);
  const first = datasets[0];
  if (first && first.keys.length) {
    await controller.addSeries(first.name, first.keys[0]);
  }
}

boot().catch((err) => {
  els.error.hidden = false;
  els.error.textContent = String(err);
});
