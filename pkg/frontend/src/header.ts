/** Application header: dataset upload, clustering controls, importance trigger. */

import type { DatasetSummary } from "./types.js";
import type { Algorithm, ClusterParams, SelectionState } from "./state.js";

export interface HeaderCallbacks {
  onUpload(file: File): void;
  onParamsChange(partial: Partial<ClusterParams>): void;
  onComputeClusters(): void;
  onComputeImportance(target: string): void;
}

export class Header {
  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: HeaderCallbacks,
  ) {}

  update(state: SelectionState, summary: DatasetSummary | null): void {
    const params = state.clusterParams;
    const kmeans = params.algorithm === "kmeans";
    const numericNames = (summary?.features ?? [])
      .filter((f) => f.kind === "numeric")
      .map((f) => f.name);
    const canCompute = state.selectedFeatures.length === 2;
    const pairLabel = canCompute
      ? `${state.selectedFeatures[0]} / ${state.selectedFeatures[1]}`
      : "select two features in the data panel";

    this.root.innerHTML = `
      <span class="brand">cif · cluster similarity explorer</span>
      <label class="upload-control">upload CSV
        <input type="file" accept=".csv,text/csv" data-role="upload">
      </label>
      <span class="sep"></span>
      <label>algorithm
        <select data-role="algorithm">
          <option value="kmeans" ${kmeans ? "selected" : ""}>K-Means</option>
          <option value="dbscan" ${kmeans ? "" : "selected"}>DBSCAN</option>
        </select>
      </label>
      ${
        kmeans
          ? `<label>k <input type="number" min="1" step="1" value="${params.k}" data-param="k"></label>`
          : `<label>eps <input type="number" min="0.01" step="0.05" value="${params.eps}" data-param="eps"></label>
             <label>min_samples <input type="number" min="1" step="1" value="${params.min_samples}" data-param="min_samples"></label>`
      }
      <label>seed <input type="number" step="1" value="${params.seed}" data-param="seed"></label>
      <button data-role="compute-clusters" ${canCompute ? "" : "disabled"}
              title="${pairLabel}">compute clusters</button>
      <span class="sep"></span>
      <label>importance target
        <select data-role="importance-target">
          ${numericNames.map((n) => `<option value="${escapeAttr(n)}">${escapeHtml(n)}</option>`).join("")}
        </select>
      </label>
      <button data-role="compute-importance" ${numericNames.length ? "" : "disabled"}>compute</button>
    `;
    this.bind();
  }

  private bind(): void {
    const upload = this.root.querySelector<HTMLInputElement>('[data-role="upload"]');
    upload?.addEventListener("change", () => {
      const file = upload.files?.[0];
      if (file) this.callbacks.onUpload(file);
    });

    const algorithm = this.root.querySelector<HTMLSelectElement>('[data-role="algorithm"]');
    algorithm?.addEventListener("change", () => {
      this.callbacks.onParamsChange({ algorithm: algorithm.value as Algorithm });
    });

    for (const input of this.root.querySelectorAll<HTMLInputElement>("[data-param]")) {
      input.addEventListener("change", () => {
        const name = input.dataset.param as keyof ClusterParams;
        const value = Number(input.value);
        if (Number.isFinite(value)) this.callbacks.onParamsChange({ [name]: value });
      });
    }

    this.root
      .querySelector('[data-role="compute-clusters"]')
      ?.addEventListener("click", () => this.callbacks.onComputeClusters());

    const target = this.root.querySelector<HTMLSelectElement>('[data-role="importance-target"]');
    this.root
      .querySelector('[data-role="compute-importance"]')
      ?.addEventListener("click", () => {
        if (target?.value) this.callbacks.onComputeImportance(target.value);
      });
  }
}

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
}

export function escapeAttr(text: string): string {
  return escapeHtml(text).replaceAll('"', "&quot;");
}
