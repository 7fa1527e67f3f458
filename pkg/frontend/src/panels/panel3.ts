/** Panel 3, cross-pair cluster similarity: ranked list and reorderable matrix.
 *
 * Both views render from the similarity report the service computed for the
 * selected source cluster. Toggling list/matrix, max/mean, or original/OLO
 * never recomputes anything: reports for both aggregations are prefetched and
 * the OLO permutation ships inside each report.
 */

import { similarityColor, similarityTextColor } from "../colors.js";
import { escapeAttr, escapeHtml } from "../header.js";
import type { Aggregation, OrderingMethod, P3View, SelectionState } from "../state.js";
import type { SimilarityReport } from "../types.js";

export interface Panel3Callbacks {
  onPairOpen(pair: [string, string]): void;
  onP3View(view: P3View): void;
  onAggregation(aggregation: Aggregation): void;
  onOrdering(ordering: OrderingMethod): void;
}

const LIST_LIMIT = 200;

export class Panel3 {
  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: Panel3Callbacks,
  ) {}

  update(state: SelectionState, report: SimilarityReport | null): void {
    const toolbar = `
      <div class="panel-toolbar">
        <span class="panel-title">cluster similarity</span>
        <button class="tab ${state.p3View === "list" ? "active" : ""}" data-p3view="list">list</button>
        <button class="tab ${state.p3View === "matrix" ? "active" : ""}" data-p3view="matrix">matrix</button>
        <select data-role="aggregation" title="aggregation">
          <option value="max" ${state.aggregation === "max" ? "selected" : ""}>Maximum</option>
          <option value="mean" ${state.aggregation === "mean" ? "selected" : ""}>Average</option>
        </select>
        <select data-role="ordering" title="matrix ordering">
          <option value="original" ${state.ordering === "original" ? "selected" : ""}>Original</option>
          <option value="olo" ${state.ordering === "olo" ? "selected" : ""}>Optimal Leaf Ordering</option>
        </select>
      </div>`;

    let body: string;
    if (!report) {
      body = `<div class="placeholder">click a data point in the selection panel
        to compare its cluster across all other feature pairs</div>`;
    } else {
      const source = report.source_cluster;
      const context = `<div class="source-note">source: cluster ${source.cluster_id}
        (${source.size} rows) of ${escapeHtml(source.pair[0])} / ${escapeHtml(source.pair[1])}</div>`;
      const warnings = report.warnings.length
        ? `<div class="warnings">${report.warnings.map(escapeHtml).join("<br>")}</div>`
        : "";
      body =
        context +
        warnings +
        (state.p3View === "list" ? renderList(report) : renderMatrix(report, state.ordering));
    }

    this.root.innerHTML = toolbar + `<div class="panel-body">${body}</div>`;
    this.bind();
  }

  private bind(): void {
    for (const tab of this.root.querySelectorAll<HTMLElement>("[data-p3view]")) {
      tab.addEventListener("click", () =>
        this.callbacks.onP3View(tab.dataset.p3view as P3View),
      );
    }
    const aggregation = this.root.querySelector<HTMLSelectElement>('[data-role="aggregation"]');
    aggregation?.addEventListener("change", () =>
      this.callbacks.onAggregation(aggregation.value as Aggregation),
    );
    const ordering = this.root.querySelector<HTMLSelectElement>('[data-role="ordering"]');
    ordering?.addEventListener("change", () =>
      this.callbacks.onOrdering(ordering.value as OrderingMethod),
    );
    for (const el of this.root.querySelectorAll<HTMLElement>("[data-pair]")) {
      el.addEventListener("click", () => {
        const [x, y] = JSON.parse(el.dataset.pair!) as [string, string];
        this.callbacks.onPairOpen([x, y]);
      });
    }
  }
}

function renderList(report: SimilarityReport): string {
  const rows = report.list
    .slice(0, LIST_LIMIT)
    .map((record, index) => {
      const pair = escapeAttr(JSON.stringify(record.pair));
      return `
        <tr class="list-row" data-pair="${pair}">
          <td>${index + 1}</td>
          <td>${escapeHtml(record.pair[0])} / ${escapeHtml(record.pair[1])}</td>
          <td>${record.cluster_id}</td>
          <td class="num">${record.jaccard.toFixed(3)}</td>
          <td class="num">${record.cluster_size}</td>
        </tr>`;
    })
    .join("");
  const truncated =
    report.list.length > LIST_LIMIT
      ? `<div class="hidden-note">showing top ${LIST_LIMIT} of ${report.list.length}</div>`
      : "";
  return `
    <div class="table-scroll">
      <table class="data-table list-view">
        <thead><tr><th>#</th><th>feature pair</th><th>cluster</th><th>jaccard</th><th>size</th></tr></thead>
        <tbody>${rows}</tbody>
      </table>
    </div>${truncated}`;
}

function renderMatrix(report: SimilarityReport, ordering: OrderingMethod): string {
  const { features, cells, permutation } = report.matrix;
  const order =
    ordering === "olo" ? permutation : Array.from(features, (_, i) => i);
  const d = features.length;

  const headerCells = order
    .map((p) => `<th class="matrix-col"><span>${escapeHtml(features[p])}</span></th>`)
    .join("");
  const rows = order
    .map((pi) => {
      const rowCells = order
        .map((pj) => {
          if (pi === pj) return `<td class="matrix-cell diagonal"></td>`;
          const value = cells[pi][pj];
          const pairAttr = escapeAttr(JSON.stringify([features[pi], features[pj]]));
          if (value === null) {
            return `<td class="matrix-cell undefined" data-pair="${pairAttr}"
              title="${escapeAttr(features[pi])} / ${escapeAttr(features[pj])}: undefined"></td>`;
          }
          const style = `background:${similarityColor(value)};color:${similarityTextColor(value)}`;
          return `<td class="matrix-cell" style="${style}" data-pair="${pairAttr}"
            title="${escapeAttr(features[pi])} / ${escapeAttr(features[pj])}: ${value.toFixed(3)}"
            >${value >= 0.995 ? "1" : value.toFixed(2).slice(1)}</td>`;
        })
        .join("");
      return `<tr><th class="matrix-row">${escapeHtml(features[pi])}</th>${rowCells}</tr>`;
    })
    .join("");

  const cost =
    ordering === "olo" && report.matrix.cost !== null
      ? `<div class="hidden-note">optimal leaf ordering, cost ${report.matrix.cost.toFixed(3)}</div>`
      : "";
  return `
    <div class="table-scroll matrix-scroll">
      <table class="matrix" data-size="${d}">
        <thead><tr><th></th>${headerCells}</tr></thead>
        <tbody>${rows}</tbody>
      </table>
    </div>${cost}`;
}
