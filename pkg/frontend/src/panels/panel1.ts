/** Panel 1, data and feature exploration: table, heatmap, and condensed views.
 *
 * Clicking a feature name (any view) toggles its selection for the clustering
 * panel. The table sorts and hides columns; the heatmap colors each cell by
 * its column-normalized value served by the backend; the condensed view shows
 * a mini histogram per feature plus importance ranks once computed.
 */

import { similarityColor } from "../colors.js";
import { escapeAttr, escapeHtml } from "../header.js";
import type { P1View, SelectionState } from "../state.js";
import type {
  DatasetSummary,
  HistogramResponse,
  ImportanceResponse,
  RowsResponse,
} from "../types.js";

export interface Panel1Data {
  summary: DatasetSummary | null;
  rows: RowsResponse | null;
  normalized: Map<string, number[]>;
  histograms: Map<string, HistogramResponse>;
  importance: ImportanceResponse | null;
}

export interface Panel1Callbacks {
  onFeatureToggle(name: string): void;
  onP1View(view: P1View): void;
  onHistogramOpen(feature: string): void;
}

const VIEWS: { id: P1View; icon: string; label: string }[] = [
  { id: "table", icon: "▦", label: "table" },
  { id: "heatmap", icon: "▩", label: "heatmap" },
  { id: "condensed", icon: "≣", label: "condensed" },
];

export class Panel1 {
  private sortBy: { column: string; direction: 1 | -1 } | null = null;
  private hidden = new Set<string>();
  private lastState: SelectionState | null = null;
  private lastData: Panel1Data | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: Panel1Callbacks,
  ) {}

  update(state: SelectionState, data: Panel1Data): void {
    this.lastState = state;
    this.lastData = data;
    if (!data.summary || !data.rows) {
      this.root.innerHTML = `<div class="placeholder">loading dataset…</div>`;
      return;
    }
    const tabs = VIEWS.map(
      (v) => `
        <button class="tab ${state.p1View === v.id ? "active" : ""}"
                data-view="${v.id}" title="${v.label}">${v.icon}</button>`,
    ).join("");
    let body: string;
    if (state.p1View === "condensed") {
      body = this.renderCondensed(state, data);
    } else {
      body = this.renderTable(state, data, state.p1View === "heatmap");
    }
    this.root.innerHTML = `
      <div class="panel-toolbar"><span class="panel-title">data</span>${tabs}</div>
      <div class="panel-body">${body}</div>
    `;
    this.bind();
  }

  private rerender(): void {
    if (this.lastState && this.lastData) this.update(this.lastState, this.lastData);
  }

  private visibleFeatures(data: Panel1Data): string[] {
    return (data.summary?.features ?? [])
      .map((f) => f.name)
      .filter((name) => !this.hidden.has(name));
  }

  private sortedRowOrder(data: Panel1Data): number[] {
    const rows = data.rows!;
    const order = Array.from({ length: rows.n_rows }, (_, i) => i);
    if (!this.sortBy) return order;
    const column = rows.columns.find((c) => c.name === this.sortBy!.column);
    if (!column) return order;
    const direction = this.sortBy.direction;
    order.sort((a, b) => {
      const va = column.values[a];
      const vb = column.values[b];
      if (va === vb) return a - b;
      return (va < vb ? -1 : 1) * direction;
    });
    return order;
  }

  private renderTable(state: SelectionState, data: Panel1Data, heatmap: boolean): string {
    const features = this.visibleFeatures(data);
    const rows = data.rows!;
    const byName = new Map(rows.columns.map((c) => [c.name, c]));
    const order = this.sortedRowOrder(data);
    const selected = new Set(state.selectedFeatures);

    const headers = features
      .map((name) => {
        const arrow =
          this.sortBy?.column === name ? (this.sortBy.direction === 1 ? "▲" : "▼") : "↕";
        return `
          <th class="${selected.has(name) ? "selected" : ""}" data-feature="${escapeAttr(name)}">
            <span class="feature-name" data-select="${escapeAttr(name)}">${escapeHtml(name)}</span>
            <button class="mini" data-sort="${escapeAttr(name)}" title="sort">${arrow}</button>
            <button class="mini" data-hide="${escapeAttr(name)}" title="hide">×</button>
          </th>`;
      })
      .join("");

    const body = order
      .map((row) => {
        const cells = features
          .map((name) => {
            const column = byName.get(name)!;
            const value = column.values[row];
            const text =
              typeof value === "number" ? formatNumber(value) : escapeHtml(String(value));
            if (heatmap && column.kind === "numeric") {
              const norm = data.normalized.get(name)?.[row];
              const style =
                norm === undefined ? "" : ` style="background:${similarityColor(norm)}"`;
              return `<td class="heat"${style}><span class="cell-value">${text}</span></td>`;
            }
            return `<td>${text}</td>`;
          })
          .join("");
        return `<tr class="${heatmap ? "compact" : ""}">${cells}</tr>`;
      })
      .join("");

    const hiddenNote = this.hidden.size
      ? `<div class="hidden-note">hidden: ${[...this.hidden].map(escapeHtml).join(", ")}
           <button data-role="unhide">show all</button></div>`
      : "";
    return `${hiddenNote}<div class="table-scroll"><table class="data-table ${
      heatmap ? "heatmap" : ""
    }"><thead><tr>${headers}</tr></thead><tbody>${body}</tbody></table></div>`;
  }

  private renderCondensed(state: SelectionState, data: Panel1Data): string {
    const selected = new Set(state.selectedFeatures);
    const ranks = new Map<string, number>();
    if (data.importance) {
      data.importance.features.forEach((f, i) => ranks.set(f, data.importance!.ranks[i]));
    }
    const items = (data.summary?.features ?? [])
      .map((feature) => {
        const hist = data.histograms.get(feature.name);
        const spark = hist ? sparkline(hist) : `<span class="placeholder">–</span>`;
        const rank = ranks.has(feature.name)
          ? `<span class="rank-badge" title="importance rank">#${ranks.get(feature.name)}</span>`
          : "";
        return `
          <div class="condensed-item ${selected.has(feature.name) ? "selected" : ""}">
            <span class="feature-name" data-select="${escapeAttr(feature.name)}">
              ${escapeHtml(feature.name)}</span>
            ${rank}
            <span class="spark" data-histogram="${escapeAttr(feature.name)}"
                  title="open histogram">${feature.kind === "numeric" ? spark : "categorical"}</span>
          </div>`;
      })
      .join("");
    return `<div class="condensed-list">${items}</div>`;
  }

  private bind(): void {
    for (const tab of this.root.querySelectorAll<HTMLElement>(".tab[data-view]")) {
      tab.addEventListener("click", () => this.callbacks.onP1View(tab.dataset.view as P1View));
    }
    for (const el of this.root.querySelectorAll<HTMLElement>("[data-select]")) {
      el.addEventListener("click", () => this.callbacks.onFeatureToggle(el.dataset.select!));
    }
    for (const el of this.root.querySelectorAll<HTMLElement>("[data-sort]")) {
      el.addEventListener("click", () => {
        const column = el.dataset.sort!;
        this.sortBy =
          this.sortBy?.column === column
            ? { column, direction: this.sortBy.direction === 1 ? -1 : 1 }
            : { column, direction: 1 };
        this.rerender();
      });
    }
    for (const el of this.root.querySelectorAll<HTMLElement>("[data-hide]")) {
      el.addEventListener("click", () => {
        this.hidden.add(el.dataset.hide!);
        this.rerender();
      });
    }
    this.root.querySelector('[data-role="unhide"]')?.addEventListener("click", () => {
      this.hidden.clear();
      this.rerender();
    });
    for (const el of this.root.querySelectorAll<HTMLElement>("[data-histogram]")) {
      el.addEventListener("click", () =>
        this.callbacks.onHistogramOpen(el.dataset.histogram!),
      );
    }
  }
}

function formatNumber(value: number): string {
  if (Number.isInteger(value)) return String(value);
  const magnitude = Math.abs(value);
  if (magnitude !== 0 && (magnitude < 1e-3 || magnitude >= 1e6)) return value.toExponential(3);
  return value.toFixed(4).replace(/0+$/, "").replace(/\.$/, "");
}

/** Tiny inline SVG bar chart of a histogram. */
export function sparkline(hist: HistogramResponse, width = 96, height = 22): string {
  const peak = Math.max(...hist.counts, 1);
  const barWidth = width / hist.counts.length;
  const bars = hist.counts
    .map((count, i) => {
      const h = (count / peak) * (height - 2);
      const x = (i * barWidth).toFixed(2);
      const y = (height - h).toFixed(2);
      return `<rect x="${x}" y="${y}" width="${(barWidth - 0.5).toFixed(2)}" height="${h.toFixed(2)}"></rect>`;
    })
    .join("");
  return `<svg class="sparkline" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">${bars}</svg>`;
}
