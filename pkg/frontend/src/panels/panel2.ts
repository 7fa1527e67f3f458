/** Panel 2, the focused 2D clustering scatterplot.
 *
 * Points are the raw values of the selected pair, colored by cluster id from
 * the backend labeling (noise gray). Clicking a point selects its cluster and
 * triggers the similarity analysis.
 */

import { clusterColor } from "../colors.js";
import { escapeHtml } from "../header.js";
import type { SelectionState } from "../state.js";

export interface Panel2Data {
  featureX: string | null;
  featureY: string | null;
  xValues: number[];
  yValues: number[];
  labels: number[] | null;
  nClusters: number;
}

const WIDTH = 480;
const HEIGHT = 440;
const MARGIN = 36;

export class Panel2 {
  constructor(
    private readonly root: HTMLElement,
    private readonly onPointClick: (row: number) => void,
  ) {}

  update(state: SelectionState, data: Panel2Data): void {
    const title = `<div class="panel-toolbar"><span class="panel-title">selection</span></div>`;
    if (!data.featureX || !data.featureY) {
      this.root.innerHTML = `${title}
        <div class="placeholder">select two features, then compute clusters</div>`;
      return;
    }
    if (!data.labels) {
      this.root.innerHTML = `${title}
        <div class="placeholder">computing clusters for
          ${escapeHtml(data.featureX)} / ${escapeHtml(data.featureY)}…</div>`;
      return;
    }

    const sx = scale(data.xValues, MARGIN, WIDTH - 12);
    const sy = scale(data.yValues, HEIGHT - MARGIN, 12); // y grows upward
    const points = data.labels
      .map((label, row) => {
        const cx = sx(data.xValues[row]).toFixed(1);
        const cy = sy(data.yValues[row]).toFixed(1);
        const selected = state.selectedRow === row ? ' class="selected-point"' : "";
        return `<circle${selected} cx="${cx}" cy="${cy}" r="3.5"
          fill="${clusterColor(label)}" data-row="${row}" data-label="${label}">
          <title>row ${row} — cluster ${label === -1 ? "noise" : label}</title></circle>`;
      })
      .join("");

    const legend = Array.from({ length: data.nClusters }, (_, c) => {
      return `<span class="legend-item">
        <span class="swatch" style="background:${clusterColor(c)}"></span>cluster ${c}</span>`;
    }).join("");
    const noise = data.labels.includes(-1)
      ? `<span class="legend-item"><span class="swatch" style="background:${clusterColor(-1)}"></span>noise</span>`
      : "";

    this.root.innerHTML = `${title}
      <div class="scatter-wrap">
        <svg class="scatter" viewBox="0 0 ${WIDTH} ${HEIGHT}" width="${WIDTH}" height="${HEIGHT}">
          <text class="axis-label" x="${WIDTH / 2}" y="${HEIGHT - 6}" text-anchor="middle">
            ${escapeHtml(data.featureX)}</text>
          <text class="axis-label" x="12" y="${HEIGHT / 2}" text-anchor="middle"
            transform="rotate(-90 12 ${HEIGHT / 2})">${escapeHtml(data.featureY)}</text>
          ${points}
        </svg>
        <div class="legend">${legend}${noise}</div>
      </div>`;

    for (const circle of this.root.querySelectorAll<SVGElement>("circle[data-row]")) {
      circle.addEventListener("click", () =>
        this.onPointClick(Number(circle.dataset.row)),
      );
    }
  }
}

function scale(values: number[], outLo: number, outHi: number): (v: number) => number {
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  const span = hi - lo || 1;
  return (v) => outLo + ((v - lo) / span) * (outHi - outLo);
}
