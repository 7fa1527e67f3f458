/** Color assignments: categorical palette for clusters, sequential map for scores. */

// 10 distinguishable hues; cluster ids beyond 10 cycle.
export const CLUSTER_PALETTE = [
  "#4e79a7",
  "#f28e2b",
  "#59a14f",
  "#e15759",
  "#b07aa1",
  "#edc948",
  "#76b7b2",
  "#ff9da7",
  "#9c755f",
  "#bab0ac",
];

export const NOISE_COLOR = "#999999";

export function clusterColor(label: number): string {
  if (label < 0) return NOISE_COLOR;
  return CLUSTER_PALETTE[label % CLUSTER_PALETTE.length];
}

/** Sequential white-to-blue map over [0, 1] for similarity cells. */
export function similarityColor(value: number): string {
  const t = Math.max(0, Math.min(1, value));
  const from = { r: 247, g: 251, b: 255 };
  const to = { r: 8, g: 48, b: 107 };
  const r = Math.round(from.r + t * (to.r - from.r));
  const g = Math.round(from.g + t * (to.g - from.g));
  const b = Math.round(from.b + t * (to.b - from.b));
  return `rgb(${r}, ${g}, ${b})`;
}

/** Readable text color on top of a similarity cell. */
export function similarityTextColor(value: number): string {
  return value > 0.55 ? "#ffffff" : "#1b1b1b";
}
