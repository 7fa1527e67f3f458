/** JSON payload shapes of the analysis service. */

export interface FeatureStats {
  min: number;
  max: number;
  mean: number;
  std: number;
  distinct_count: number;
}

export interface FeatureInfo {
  name: string;
  kind: "numeric" | "categorical";
  stats: FeatureStats | null;
}

export interface DatasetSummary {
  dataset_id: string;
  n_rows: number;
  dropped_rows: number[];
  features: FeatureInfo[];
}

export interface ColumnValues {
  name: string;
  kind: "numeric" | "categorical";
  values: (number | string)[];
}

export interface RowsResponse {
  n_rows: number;
  columns: ColumnValues[];
}

export interface HistogramResponse {
  feature: string;
  bin_count: number;
  edges: number[];
  counts: number[];
}

export interface NormalizedResponse {
  feature: string;
  values: number[];
}

export interface ClusterRequest {
  algorithm: "kmeans" | "dbscan";
  params: Record<string, number>;
  feature_x: string;
  feature_y: string;
}

export interface ClusterResponse {
  labels: number[];
  n_clusters: number;
  inertia?: number;
}

export interface SimilarityRequest {
  algorithm: "kmeans" | "dbscan";
  params: Record<string, number>;
  source: { feature_x: string; feature_y: string; row_index: number };
  aggregation: "max" | "mean";
  ordering: "original" | "olo";
  exclude: string[];
}

export interface SimilarityRecord {
  pair: [string, string];
  cluster_id: number;
  jaccard: number;
  cluster_size: number;
}

export interface SimilarityMatrix {
  features: string[];
  cells: (number | null)[][];
  permutation: number[];
  cost: number | null;
}

export interface SimilarityReport {
  schema_version: number;
  dataset_id: string;
  aggregation: "max" | "mean";
  ordering: "original" | "olo";
  source_cluster: {
    pair: [string, string];
    cluster_id: number;
    size: number;
    members: number[];
  };
  list: SimilarityRecord[];
  matrix: SimilarityMatrix;
  warnings: string[];
}

export interface ImportanceResponse {
  target: string;
  features: string[];
  scores: number[];
  ranks: number[];
}
