/** Typed client for the analysis service.
 *
 * Two concurrency rules from the dashboard's contract live here:
 * identical in-flight requests are deduplicated per endpoint key, and
 * logical slots (cluster, similarity, ...) discard responses that arrive
 * after a newer request superseded them.
 */

import type {
  ClusterRequest,
  ClusterResponse,
  DatasetSummary,
  HistogramResponse,
  ImportanceResponse,
  NormalizedResponse,
  RowsResponse,
  SimilarityReport,
  SimilarityRequest,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

/** Runs tasks for one logical slot; stale results resolve as undefined. */
export class LatestOnly {
  private seq = 0;

  async run<T>(task: () => Promise<T>): Promise<T | undefined> {
    const mine = ++this.seq;
    const result = await task();
    return mine === this.seq ? result : undefined;
  }

  /** Current sequence number, exposed for tests. */
  get sequence(): number {
    return this.seq;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private inflight = new Map<string, Promise<unknown>>();

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      // non-JSON error body; fall through with the status alone
    }
    if (!response.ok) {
      const message =
        body && typeof body === "object" && "error" in body
          ? String((body as { error: unknown }).error)
          : `request failed with status ${response.status}`;
      throw new ApiError(response.status, message);
    }
    return body as T;
  }

  /** GETs with the same path share one in-flight promise. */
  private deduped<T>(path: string): Promise<T> {
    const existing = this.inflight.get(path);
    if (existing) return existing as Promise<T>;
    const pending = this.request<T>(path).finally(() => this.inflight.delete(path));
    this.inflight.set(path, pending);
    return pending;
  }

  async uploadDataset(file: Blob, name = "upload.csv"): Promise<DatasetSummary> {
    const form = new FormData();
    form.append("file", file, name);
    return this.request<DatasetSummary>("/api/datasets", { method: "POST", body: form });
  }

  listDatasets(): Promise<{ datasets: DatasetSummary[] }> {
    return this.deduped("/api/datasets");
  }

  getRows(datasetId: string): Promise<RowsResponse> {
    return this.deduped(`/api/datasets/${encodeURIComponent(datasetId)}/rows`);
  }

  histogram(datasetId: string, feature: string, bins: number): Promise<HistogramResponse> {
    const query = `feature=${encodeURIComponent(feature)}&bins=${bins}`;
    return this.deduped(`/api/datasets/${encodeURIComponent(datasetId)}/histogram?${query}`);
  }

  normalized(datasetId: string, feature: string): Promise<NormalizedResponse> {
    const query = `feature=${encodeURIComponent(feature)}`;
    return this.deduped(`/api/datasets/${encodeURIComponent(datasetId)}/normalized?${query}`);
  }

  cluster(datasetId: string, body: ClusterRequest): Promise<ClusterResponse> {
    return this.request(`/api/datasets/${encodeURIComponent(datasetId)}/cluster`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  similarity(datasetId: string, body: SimilarityRequest): Promise<SimilarityReport> {
    return this.request(`/api/datasets/${encodeURIComponent(datasetId)}/similarity`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  importance(datasetId: string, target: string, lambda = 1.0): Promise<ImportanceResponse> {
    const query = `target=${encodeURIComponent(target)}&lambda=${lambda}`;
    return this.deduped(`/api/datasets/${encodeURIComponent(datasetId)}/importance?${query}`);
  }
}
