/** Dashboard selection state and its transition rules.
 *
 * The invariant everything else relies on: at most two features are selected,
 * and selecting a third evicts the chronologically first so the two most
 * recently selected features feed the clustering panel.
 */

export type P1View = "table" | "heatmap" | "condensed";
export type P3View = "list" | "matrix";
export type Aggregation = "max" | "mean";
export type OrderingMethod = "original" | "olo";
export type Algorithm = "kmeans" | "dbscan";

export interface ClusterParams {
  algorithm: Algorithm;
  k: number;
  eps: number;
  min_samples: number;
  seed: number;
}

export interface SelectionState {
  selectedFeatures: string[]; // chronological order, length <= 2
  p1View: P1View;
  clusterParams: ClusterParams;
  selectedRow: number | null;
  p3View: P3View;
  aggregation: Aggregation;
  ordering: OrderingMethod;
}

export const DEFAULT_PARAMS: ClusterParams = {
  algorithm: "kmeans",
  k: 5,
  eps: 0.5,
  min_samples: 5,
  seed: 42,
};

export function initialState(): SelectionState {
  return {
    selectedFeatures: [],
    p1View: "table",
    clusterParams: { ...DEFAULT_PARAMS },
    selectedRow: null,
    p3View: "list",
    aggregation: "max",
    ordering: "original",
  };
}

type Listener = (state: SelectionState) => void;

export class Store {
  private state: SelectionState = initialState();
  private listeners: Listener[] = [];

  get snapshot(): SelectionState {
    return {
      ...this.state,
      selectedFeatures: [...this.state.selectedFeatures],
      clusterParams: { ...this.state.clusterParams },
    };
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private commit(partial: Partial<SelectionState>): void {
    this.state = { ...this.state, ...partial };
    const snapshot = this.snapshot;
    for (const listener of this.listeners) listener(snapshot);
  }

  /** Header click: toggle off if selected, else append, evicting the oldest. */
  toggleFeature(name: string): void {
    const selected = [...this.state.selectedFeatures];
    const index = selected.indexOf(name);
    if (index >= 0) {
      selected.splice(index, 1);
    } else {
      selected.push(name);
      while (selected.length > 2) selected.shift();
    }
    this.commit({ selectedFeatures: selected, selectedRow: null });
  }

  /** Panel 3 click: make exactly this pair the active selection. */
  selectPair(pair: [string, string]): void {
    this.commit({ selectedFeatures: [...pair], selectedRow: null });
  }

  setP1View(view: P1View): void {
    this.commit({ p1View: view });
  }

  setP3View(view: P3View): void {
    this.commit({ p3View: view });
  }

  setAggregation(aggregation: Aggregation): void {
    this.commit({ aggregation });
  }

  setOrdering(ordering: OrderingMethod): void {
    this.commit({ ordering });
  }

  setClusterParams(params: Partial<ClusterParams>): void {
    this.commit({ clusterParams: { ...this.state.clusterParams, ...params } });
  }

  setSelectedRow(row: number | null): void {
    this.commit({ selectedRow: row });
  }
}
