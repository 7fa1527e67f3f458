"""Cross-pair cluster similarity engine.

Clusters a tabular dataset in every unique 2-feature projection, compares a
user-selected source cluster against all clusters from all other projections
by Jaccard overlap, and seriates the aggregated feature-by-feature similarity
matrix. Ships with an HTTP service and a headless CLI over the same core.
"""

from .clustering import (
    DBSCAN,
    KMEANS,
    NOISE,
    ClusteringError,
    ClusteringParams,
    ClusterLabeling,
    dbscan_2d,
    kmeans_2d,
)
from .dataset import (
    Dataset,
    DatasetError,
    FeatureColumn,
    FeatureStats,
    Histogram,
    UnknownFeatureError,
    column_minmax,
    histogram,
    load_csv,
    to_csv,
    zscore,
)
from .importance import (
    ImportanceError,
    ImportanceRanking,
    RidgeModel,
    compute_importance,
    fit_ridge,
    linear_shapley,
    mc_shapley_oracle,
    rank_features,
)
from .pairgrid import (
    FeaturePairKey,
    GridCache,
    GridError,
    PairGrid,
    enumerate_pairs,
    numeric_features,
)
from .report import build_analysis_report
from .sampledata import default_dataset_bytes, default_dataset_path
from .seriation import (
    LinkageTree,
    Ordering,
    SeriationError,
    apply_order,
    feature_distances,
    hierarchical_cluster,
    optimal_leaf_order,
    ordering_cost,
)
from .similarity import (
    NoiseSelectionError,
    SimilarityError,
    SimilarityMatrix,
    SimilarityRecord,
    SourceSelection,
    aggregate,
    build_matrix,
    jaccard,
    rank_clusters,
    resolve_cluster,
    resolve_point,
)

__version__ = "0.1.0"
