"""
Driving the HTTP service
========================

The web UI talks to the engine exclusively through this JSON API. Here the
app is exercised in-process with a test client; `cif serve` runs the same
app over a real socket.
"""

from fastapi.testclient import TestClient

from cif import default_dataset_bytes, load_csv
from cif.service import SessionState, create_app

state = SessionState(parallelism=8)
state.add_dataset(load_csv(default_dataset_bytes()))
client = TestClient(create_app(state))

dataset_id = client.get("/api/datasets").json()["datasets"][0]["dataset_id"]
print(f"preloaded dataset: {dataset_id}")

hist = client.get(
    f"/api/datasets/{dataset_id}/histogram", params={"feature": "HNR", "bins": 8}
).json()
print(f"HNR histogram counts: {hist['counts']}")

clusters = client.post(
    f"/api/datasets/{dataset_id}/cluster",
    json={
        "algorithm": "kmeans",
        "params": {"k": 5, "seed": 42},
        "feature_x": "MDVP:Fo(Hz)",
        "feature_y": "MDVP:Flo(Hz)",
    },
).json()
print(f"clustered pair: {clusters['n_clusters']} clusters, inertia {clusters['inertia']:.2f}")

# Clicking a point in the scatterplot fires the similarity analysis; the
# response carries the ranked list and both matrix ingredients in one trip.
report = client.post(
    f"/api/datasets/{dataset_id}/similarity",
    json={
        "algorithm": "kmeans",
        "params": {"k": 5, "seed": 42},
        "source": {"feature_x": "MDVP:Flo(Hz)", "feature_y": "MDVP:Fo(Hz)", "row_index": 10},
        "aggregation": "max",
        "ordering": "olo",
        "exclude": ["status"],
    },
).json()
best = report["list"][0]
print(f"source cluster: {report['source_cluster']['size']} members")
print(f"best match: {best['pair']} cluster {best['cluster_id']} at J={best['jaccard']:.3f}")
print(f"matrix: {len(report['matrix']['features'])} features, "
      f"OLO cost {report['matrix']['cost']:.3f}")

importance = client.get(
    f"/api/datasets/{dataset_id}/importance", params={"target": "status"}
).json()
top = min(zip(importance["ranks"], importance["features"]))
print(f"most important feature for status: {top[1]}")
