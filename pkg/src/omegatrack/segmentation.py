"""Group tracked points into rigid bodies by agreement of their rotation rate."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInput


@dataclass
class SegmentLabeling:
    assignments: dict[str, int] = field(default_factory=dict)
    # cluster id -> (consensus omega, member count)
    cluster_omegas: dict[int, tuple[float, int]] = field(default_factory=dict)
    outliers: list[str] = field(default_factory=list)

    @property
    def n_clusters(self):
        return len(self.cluster_omegas)

    def members(self, cluster_id):
        return [pid for pid, c in self.assignments.items() if c == cluster_id]


def gap_clusters(values, tol):
    """Sorted-gap single linkage in 1-D.

    Returns a list of index arrays; a new cluster starts wherever two
    neighbouring sorted values are more than ``tol`` apart.
    """
    values = np.asarray(values, dtype=float)
    if not values.size:
        return []
    order = np.argsort(values, kind="stable")
    breaks = np.flatnonzero(np.diff(values[order]) > tol) + 1
    return np.split(order, breaks)


def segment_points(estimates, tol: float = 0.05) -> SegmentLabeling:
    """Cluster point estimates on their mean omega.

    Points with no valid sample are reported as outliers. Cluster ids are
    assigned in increasing order of omega.
    """
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if not estimates:
        raise EmptyInput("no estimates to segment")

    # sort by id first so ties in omega resolve independently of input order
    ests = sorted(estimates, key=lambda e: e.point_id)
    usable = [e for e in ests if e.n_valid > 0]
    labeling = SegmentLabeling(outliers=[e.point_id for e in ests if e.n_valid == 0])

    values = [e.mean_omega for e in usable]
    for cid, idx in enumerate(gap_clusters(values, tol)):
        members = [usable[i] for i in idx]
        for e in members:
            labeling.assignments[e.point_id] = cid
        consensus = math.fsum(e.mean_omega for e in members) / len(members)
        labeling.cluster_omegas[cid] = (consensus, len(members))
    return labeling


def pairwise_agreement(labels_true, labels_pred):
    """Fraction of point pairs on which two partitions agree (Rand index)."""
    keys = sorted(labels_true)
    n = len(keys)
    if n < 2:
        return 1.0
    agree = total = 0
    for i in range(n):
        for j in range(i + 1, n):
            a, b = keys[i], keys[j]
            same_true = labels_true[a] == labels_true[b]
            same_pred = labels_pred.get(a, -1 - i) == labels_pred.get(b, -1 - j)
            agree += same_true == same_pred
            total += 1
    return agree / total
