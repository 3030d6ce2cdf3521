"""Association networks from per-video detection streams.

Inputs and outputs are the same text formats the ``socnet`` command line
reads and writes: CSV for rosters, ledgers and matrices, JSON lines for
detections and tracks, JSON for reports.
"""

import json

from ._socnet import (
    ConvergenceError,
    association_matrix,
    average_precision,
    iou,
    layout,
    synth,
    topk_accuracy,
    track,
)
from ._socnet import network_report as _network_report
from ._socnet import pipeline as _pipeline

__all__ = [
    "ConvergenceError",
    "association_matrix",
    "average_precision",
    "iou",
    "layout",
    "network_report",
    "pipeline",
    "synth",
    "topk_accuracy",
    "track",
]


def network_report(matrix_csv, config=""):
    """Density, efficiencies and per-individual measures as a dict."""
    return json.loads(_network_report(matrix_csv, config))


def pipeline(detections, seed, roster=None, config=""):
    """Run detections through tracking, association, measures and layout.

    ``detections`` maps video id to detection JSON lines; videos are processed
    in key order. The ``report`` entry of the result is parsed into a dict.
    """
    out = _pipeline(sorted(detections.items()), seed, roster, config)
    out["report"] = json.loads(out["report"])
    return out
