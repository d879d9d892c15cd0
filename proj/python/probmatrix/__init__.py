"""Python access to the probmatrix core.

Structured results come back as plain dicts.
"""

import json

from . import _probmatrix as _core
from ._probmatrix import (
    InvalidInput,
    ProbmatrixError,
    UsageError,
    __version__,
    apply_calibrator as _apply_calibrator,
    auc_roc,
    bootstrap_ci,
    brier_score,
    distort,
    log_loss,
    pool_adjacent_violators,
    render_matrix_svg,
    run_cli,
    spiegelhalter_z,
    synth_csv,
    venn_abers_predict,
)

__all__ = [
    "InvalidInput",
    "ProbmatrixError",
    "UsageError",
    "__version__",
    "apply_calibrator",
    "assign_quadrants",
    "auc_roc",
    "bootstrap_ci",
    "brier_decomposition",
    "brier_score",
    "distort",
    "fit_calibrator",
    "log_loss",
    "pool_adjacent_violators",
    "render_matrix_svg",
    "run_cli",
    "spiegelhalter_z",
    "synth_csv",
    "venn_abers_predict",
    "wilcoxon_signed_rank",
]


def brier_decomposition(y, p, scheme="unique-value", bins=10):
    return json.loads(_core.brier_decomposition(y, p, scheme, bins))


def fit_calibrator(kind, y, p):
    return json.loads(_core.fit_calibrator(kind, y, p))


def apply_calibrator(model, p):
    if not isinstance(model, str):
        model = json.dumps(model)
    return _apply_calibrator(model, p)


def wilcoxon_signed_rank(a, b, alternative="two-sided"):
    return json.loads(_core.wilcoxon_signed_rank(a, b, alternative))


def assign_quadrants(discrimination_ranks, calibration, rule="median", z_threshold=1.96):
    return json.loads(_core.assign_quadrants(discrimination_ranks, calibration, rule, z_threshold))
