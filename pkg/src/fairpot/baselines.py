"""Post-processing baselines: group-b sigmoid rescaling and quantile matching
to the two groups' W1 barycenter."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._util import sigmoid
from .metrics import GROUP_A, GROUP_B, ScoreSet, xauc_disparity

# Fixed defaults so runs are reproducible: offset pinned at zero, scale
# searched over 50 log-spaced values in [0.1, 10].
DEFAULT_OFFSET = 0.0
DEFAULT_SCALE_GRID = tuple(np.geomspace(0.1, 10.0, 50))


@dataclass(frozen=True)
class PostLogitParams:
    """Chosen sigmoid rescaling for group b: s -> sigmoid(scale * s + offset)."""

    scale: float
    offset: float
    grid: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError(f"scale must be positive, got {self.scale}")


def apply_post_logit(params: PostLogitParams, scores_b) -> np.ndarray:
    """Elementwise sigmoid(scale * s + offset); strictly increasing, so the
    within-group ordering is preserved exactly."""
    s = np.asarray(scores_b, dtype=float)
    return sigmoid(params.scale * s + params.offset)


def fit_post_logit(
    train: ScoreSet,
    grid=DEFAULT_SCALE_GRID,
    offset: float = DEFAULT_OFFSET,
) -> PostLogitParams:
    """Pick the grid scale minimizing the training disparity after rescaling
    group b only; ties go to the smallest scale."""
    grid = tuple(float(g) for g in grid)
    if not grid:
        raise ValueError("post-logit scale grid is empty")
    if not np.any(train.group_mask(GROUP_A)) or not np.any(train.group_mask(GROUP_B)):
        raise ValueError("post-logit fitting needs both groups in the training set")
    scores_b = train.group_scores(GROUP_B)
    best_scale = None
    best_disparity = np.inf
    for scale in sorted(grid):
        candidate = PostLogitParams(scale=scale, offset=offset, grid=grid)
        transformed = train.replace_group_scores(
            GROUP_B, apply_post_logit(candidate, scores_b)
        )
        disparity = xauc_disparity(transformed)
        if disparity < best_disparity:
            best_disparity = disparity
            best_scale = scale
    return PostLogitParams(scale=best_scale, offset=offset, grid=grid)


def _quantile_levels(sorted_scores: np.ndarray) -> np.ndarray:
    # level of each distinct value = last order-statistic position / (n - 1)
    n = len(sorted_scores)
    if n == 1:
        return np.array([0.5])
    _, last = np.unique(sorted_scores[::-1], return_index=True)
    last_pos = n - 1 - last
    return last_pos / (n - 1)


def _group_quantile_maps(train_scores: np.ndarray):
    """Forward (score -> level) and inverse (level -> score) empirical quantile
    maps with linear interpolation between order statistics."""
    s = np.sort(train_scores)
    n = len(s)
    uniq = np.unique(s)
    levels_of_uniq = _quantile_levels(s)
    grid_levels = np.linspace(0.0, 1.0, n) if n > 1 else np.array([0.5])

    def score_to_level(x):
        return np.interp(x, uniq, levels_of_uniq)

    def level_to_score(t):
        return np.interp(t, grid_levels, s)

    return score_to_level, level_to_score


def wasserstein_fair(train: ScoreSet, test: ScoreSet) -> ScoreSet:
    """Map both groups' test scores to the shared barycenter quantile function.

    Group quantile functions are estimated on the training split; the
    barycenter averages them with weights proportional to group training
    sizes. Test scores outside the training range clamp to boundary quantiles.
    """
    for s, name in ((train, "train"), (test, "test")):
        for g in (GROUP_A, GROUP_B):
            if not np.any(s.group_mask(g)):
                raise ValueError(f"{name} set contains no group {g!r} records")

    train_a = train.group_scores(GROUP_A)
    train_b = train.group_scores(GROUP_B)
    w_a = len(train_a) / (len(train_a) + len(train_b))
    w_b = 1.0 - w_a

    to_level_a, to_score_a = _group_quantile_maps(train_a)
    to_level_b, to_score_b = _group_quantile_maps(train_b)

    def barycenter_at(levels):
        return w_a * to_score_a(levels) + w_b * to_score_b(levels)

    out = test.replace_group_scores(
        GROUP_A, barycenter_at(to_level_a(test.group_scores(GROUP_A)))
    )
    return out.replace_group_scores(
        GROUP_B, barycenter_at(to_level_b(test.group_scores(GROUP_B)))
    )
