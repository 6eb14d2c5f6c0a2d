"""Proportional transport of risk scores and its test-set generalization.

The training-side map moves the highest-scoring fraction ``lam`` of the moving
group onto the reference group's score support via a shared optimal-transport
plan; everything below the top portion keeps its original score. Test scores
are then pushed through a piecewise-linear map built from the (original,
transported) training pairs, clamping outside the training range.

At ``lam == 0`` the whole pipeline is the identity, bit for bit: the learned
map is known to be the identity, so no interpolation (and in particular no
boundary clamping) is applied to test scores.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import metrics
from ._util import ceil_count
from .metrics import GROUP_A, GROUP_B, ScoreSet
from .ot import EmpiricalMeasure, TransportPlan, barycentric_projection, solve_ot_1d
from .pareto import TradeoffPoint

Direction = Literal["b_to_a", "a_to_b"]
Mode = Literal["global", "partial"]

DIRECTIONS = ("b_to_a", "a_to_b")
MODES = ("global", "partial")


@dataclass(frozen=True)
class PartialTransportResult:
    """Training scores after moving the top-``lam`` portion, in record order."""

    lam: float
    transported_scores: np.ndarray
    transported_index_set: np.ndarray = field(repr=False)
    n_transported: int = 0

    def __post_init__(self) -> None:
        scores = np.asarray(self.transported_scores, dtype=float)
        idx = np.asarray(self.transported_index_set, dtype=np.int64)
        scores.setflags(write=False)
        idx.setflags(write=False)
        object.__setattr__(self, "transported_scores", scores)
        object.__setattr__(self, "transported_index_set", idx)
        if len(idx) != self.n_transported:
            raise ValueError("transported_index_set size must equal n_transported")


@dataclass(frozen=True)
class ScoreMap:
    """Piecewise-linear monotone-knot map from original to transported scores.

    Knot x-values are strictly increasing; duplicate original scores collapse
    into one knot carrying the mean transported value. Queries outside the knot
    range return the nearest boundary's transported value.
    """

    knots_x: np.ndarray
    knots_y: np.ndarray

    def __post_init__(self) -> None:
        x = np.asarray(self.knots_x, dtype=float)
        y = np.asarray(self.knots_y, dtype=float)
        if len(x) == 0:
            raise ValueError("score map needs at least one knot")
        if len(x) != len(y):
            raise ValueError("knot arrays must have equal length")
        if len(x) > 1 and np.any(np.diff(x) <= 0):
            raise ValueError("knot x-values must be strictly increasing")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "knots_x", x)
        object.__setattr__(self, "knots_y", y)

    def __len__(self) -> int:
        return len(self.knots_x)

    def evaluate(self, values) -> np.ndarray:
        v = np.asarray(values, dtype=float)
        out = np.interp(v, self.knots_x, self.knots_y)
        # force exact knot hits: a query equal to a knot x returns its y, bit for bit
        pos = np.searchsorted(self.knots_x, v)
        inside = pos < len(self.knots_x)
        hit = inside.copy()
        hit[inside] = self.knots_x[pos[inside]] == v[inside]
        out[hit] = self.knots_y[pos[hit]]
        return out


def fit_transport(scores_a_train, scores_b_train) -> TransportPlan:
    """Optimal coupling from the group-b score cloud onto the group-a cloud."""
    a = np.asarray(scores_a_train, dtype=float)
    b = np.asarray(scores_b_train, dtype=float)
    if len(a) == 0:
        raise ValueError("group a has no training scores to transport onto")
    if len(b) == 0:
        raise ValueError("group b has no training scores to transport")
    return solve_ot_1d(EmpiricalMeasure.uniform(b), EmpiricalMeasure.uniform(a))


def apply_phi(
    scores_b_train, plan: TransportPlan, scores_a_train, lam: float
) -> PartialTransportResult:
    """Replace the top ceil(lam * n_b) group-b scores with their projections.

    The plan must have been fitted on exactly these score vectors. Ties at the
    selection boundary prefer the lower original index; all other scores are
    returned unchanged, in original record order.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must be in [0, 1], got {lam}")
    b = np.asarray(scores_b_train, dtype=float)
    a = np.asarray(scores_a_train, dtype=float)
    if plan.source_n != len(b) or plan.target_n != len(a):
        raise ValueError("plan dimensions do not match the given score vectors")
    n_top = ceil_count(lam, len(b))
    out = b.copy()
    if n_top == 0:
        top = np.empty(0, dtype=np.int64)
    else:
        order = np.argsort(-b, kind="stable")
        top = np.sort(order[:n_top])
        projected = barycentric_projection(plan, a)
        out[top] = projected[top]
    return PartialTransportResult(
        lam=lam,
        transported_scores=out,
        transported_index_set=top,
        n_transported=n_top,
    )


def build_score_map(original_train, transported_train) -> ScoreMap:
    """Knots from aligned (original, transported) training pairs.

    Records sharing an original score are merged into a single knot whose value
    is the mean of their transported scores, keeping the map a function.
    """
    x = np.asarray(original_train, dtype=float)
    y = np.asarray(transported_train, dtype=float)
    if len(x) == 0:
        raise ValueError("cannot build a score map from no training pairs")
    if len(x) != len(y):
        raise ValueError("original and transported score vectors must align")
    order = np.argsort(x, kind="stable")
    xs, ys = x[order], y[order]
    ux, start = np.unique(xs, return_index=True)
    if len(ux) == len(xs):
        return ScoreMap(knots_x=ux, knots_y=ys)
    bounds = np.append(start, len(xs))
    uy = np.array([ys[lo:hi].mean() for lo, hi in zip(bounds[:-1], bounds[1:])])
    return ScoreMap(knots_x=ux, knots_y=uy)


def apply_psi(score_map: ScoreMap, scores_b_test) -> np.ndarray:
    """Push test scores through the interpolation map, clamped at the boundary."""
    return score_map.evaluate(scores_b_test)


def apply_phi_alpha(
    scores_b_alpha_train, scores_a_alpha_train, lam: float
) -> PartialTransportResult:
    """Top-region variant: fit the coupling on the group-restricted top scores
    and transport the top-``lam`` portion of the group-b subset."""
    b = np.asarray(scores_b_alpha_train, dtype=float)
    a = np.asarray(scores_a_alpha_train, dtype=float)
    if len(b) == 0 or len(a) == 0:
        raise ValueError("top region must contain scores from both groups")
    plan = fit_transport(a, b)
    return apply_phi(b, plan, a, lam)


def apply_psi_alpha(score_map: ScoreMap, scores_b_alpha_test) -> np.ndarray:
    """Interpolation for top-region test scores; same contract as apply_psi."""
    return apply_psi(score_map, scores_b_alpha_test)


def _check_both_groups(s: ScoreSet, name: str) -> None:
    for g in (GROUP_A, GROUP_B):
        if not np.any(s.group_mask(g)):
            raise ValueError(f"{name} set contains no group {g!r} records")


def _moving_reference(direction: str) -> tuple[str, str]:
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    return (GROUP_B, GROUP_A) if direction == "b_to_a" else (GROUP_A, GROUP_B)


def _transform_test_scores(
    mov_train: np.ndarray,
    ref_train: np.ndarray,
    plan: TransportPlan,
    mov_test: np.ndarray,
    lam: float,
) -> np.ndarray:
    if lam == 0.0:
        return mov_test.copy()
    phi = apply_phi(mov_train, plan, ref_train, lam)
    score_map = build_score_map(mov_train, phi.transported_scores)
    return apply_psi(score_map, mov_test)


def sweep(
    train: ScoreSet,
    test: ScoreSet,
    lambdas,
    mode: Mode = "global",
    alpha: float | None = None,
    direction: Direction = "b_to_a",
    method_tag: str = "fairpot",
    replicate_id: int = 0,
) -> list[TradeoffPoint]:
    """Trade-off points for each lambda: fit on train, transform the moving
    group's test scores, evaluate accuracy and disparity on the merged test set.

    In partial mode the top region is taken once from the merged pre-transport
    scores (train for fitting, test for evaluation) and held fixed; metrics are
    computed within the region members only.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    lambdas = [float(l) for l in lambdas]
    for lam in lambdas:
        if not 0.0 <= lam <= 1.0:
            raise ValueError(f"lambda values must lie in [0, 1], got {lam}")
    _check_both_groups(train, "train")
    _check_both_groups(test, "test")
    moving, reference = _moving_reference(direction)

    if mode == "global":
        mov_train = train.group_scores(moving)
        ref_train = train.group_scores(reference)
        mov_test = test.group_scores(moving)
        eval_set = test
    else:
        if alpha is None:
            raise ValueError("partial mode requires alpha")
        train_region = metrics.top_alpha_region(train, alpha)
        test_region = metrics.top_alpha_region(test, alpha)
        train_sub = train.subset(train_region.member_indices)
        eval_set = test.subset(test_region.member_indices)
        mov_train = train_sub.group_scores(moving)
        ref_train = train_sub.group_scores(reference)
        mov_test = eval_set.group_scores(moving)
        if len(mov_train) == 0 or len(ref_train) == 0:
            raise ValueError("top region of the training set is missing a group")

    plan = fit_transport(ref_train, mov_train)

    points = []
    for lam in lambdas:
        transformed = _transform_test_scores(mov_train, ref_train, plan, mov_test, lam)
        merged = eval_set.replace_group_scores(moving, transformed)
        if mode == "global":
            accuracy = metrics.auc(merged)
            disparity = metrics.xauc_disparity(merged)
        else:
            whole = metrics.top_alpha_region(merged, 1.0)
            accuracy = metrics.pauc(merged, whole)
            disparity = metrics.pxauc_disparity(merged, whole)
        points.append(
            TradeoffPoint(
                lam=lam,
                accuracy=accuracy,
                disparity=disparity,
                method_tag=method_tag,
                replicate_id=replicate_id,
            )
        )
    return points
