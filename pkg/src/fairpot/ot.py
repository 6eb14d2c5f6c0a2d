"""Exact optimal transport between 1D empirical distributions.

With squared-distance cost on the line, the monotone coupling obtained by
sorting both supports and filling mass north-west-corner style is an optimal
solution of the coupling LP, so no general-purpose solver is needed. Plans are
stored as sparse (source, target, mass) triples; a monotone plan has at most
n + m - 1 of them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MARGINAL_TOL = 1e-10
_RESIDUAL_SNAP = 1e-12


@dataclass(frozen=True, eq=False)
class EmpiricalMeasure:
    """Weighted point masses on the real line."""

    support: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        support = np.asarray(self.support, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if support.ndim != 1 or weights.ndim != 1:
            raise ValueError("support and weights must be 1-dimensional")
        if len(support) == 0:
            raise ValueError("empirical measure needs at least one support point")
        if len(support) != len(weights):
            raise ValueError("support and weights must have equal length")
        if not np.all(np.isfinite(support)):
            raise ValueError("support points must be finite")
        if np.any(weights < 0):
            raise ValueError("weights must be non-negative")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {weights.sum()!r}")
        support.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, values) -> "EmpiricalMeasure":
        values = np.asarray(values, dtype=float)
        if values.size == 0:
            raise ValueError("empirical measure needs at least one support point")
        return cls(support=values, weights=np.full(len(values), 1.0 / len(values)))

    def __len__(self) -> int:
        return len(self.support)

    @property
    def is_uniform(self) -> bool:
        return bool(np.all(self.weights == self.weights[0]))


@dataclass(frozen=True, eq=False)
class TransportPlan:
    """Sparse coupling with source rows and target columns.

    Marginal feasibility is checked at construction: row sums must match the
    source weights and column sums the target weights within 1e-10.
    """

    source_idx: np.ndarray
    target_idx: np.ndarray
    masses: np.ndarray
    source_weights: np.ndarray
    target_weights: np.ndarray

    def __post_init__(self) -> None:
        src = np.asarray(self.source_idx, dtype=np.int64)
        tgt = np.asarray(self.target_idx, dtype=np.int64)
        mass = np.asarray(self.masses, dtype=float)
        sw = np.asarray(self.source_weights, dtype=float)
        tw = np.asarray(self.target_weights, dtype=float)
        if not (len(src) == len(tgt) == len(mass)):
            raise ValueError("triple arrays must have equal length")
        if np.any(mass < 0):
            raise ValueError("plan masses must be non-negative")
        row_sums = np.bincount(src, weights=mass, minlength=len(sw))
        col_sums = np.bincount(tgt, weights=mass, minlength=len(tw))
        if np.max(np.abs(row_sums - sw)) > _MARGINAL_TOL:
            raise ValueError("plan row sums do not match source weights")
        if np.max(np.abs(col_sums - tw)) > _MARGINAL_TOL:
            raise ValueError("plan column sums do not match target weights")
        for name, arr in (
            ("source_idx", src),
            ("target_idx", tgt),
            ("masses", mass),
            ("source_weights", sw),
            ("target_weights", tw),
        ):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def source_n(self) -> int:
        return len(self.source_weights)

    @property
    def target_n(self) -> int:
        return len(self.target_weights)

    def to_dense(self) -> np.ndarray:
        """Materialize the coupling matrix, source rows by target columns."""
        gamma = np.zeros((self.source_n, self.target_n))
        np.add.at(gamma, (self.source_idx, self.target_idx), self.masses)
        return gamma


def _monotone_fill_uniform(n: int, m: int) -> list[tuple[int, int, int]]:
    # Integer bookkeeping: row p holds m units, column q holds n units, one
    # unit being 1/(n*m) of mass. Exact by construction.
    triples = []
    p = q = 0
    row_left, col_left = m, n
    while p < n and q < m:
        take = min(row_left, col_left)
        triples.append((p, q, take))
        row_left -= take
        col_left -= take
        if row_left == 0:
            p += 1
            row_left = m
        if col_left == 0:
            q += 1
            col_left = n
    return triples


def _monotone_fill_general(u: np.ndarray, v: np.ndarray) -> list[tuple[int, int, float]]:
    triples = []
    p = q = 0
    row_left, col_left = float(u[0]), float(v[0])
    while p < len(u) and q < len(v):
        take = min(row_left, col_left)
        if take > 0.0:
            triples.append((p, q, take))
        row_left -= take
        col_left -= take
        if row_left <= _RESIDUAL_SNAP:
            p += 1
            if p < len(u):
                row_left = float(u[p])
        if col_left <= _RESIDUAL_SNAP:
            q += 1
            if q < len(v):
                col_left = float(v[q])
    return triples


def solve_ot_1d(source: EmpiricalMeasure, target: EmpiricalMeasure) -> TransportPlan:
    """Cost-minimizing coupling for squared-distance cost on the line.

    Both supports are sorted ascending, mass is matched monotonically, and the
    resulting triples are mapped back to the original index order. For uniform
    weights the masses are exact multiples of 1/(n*m).
    """
    n, m = len(source), len(target)
    src_order = np.argsort(source.support, kind="stable")
    tgt_order = np.argsort(target.support, kind="stable")

    if source.is_uniform and target.is_uniform:
        unit = 1.0 / (n * m)
        triples = [(p, q, units * unit) for p, q, units in _monotone_fill_uniform(n, m)]
    else:
        triples = _monotone_fill_general(
            source.weights[src_order], target.weights[tgt_order]
        )

    src_idx = np.array([src_order[p] for p, _, _ in triples], dtype=np.int64)
    tgt_idx = np.array([tgt_order[q] for _, q, _ in triples], dtype=np.int64)
    mass = np.array([w for _, _, w in triples], dtype=float)
    order = np.lexsort((tgt_idx, src_idx))
    return TransportPlan(
        source_idx=src_idx[order],
        target_idx=tgt_idx[order],
        masses=mass[order],
        source_weights=source.weights,
        target_weights=target.weights,
    )


def plan_cost(plan: TransportPlan, source_support, target_support) -> float:
    """Total squared-distance cost of a plan between the given supports."""
    zs = np.asarray(source_support, dtype=float)
    zt = np.asarray(target_support, dtype=float)
    diff = zs[plan.source_idx] - zt[plan.target_idx]
    return float(np.sum(plan.masses * diff * diff))


def barycentric_projection(plan: TransportPlan, target_support) -> np.ndarray:
    """Map each source point to the mass-weighted mean of its coupled targets.

    Rows with a single coupled target return that target value exactly; rows
    with several are clamped to the range of their own targets so the output
    never leaves the coupled hull by floating-point dust.
    """
    zt = np.asarray(target_support, dtype=float)
    if len(zt) != plan.target_n:
        raise ValueError(
            f"target support has {len(zt)} points but plan expects {plan.target_n}"
        )
    order = np.lexsort((plan.target_idx, plan.source_idx))
    src = plan.source_idx[order]
    tgt = plan.target_idx[order]
    mass = plan.masses[order]
    out = np.full(plan.source_n, np.nan)
    boundaries = np.flatnonzero(np.diff(src)) + 1
    for chunk in np.split(np.arange(len(mass)), boundaries):
        i = int(src[chunk[0]])
        cols = tgt[chunk]
        w = mass[chunk]
        if len(chunk) == 1:
            out[i] = zt[cols[0]]
        else:
            vals = zt[cols]
            avg = float(np.dot(w, vals) / w.sum())
            out[i] = min(max(avg, vals.min()), vals.max())
    if np.any(np.isnan(out)):
        missing = np.flatnonzero(np.isnan(out))
        raise ValueError(f"plan carries no mass for source rows {missing.tolist()}")
    return out


def wasserstein1_distance(p: EmpiricalMeasure, q: EmpiricalMeasure) -> float:
    """Exact W1 distance via integration of the quantile-function gap."""
    xp = np.sort(np.asarray(p.support, dtype=float))
    xq = np.sort(np.asarray(q.support, dtype=float))
    wp = p.weights[np.argsort(p.support, kind="stable")]
    wq = q.weights[np.argsort(q.support, kind="stable")]

    cp = np.cumsum(wp)
    cq = np.cumsum(wq)
    levels = np.union1d(cp, cq)
    levels = levels[levels > 0.0]

    total = 0.0
    prev = 0.0
    ip = iq = 0
    for t in levels:
        # quantile values are constant on (prev, t]
        while ip < len(cp) - 1 and cp[ip] <= prev + _RESIDUAL_SNAP:
            ip += 1
        while iq < len(cq) - 1 and cq[iq] <= prev + _RESIDUAL_SNAP:
            iq += 1
        total += (t - prev) * abs(xp[ip] - xq[iq])
        prev = t
    return float(total)
