"""Bit-exact CSV/JSON formats for scores, sweep results, and experiment config.

Floats are printed with 10 significant digits and a plain decimal point; no
file carries timestamps, so identical inputs produce identical bytes.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .metrics import GROUPS, ScoreSet

SCORE_HEADER = ["id", "score", "label", "group"]
SWEEP_HEADER = ["method", "lambda", "alpha", "replicate", "accuracy", "disparity", "on_frontier"]

DEFAULT_LAMBDAS = tuple(i / 10 for i in range(11))

METHODS = ("fairpot", "post-logit", "wasserstein", "unadjusted")


class ScoreFileError(ValueError):
    """Malformed or out-of-contract score file content."""


class ConfigError(ValueError):
    """Invalid experiment configuration."""


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def write_score_file(score_set: ScoreSet, path) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SCORE_HEADER)
        for i, (s, y, g) in enumerate(
            zip(score_set.scores, score_set.labels, score_set.groups)
        ):
            writer.writerow([f"r{i}", _fmt(s), int(y), str(g)])


def read_score_file(path) -> ScoreSet:
    path = Path(path)
    scores: list[float] = []
    labels: list[int] = []
    groups: list[str] = []
    seen_ids: set[str] = set()
    with path.open("r", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != SCORE_HEADER:
            raise ScoreFileError(f"{path}:1: expected header {','.join(SCORE_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise ScoreFileError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
            rid, score_s, label_s, group = row
            if rid in seen_ids:
                raise ScoreFileError(f"{path}:{lineno}: duplicate id {rid!r}")
            seen_ids.add(rid)
            try:
                score = float(score_s)
            except ValueError:
                raise ScoreFileError(f"{path}:{lineno}: unparseable score {score_s!r}") from None
            if not math.isfinite(score) or not 0.0 <= score <= 1.0:
                raise ScoreFileError(f"{path}:{lineno}: score {score_s} outside [0, 1]")
            if label_s not in ("0", "1"):
                raise ScoreFileError(f"{path}:{lineno}: label must be 0 or 1, got {label_s!r}")
            if group not in GROUPS:
                raise ScoreFileError(f"{path}:{lineno}: group must be one of {GROUPS}, got {group!r}")
            scores.append(score)
            labels.append(int(label_s))
            groups.append(group)
    return ScoreSet(
        scores=np.array(scores, dtype=float),
        labels=np.array(labels, dtype=np.int64),
        groups=np.array(groups, dtype="U1"),
    )


@dataclass(frozen=True)
class SweepRow:
    """One evaluated (method, lambda, replicate) result; nan metrics mark a
    failed replicate."""

    method: str
    lam: float
    alpha: float
    replicate: int
    accuracy: float
    disparity: float
    on_frontier: bool

    @property
    def failed(self) -> bool:
        return math.isnan(self.accuracy) or math.isnan(self.disparity)


def write_sweep_results(rows: list[SweepRow], path) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_HEADER)
        for r in rows:
            writer.writerow(
                [
                    r.method,
                    _fmt(r.lam),
                    _fmt(r.alpha),
                    r.replicate,
                    _fmt(r.accuracy),
                    _fmt(r.disparity),
                    "true" if r.on_frontier else "false",
                ]
            )


def read_sweep_results(path) -> list[SweepRow]:
    path = Path(path)
    rows: list[SweepRow] = []
    with path.open("r", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != SWEEP_HEADER:
            raise ScoreFileError(f"{path}:1: expected header {','.join(SWEEP_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 7:
                raise ScoreFileError(f"{path}:{lineno}: expected 7 fields, got {len(row)}")
            try:
                rows.append(
                    SweepRow(
                        method=row[0],
                        lam=float(row[1]),
                        alpha=float(row[2]),
                        replicate=int(row[3]),
                        accuracy=float(row[4]),
                        disparity=float(row[5]),
                        on_frontier={"true": True, "false": False}[row[6]],
                    )
                )
            except (ValueError, KeyError):
                raise ScoreFileError(f"{path}:{lineno}: unparseable row {row!r}") from None
    return rows


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep settings; every field has a documented default."""

    lambdas: tuple[float, ...] = DEFAULT_LAMBDAS
    alpha: float = 0.3
    mode: str = "global"
    direction: str = "b_to_a"
    method: str = "fairpot"
    seed: int = 0
    bootstrap_n: int = 20
    split_ratio: float = 0.8
    train_path: str | None = None
    test_path: str | None = None
    output_dir: str = "."

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambdas", tuple(float(l) for l in self.lambdas))
        for lam in self.lambdas:
            if not 0.0 <= lam <= 1.0:
                raise ConfigError(f"lambdas must lie in [0, 1], got {lam}")
        if not self.lambdas:
            raise ConfigError("lambdas must be non-empty")
        if not 0.0 < self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.mode not in ("global", "partial"):
            raise ConfigError(f"mode must be 'global' or 'partial', got {self.mode!r}")
        if self.direction not in ("b_to_a", "a_to_b"):
            raise ConfigError(f"direction must be 'b_to_a' or 'a_to_b', got {self.direction!r}")
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.bootstrap_n < 0:
            raise ConfigError("bootstrap_n must be non-negative")
        if not 0.0 < self.split_ratio < 1.0:
            raise ConfigError(f"split_ratio must be in (0, 1), got {self.split_ratio}")


_CONFIG_TYPES = {
    "lambdas": (list, tuple),
    "alpha": (int, float),
    "mode": (str,),
    "direction": (str,),
    "method": (str,),
    "seed": (int,),
    "bootstrap_n": (int,),
    "split_ratio": (int, float),
    "train_path": (str, type(None)),
    "test_path": (str, type(None)),
    "output_dir": (str,),
}


def read_config(path) -> ExperimentConfig:
    """Parse a flat JSON config; unknown keys and type mismatches are errors."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    known = {f.name for f in fields(ExperimentConfig)}
    for key, value in raw.items():
        if key not in known:
            raise ConfigError(f"{path}: unknown config key {key!r}")
        expected = _CONFIG_TYPES[key]
        if isinstance(value, bool) or not isinstance(value, expected):
            raise ConfigError(
                f"{path}: key {key!r} has type {type(value).__name__}, "
                f"expected {'/'.join(t.__name__ for t in expected if t is not type(None))}"
            )
        if key == "lambdas" and not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            raise ConfigError(f"{path}: lambdas must be a list of numbers")
    return ExperimentConfig(**raw)
