"""Experiment harness: synthetic cohort generation, method sweeps with
bootstrap replicates, and cross-method frontier merging.

Exit codes: 0 on success, 2 on validation errors (flags, config, malformed
inputs), 1 on runtime failures (every replicate failed, I/O trouble).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np

from . import baselines, metrics, transport
from .datagen import (
    STAGE_BOOTSTRAP,
    STAGE_SPLIT,
    SyntheticConfig,
    fit_logistic_scorer,
    generate_synthetic,
    stream,
)
from .io import (
    ConfigError,
    ExperimentConfig,
    ScoreFileError,
    SweepRow,
    read_config,
    read_score_file,
    read_sweep_results,
    write_score_file,
    write_sweep_results,
)
from .metrics import GROUP_B, ScoreSet
from .pareto import TradeoffPoint, pareto_frontier
from .svg import render_tradeoff_svg

SUMMARY_HEADER = (
    "method,lambda,alpha,n_ok,accuracy_mean,accuracy_se,disparity_mean,disparity_se,on_frontier"
)


def _fmt(x: float) -> str:
    return format(float(x), ".10g")


def _load_config(args) -> ExperimentConfig:
    config = read_config(args.config) if args.config else ExperimentConfig()
    overrides = {}
    for name in ("method", "mode", "alpha", "direction", "seed"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if overrides:
        config = dataclasses.replace(config, **overrides)
    return config


def _score_paths(config: ExperimentConfig) -> tuple[Path, Path]:
    out = Path(config.output_dir)
    train = Path(config.train_path) if config.train_path else out / "train_scores.csv"
    test = Path(config.test_path) if config.test_path else out / "test_scores.csv"
    return train, test


def _synthetic_scored_split(config: ExperimentConfig, seed: int) -> tuple[ScoreSet, ScoreSet]:
    cohort = generate_synthetic(SyntheticConfig(seed=seed))
    n = len(cohort)
    perm = stream(seed, STAGE_SPLIT).permutation(n)
    n_train = int(round(config.split_ratio * n))
    if n_train < 1 or n_train >= n:
        raise ConfigError(f"split_ratio {config.split_ratio} leaves an empty split")
    train_idx, test_idx = perm[:n_train], perm[n_train:]
    scorer = fit_logistic_scorer(cohort.features[train_idx], cohort.labels[train_idx])

    def scored(idx: np.ndarray) -> ScoreSet:
        return ScoreSet(
            scores=scorer.score(cohort.features[idx]),
            labels=cohort.labels[idx].copy(),
            groups=cohort.groups[idx].copy(),
        )

    return scored(train_idx), scored(test_idx)


def _resample(score_set: ScoreSet, rng: np.random.Generator) -> ScoreSet:
    idx = rng.integers(0, len(score_set), size=len(score_set))
    return score_set.subset(idx)


def _eval_unadjusted(test: ScoreSet, mode: str, alpha: float) -> tuple[float, float]:
    if mode == "global":
        return metrics.auc(test), metrics.xauc_disparity(test)
    region = metrics.top_alpha_region(test, alpha)
    sub = test.subset(region.member_indices)
    whole = metrics.top_alpha_region(sub, 1.0)
    return metrics.pauc(sub, whole), metrics.pxauc_disparity(sub, whole)


def _eval_transformed(test_sub: ScoreSet, mode: str) -> tuple[float, float]:
    if mode == "global":
        return metrics.auc(test_sub), metrics.xauc_disparity(test_sub)
    whole = metrics.top_alpha_region(test_sub, 1.0)
    return metrics.pauc(test_sub, whole), metrics.pxauc_disparity(test_sub, whole)


def _region_subsets(train: ScoreSet, test: ScoreSet, alpha: float) -> tuple[ScoreSet, ScoreSet]:
    train_sub = train.subset(metrics.top_alpha_region(train, alpha).member_indices)
    test_sub = test.subset(metrics.top_alpha_region(test, alpha).member_indices)
    return train_sub, test_sub


def _run_method(
    config: ExperimentConfig, train: ScoreSet, test: ScoreSet, replicate: int
) -> list[TradeoffPoint]:
    mode, alpha = config.mode, config.alpha
    if config.method == "fairpot":
        return transport.sweep(
            train,
            test,
            config.lambdas,
            mode=mode,
            alpha=alpha if mode == "partial" else None,
            direction=config.direction,
            method_tag="fairpot",
            replicate_id=replicate,
        )
    if config.method == "unadjusted":
        acc, disp = _eval_unadjusted(test, mode, alpha)
        return [TradeoffPoint(0.0, acc, disp, "unadjusted", replicate)]

    if mode == "partial":
        fit_set, eval_set = _region_subsets(train, test, alpha)
    else:
        fit_set, eval_set = train, test

    if config.method == "post-logit":
        params = baselines.fit_post_logit(fit_set)
        transformed = eval_set.replace_group_scores(
            GROUP_B, baselines.apply_post_logit(params, eval_set.group_scores(GROUP_B))
        )
    else:
        transformed = baselines.wasserstein_fair(fit_set, eval_set)
    acc, disp = _eval_transformed(transformed, mode)
    return [TradeoffPoint(0.0, acc, disp, config.method, replicate)]


def _mean_points(rows: list[SweepRow]) -> list[TradeoffPoint]:
    keys = sorted({(r.method, r.lam) for r in rows if not r.failed})
    points = []
    for method, lam in keys:
        acc = [r.accuracy for r in rows if (r.method, r.lam) == (method, lam) and not r.failed]
        disp = [r.disparity for r in rows if (r.method, r.lam) == (method, lam) and not r.failed]
        points.append(
            TradeoffPoint(lam, float(np.mean(acc)), float(np.mean(disp)), method, len(acc))
        )
    return points


def _stderr(values: list[float]) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1) / np.sqrt(len(values)))


def cmd_synth(args) -> int:
    config = _load_config(args)
    train, test = _synthetic_scored_split(config, config.seed)
    train_path, test_path = _score_paths(config)
    Path(config.output_dir).mkdir(parents=True, exist_ok=True)
    for score_set, path in ((train, train_path), (test, test_path)):
        try:
            write_score_file(score_set, path)
        except OSError as exc:
            raise RuntimeError(f"cannot write score file {path}: {exc}") from None
        print(f"wrote {path} ({len(score_set)} records)")
    return 0


def cmd_sweep(args) -> int:
    config = _load_config(args)
    file_mode = config.train_path is not None or config.test_path is not None
    if file_mode and (config.train_path is None or config.test_path is None):
        raise ConfigError("train_path and test_path must be given together")

    n_reps = config.bootstrap_n if config.bootstrap_n > 0 else 1
    resample = config.bootstrap_n > 0

    if file_mode:
        base_train = read_score_file(config.train_path)
        base_test = read_score_file(config.test_path)

    alpha_out = config.alpha if config.mode == "partial" else 1.0
    rows: list[SweepRow] = []
    failures = 0
    for rep in range(n_reps):
        try:
            if file_mode:
                train = base_train
                test = (
                    _resample(base_test, stream(config.seed, STAGE_BOOTSTRAP, rep))
                    if resample
                    else base_test
                )
            else:
                train, test = _synthetic_scored_split(
                    config, config.seed + rep if resample else config.seed
                )
            points = _run_method(config, train, test, rep)
        except ValueError as exc:
            print(f"replicate {rep}: {exc}", file=sys.stderr)
            failures += 1
            rows.append(
                SweepRow(config.method, 0.0, alpha_out, rep, float("nan"), float("nan"), False)
            )
            continue
        rows.extend(
            SweepRow(p.method_tag, p.lam, alpha_out, rep, p.accuracy, p.disparity, False)
            for p in points
        )
    if failures == n_reps:
        raise RuntimeError("all replicates failed")

    means = _mean_points(rows)
    frontier = pareto_frontier(means)
    on_frontier = {(p.method_tag, p.lam) for p in frontier}
    rows = [
        dataclasses.replace(r, on_frontier=(r.method, r.lam) in on_frontier)
        for r in rows
    ]
    rows.sort(key=lambda r: (r.method, r.lam, r.replicate))

    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    prefix = f"sweep_{config.method}_{config.mode}"
    results_path = out_dir / f"{prefix}_results.csv"
    write_sweep_results(rows, results_path)
    print(f"wrote {results_path} ({len(rows)} rows)")

    summary_path = out_dir / f"{prefix}_summary.csv"
    with summary_path.open("w", newline="") as fh:
        fh.write(SUMMARY_HEADER + "\n")
        for p in sorted(means, key=lambda p: (p.method_tag, p.lam)):
            acc = [
                r.accuracy
                for r in rows
                if (r.method, r.lam) == (p.method_tag, p.lam) and not r.failed
            ]
            disp = [
                r.disparity
                for r in rows
                if (r.method, r.lam) == (p.method_tag, p.lam) and not r.failed
            ]
            flag = "true" if (p.method_tag, p.lam) in on_frontier else "false"
            fh.write(
                f"{p.method_tag},{_fmt(p.lam)},{_fmt(alpha_out)},{len(acc)},"
                f"{_fmt(np.mean(acc))},{_fmt(_stderr(acc))},"
                f"{_fmt(np.mean(disp))},{_fmt(_stderr(disp))},{flag}\n"
            )
    print(f"wrote {summary_path}")

    if args.plot:
        curve = sorted(means, key=lambda p: p.lam)
        svg_path = out_dir / f"{prefix}.svg"
        render_tradeoff_svg(
            svg_path,
            series=[(config.method, [(p.disparity, p.accuracy) for p in curve])],
            frontier=[(p.disparity, p.accuracy) for p in frontier],
            title=f"{config.mode} trade-off",
        )
        print(f"wrote {svg_path}")
    return 0


def cmd_pareto(args) -> int:
    all_rows: list[SweepRow] = []
    for path in args.inputs:
        all_rows.extend(read_sweep_results(path))
    ok_rows = [r for r in all_rows if not r.failed]
    if not ok_rows:
        raise RuntimeError("no successful sweep rows in the input files")
    alphas = {r.alpha for r in ok_rows}
    if len(alphas) > 1:
        raise ConfigError(f"inputs mix incompatible alpha values: {sorted(alphas)}")
    alpha = alphas.pop()

    means = _mean_points(ok_rows)
    frontier = pareto_frontier(means)
    out_rows = [
        SweepRow(p.method_tag, p.lam, alpha, p.replicate_id, p.accuracy, p.disparity, True)
        for p in frontier
    ]
    write_sweep_results(out_rows, args.output)
    print(f"wrote {args.output} ({len(out_rows)} frontier points)")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairpot",
        description="Proportional optimal-transport post-processing of risk scores",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="generate synthetic train/test score files")
    synth.add_argument("--config", help="JSON experiment config")
    synth.add_argument("--seed", type=int, help="override the config seed")
    synth.set_defaults(func=cmd_synth)

    sweep = sub.add_parser("sweep", help="run one method over the lambda grid")
    sweep.add_argument("--config", help="JSON experiment config")
    sweep.add_argument("--method", choices=("fairpot", "post-logit", "wasserstein", "unadjusted"))
    sweep.add_argument("--mode", choices=("global", "partial"))
    sweep.add_argument("--alpha", type=float, help="top-region fraction for partial mode")
    sweep.add_argument("--direction", choices=("b_to_a", "a_to_b"))
    sweep.add_argument("--seed", type=int, help="override the config seed")
    sweep.add_argument("--plot", action="store_true", help="also write an SVG trade-off chart")
    sweep.set_defaults(func=cmd_sweep)

    pareto = sub.add_parser("pareto", help="merge sweep results into one frontier")
    pareto.add_argument("inputs", nargs="+", help="sweep result CSV files")
    pareto.add_argument("--output", default="frontier.csv", help="merged frontier CSV path")
    pareto.set_defaults(func=cmd_pareto)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ScoreFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
