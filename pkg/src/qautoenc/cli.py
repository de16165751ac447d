"""Command-line experiment runner.

    qautoenc run <config|preset> [--seed N] [--jobs N] [--exact | --shots N] [--out DIR]
    qautoenc encode <config|preset>
    qautoenc bound <config|preset>
    qautoenc gates [--out DIR]
    qautoenc presets

``run`` writes ``trace_<run>.csv`` files (``iteration,cost,a,b,k``) and a
``summary.json`` into the output directory.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import config, qlin, tomo
from .disc import group_encoding_cost, helstrom_bound, interval_problem
from .encoder import perfect_encoder
from .photonic import GateName, device_unitary, gate_library, solve_device_params
from .train import TrainTrace, run_training, autoencoder_model, discrimination_model

EXIT_CONFIG = 2
EXIT_NUMERIC = 3
GATE_TOLERANCE = 1e-3


def restart_seeds(seed: int, n: int) -> list[int]:
    """Independent per-restart seeds derived from one base seed."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(n)]


def _train_one(args):
    cfg, model = args
    return run_training(cfg, model)


def _run_restarts(base_cfg, model, seed: int, restarts: int, jobs: int) -> list[TrainTrace]:
    cfgs = [replace(base_cfg, seed=s) for s in restart_seeds(seed, restarts)]
    work = [(c, model) for c in cfgs]
    if jobs > 1 and restarts > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_train_one, work))
    return [_train_one(w) for w in work]


def mean_trace_csv(traces: list[TrainTrace]) -> str:
    """Per-iteration mean and standard deviation of the cost over restarts.

    Runs that stopped early are held at their last recorded cost.
    """
    n = max(len(t) for t in traces)
    padded = np.array([np.concatenate([t.cost, np.full(n - len(t), t.cost[-1])]) for t in traces])
    lines = ["iteration,mean_cost,std_cost"]
    for i, (m, s) in enumerate(zip(padded.mean(axis=0), padded.std(axis=0))):
        lines.append(f"{i},{m:.17g},{s:.17g}")
    return "\n".join(lines) + "\n"


def _write_traces(out: Path, traces: list[TrainTrace]) -> None:
    for i, t in enumerate(traces):
        (out / f"trace_r{i:02d}.csv").write_text(t.to_csv())
    (out / "trace_mean.csv").write_text(mean_trace_csv(traces))


def _final_stats(traces: list[TrainTrace]) -> dict:
    finals = np.array([t.final_cost for t in traces])
    return {"mean_final_cost": float(finals.mean()), "std_final_cost": float(finals.std()),
            "runs": [t.summary() for t in traces]}


def run_experiment(cfg: dict, out: Path, seed: int | None = None, jobs: int = 1, shots="config") -> dict:
    """Execute a validated config and write its outputs; returns the summary."""
    kind = cfg["kind"]
    seed = int(cfg.get("seed", 0) if seed is None else seed)
    out.mkdir(parents=True, exist_ok=True)
    summary: dict = {"kind": kind, "name": cfg.get("name", kind), "seed": seed}

    if kind == "encode":
        e, ref = config.parse_ensemble(cfg["ensemble"])
        sol = perfect_encoder(e, ref)
        qlin.save_matrix(out / "encoder.txt", sol.unitary)
        summary.update(cost=sol.achieved_cost, rank_R=sol.rank_R, latent_dim=sol.latent_dim_NB,
                       lossless=sol.lossless)

    elif kind in ("train", "discriminate"):
        train_cfg = config.parse_train(cfg.get("train", {}), seed=seed)
        if shots != "config":
            train_cfg = replace(train_cfg, shots=shots)
        restarts = int(cfg.get("restarts", 1))
        if kind == "train":
            e, ref = config.parse_ensemble(cfg["ensemble"])
            model = autoencoder_model(e, ref)
            summary["analytic_cost"] = perfect_encoder(e, ref).achieved_cost
        else:
            problem, trash, ta, tb = config.parse_problem(cfg["problem"])
            model = discrimination_model(problem, (2, 2), trash, ta, tb)
            summary.update(_bounds(cfg["problem"], problem))
        traces = _run_restarts(train_cfg, model, seed, restarts, jobs)
        _write_traces(out, traces)
        summary["shots"] = train_cfg.shots if train_cfg.shots is not None else "exact"
        summary.update(_final_stats(traces))
        if kind == "discriminate":
            summary["never_below_bound"] = bool(
                min(t.final_cost for t in traces) >= summary["bound"] - 1e-9
            )

    else:  # tomography / solve-gate
        name, target = config.parse_gate(cfg)
        solve = cfg.get("solve", {})
        params, residual = solve_device_params(
            target, seeds=int(solve.get("seeds", 8)), iters=int(solve.get("iters", 2000)),
            rng=np.random.default_rng(seed),
        )
        solved = device_unitary(params)
        qlin.save_matrix(out / f"{name}_solved.txt", solved)
        summary.update(gate=name, residual=residual, device_params=params.to_dict())
        if kind == "tomography":
            chi_ideal, chi_solved = tomo.chi_of_unitary(target), tomo.chi_of_unitary(solved)
            for label, chi in (("ideal", chi_ideal), ("solved", chi_solved)):
                (out / f"chi_{label}_real.csv").write_text(tomo.chi_csv(chi, "real"))
                (out / f"chi_{label}_imag.csv").write_text(tomo.chi_csv(chi, "imag"))
                qlin.save_matrix(out / f"chi_{label}.txt", chi.chi)
            summary["process_fidelity"] = tomo.process_fidelity(chi_solved, chi_ideal)
        tol = float(solve.get("tolerance", GATE_TOLERANCE))
        summary["converged"] = residual <= tol

    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary


def _bounds(section: dict, problem) -> dict:
    result = {"bound": helstrom_bound(problem).p_error}
    ranges = section.get("ranges")
    if ranges:
        basis = tuple(config.label_to_index(x) for x in section.get("embedding", ["RH", "RV"]))
        dense = interval_problem(np.deg2rad(ranges["a"]), np.deg2rad(ranges["b"]), basis=basis, dim=4, samples=41)
        result["bound_interval_average"] = helstrom_bound(dense).p_error
    return result


def _cmd_run(args) -> int:
    cfg = config.load(args.config)
    shots = "config"
    if args.exact:
        shots = None
    elif args.shots is not None:
        shots = args.shots
    out = Path(args.out) if args.out else Path("out") / cfg.get("name", Path(args.config).stem)
    summary = run_experiment(cfg, out, seed=args.seed, jobs=args.jobs, shots=shots)
    print(json.dumps({k: v for k, v in summary.items() if k not in ("runs", "device_params")}, indent=2))
    if summary.get("converged") is False:
        print(f"error: gate solve residual {summary['residual']:.3e} above tolerance", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


def _cmd_encode(args) -> int:
    cfg = config.load(args.config)
    if "ensemble" not in cfg:
        raise config.ConfigError("encode: config has no 'ensemble' section")
    e, ref = config.parse_ensemble(cfg["ensemble"])
    sol = perfect_encoder(e, ref)
    print(f"cost={sol.achieved_cost:.3e} R={sol.rank_R} N_B={sol.latent_dim_NB} lossless={sol.lossless}")
    return 0


def _cmd_bound(args) -> int:
    cfg = config.load(args.config)
    if "problem" not in cfg:
        raise config.ConfigError("bound: config has no 'problem' section")
    problem, trash, ta, tb = config.parse_problem(cfg["problem"])
    for key, value in _bounds(cfg["problem"], problem).items():
        print(f"{key}={value:.6f}")
    return 0


def _cmd_gates(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for g in GateName:
        qlin.save_matrix(out / f"{g.value}.txt", gate_library(g))
        print(out / f"{g.value}.txt")
    return 0


def _cmd_presets(args) -> int:
    print("\n".join(config.preset_names()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qautoenc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment config or bundled preset")
    run.add_argument("config")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--jobs", type=int, default=1)
    mode = run.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact overlaps, no shot noise")
    mode.add_argument("--shots", type=int, default=None, help="binomial shots per overlap estimate")
    run.add_argument("--out", default=None)
    run.set_defaults(func=_cmd_run)

    enc = sub.add_parser("encode", help="print the analytic perfect-encoder cost")
    enc.add_argument("config")
    enc.set_defaults(func=_cmd_encode)

    bnd = sub.add_parser("bound", help="print the minimum-error discrimination bound")
    bnd.add_argument("config")
    bnd.set_defaults(func=_cmd_bound)

    gates = sub.add_parser("gates", help="export the gate library in matrix text format")
    gates.add_argument("--out", default="gates")
    gates.set_defaults(func=_cmd_gates)

    pre = sub.add_parser("presets", help="list bundled presets")
    pre.set_defaults(func=_cmd_presets)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except config.DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except config.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
