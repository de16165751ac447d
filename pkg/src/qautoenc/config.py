"""YAML experiment configs: schema checks and conversion to library objects.

A config is a mapping with a ``kind`` key and the sections that kind needs::

    kind: train                # encode | train | tomography | discriminate | solve-gate
    name: fig4a
    seed: 0
    restarts: 20
    ensemble:
      trash: path              # or polarization
      reference: [1, 0, 0, 0]  # re, im pairs on the trash qubit (default |0>)
      priors: [0.5, 0.5]       # default uniform
      states:
        - amplitudes: [1, 0, 0, 0, 0, 0, 0, 0]   # re, im for RH, RV, LH, LV
        - alphas_pi: [0.5, 0.6, 0.0]             # alpha-state angles in units of pi
    train: {a: 0.3, b: 0.5, max_iters: 1000}

Unknown keys raise :class:`ConfigError` naming the offending key.
"""

from __future__ import annotations

from dataclasses import fields
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from . import qlin
from .disc import DiscriminationProblem, interval_problem, theta_state
from .photonic import DeviceParams, GateName, gate_library
from .qstate import AlphaTriple, Ensemble, alpha_state, label_to_index, trash_index
from .train import TrainConfig

KINDS = ("encode", "train", "tomography", "discriminate", "solve-gate")

_TOP_KEYS = {
    "encode": {"kind", "name", "ensemble", "seed"},
    "train": {"kind", "name", "seed", "restarts", "ensemble", "train"},
    "tomography": {"kind", "name", "seed", "gate", "matrix_file", "solve"},
    "solve-gate": {"kind", "name", "seed", "gate", "matrix_file", "solve"},
    "discriminate": {"kind", "name", "seed", "restarts", "problem", "train"},
}
_ENSEMBLE_KEYS = {"trash", "reference", "priors", "states"}
_STATE_KEYS = {"amplitudes", "alphas", "alphas_pi"}
_PROBLEM_KEYS = {"trash", "embedding", "group_a", "group_b", "ranges", "targets"}
_MEMBER_KEYS = {"theta_degrees", "amplitudes", "prior"}
_RANGE_KEYS = {"a", "b", "samples"}
_SOLVE_KEYS = {"seeds", "iters", "tolerance"}
_TRAIN_KEYS = {f.name for f in fields(TrainConfig)} - {"seed"}


class ConfigError(ValueError):
    """Malformed experiment configuration."""


class DomainError(ConfigError):
    """Well-formed configuration asking for something that cannot exist."""


def _check_keys(section: str, d: Any, allowed: set[str], required: set[str] = frozenset()) -> dict:
    if not isinstance(d, dict):
        raise ConfigError(f"{section}: expected a mapping")
    for key in d:
        if key not in allowed:
            raise ConfigError(f"{section}: unknown key '{key}'")
    for key in required:
        if key not in d:
            raise ConfigError(f"{section}: missing key '{key}'")
    return d


def _complex_vector(section: str, values, dim: int) -> np.ndarray:
    values = list(values)
    if len(values) != 2 * dim:
        raise ConfigError(f"{section}: expected {2 * dim} numbers (re, im pairs), got {len(values)}")
    v = np.array(values, dtype=float).reshape(dim, 2)
    v = v[:, 0] + 1j * v[:, 1]
    if not np.any(v):
        raise ConfigError(f"{section}: zero vector")
    return qlin.normalize(v)


def preset_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files("qautoenc.presets").iterdir() if p.name.endswith(".yaml"))


def load(source: str | Path) -> dict:
    """Read a config from a file path or a bundled preset name."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
    else:
        preset = resources.files("qautoenc.presets") / f"{source}.yaml"
        if not preset.is_file():
            raise ConfigError(f"no config file or preset named '{source}'")
        text = preset.read_text()
    try:
        cfg = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"invalid YAML: {exc}") from None
    validate(cfg)
    return cfg


def validate(cfg: Any) -> None:
    if not isinstance(cfg, dict):
        raise ConfigError("config: expected a mapping at top level")
    kind = cfg.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"config: 'kind' must be one of {KINDS}, got {kind!r}")
    _check_keys("config", cfg, _TOP_KEYS[kind])
    if kind in ("encode", "train"):
        parse_ensemble(cfg.get("ensemble"))
    if kind in ("train", "discriminate"):
        parse_train(cfg.get("train", {}), seed=0)
    if kind in ("tomography", "solve-gate"):
        parse_gate(cfg)
        _check_keys("solve", cfg.get("solve", {}), _SOLVE_KEYS)
    if kind == "discriminate":
        parse_problem(cfg.get("problem"))


def parse_ensemble(d) -> tuple[Ensemble, np.ndarray]:
    if d is None:
        raise ConfigError("config: missing key 'ensemble'")
    _check_keys("ensemble", d, _ENSEMBLE_KEYS, {"states"})
    raw_states = d["states"] or []
    if not raw_states:
        raise ConfigError("ensemble: empty")
    states = []
    for i, entry in enumerate(raw_states):
        section = f"ensemble.states[{i}]"
        _check_keys(section, entry, _STATE_KEYS)
        if len(entry) != 1:
            raise ConfigError(f"{section}: give exactly one of {sorted(_STATE_KEYS)}")
        ((key, value),) = entry.items()
        if key == "amplitudes":
            states.append(_complex_vector(section, value, 4))
        else:
            scale = np.pi if key == "alphas_pi" else 1.0
            try:
                states.append(alpha_state(AlphaTriple(*(scale * float(x) for x in value))))
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{section}: {exc}") from None
    try:
        trash = trash_index(d.get("trash", "path"))
    except ValueError as exc:
        raise ConfigError(f"ensemble.trash: {exc}") from None
    priors = d.get("priors")
    if priors is None:
        priors = np.full(len(states), 1.0 / len(states))
    try:
        e = Ensemble(np.array(states), priors, (2, 2), trash)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    ref = _complex_vector("ensemble.reference", d.get("reference", [1, 0, 0, 0]), 2)
    return e, ref


def parse_train(d, seed: int) -> TrainConfig:
    _check_keys("train", d or {}, _TRAIN_KEYS)
    d = dict(d or {})
    if d.get("shots") in ("exact", None):
        d["shots"] = None
    if "init_params" in d:
        try:
            d["init_params"] = DeviceParams.from_dict(d["init_params"])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"train.init_params: {exc}") from None
    try:
        return TrainConfig(seed=seed, **d)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"train: {exc}") from None


def parse_gate(cfg: dict) -> tuple[str, np.ndarray]:
    if ("gate" in cfg) == ("matrix_file" in cfg):
        raise ConfigError("config: give exactly one of 'gate' or 'matrix_file'")
    if "gate" in cfg:
        try:
            return str(cfg["gate"]), gate_library(GateName(cfg["gate"]))
        except ValueError:
            raise ConfigError(f"gate: unknown gate '{cfg['gate']}'; known: {[g.value for g in GateName]}") from None
    try:
        m = qlin.load_matrix(cfg["matrix_file"])
    except (OSError, ValueError) as exc:
        raise ConfigError(f"matrix_file: {exc}") from None
    if m.shape != (4, 4) or not qlin.is_unitary(m, 1e-8):
        raise ConfigError("matrix_file: not a 4x4 unitary")
    return Path(cfg["matrix_file"]).stem, m


def parse_problem(d) -> tuple[DiscriminationProblem, int, np.ndarray, np.ndarray]:
    """Return the embedded problem, trash index and the two trash targets."""
    if d is None:
        raise ConfigError("config: missing key 'problem'")
    _check_keys("problem", d, _PROBLEM_KEYS)
    try:
        trash = trash_index(d.get("trash", "polarization"))
    except ValueError as exc:
        raise ConfigError(f"problem.trash: {exc}") from None
    embedding = d.get("embedding", ["RH", "RV"])
    try:
        basis = tuple(label_to_index(x) for x in embedding)
    except (ValueError, AttributeError) as exc:
        raise ConfigError(f"problem.embedding: {exc}") from None
    if len(basis) != 2 or basis[0] == basis[1]:
        raise ConfigError("problem.embedding: need two distinct basis labels")

    if "ranges" in d:
        if "group_a" in d or "group_b" in d:
            raise ConfigError("problem: give either 'ranges' or 'group_a'/'group_b'")
        r = _check_keys("problem.ranges", d["ranges"], _RANGE_KEYS, {"a", "b"})
        problem = interval_problem(
            np.deg2rad(r["a"]), np.deg2rad(r["b"]), basis=basis, dim=4, samples=int(r.get("samples", 2))
        )
    else:
        groups = []
        for g in ("group_a", "group_b"):
            members = d.get(g) or []
            if not members:
                raise ConfigError(f"problem.{g}: empty")
            group = []
            for i, m in enumerate(members):
                section = f"problem.{g}[{i}]"
                _check_keys(section, m, _MEMBER_KEYS, {"prior"})
                if ("theta_degrees" in m) == ("amplitudes" in m):
                    raise ConfigError(f"{section}: give exactly one of 'theta_degrees' or 'amplitudes'")
                if "theta_degrees" in m:
                    s = theta_state(np.deg2rad(float(m["theta_degrees"])), basis, 4)
                else:
                    s = _complex_vector(section, m["amplitudes"], 4)
                group.append((s, float(m["prior"])))
            groups.append(group)
        try:
            problem = DiscriminationProblem.from_groups(*groups)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    targets = _check_keys("problem.targets", d.get("targets", {}), {"a", "b"})
    ta = _complex_vector("problem.targets.a", targets.get("a", [1, 0, 0, 0]), 2)
    tb = _complex_vector("problem.targets.b", targets.get("b", [0, 0, 1, 0]), 2)
    if abs(np.vdot(ta, tb)) > 1e-10:
        raise DomainError("problem.targets: targets a and b are not orthogonal")
    return problem, trash, ta, tb
