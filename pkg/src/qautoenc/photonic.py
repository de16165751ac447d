"""Universal two-qubit gate on path and polarization of a single photon.

Each of the four polarization stages ``V1, V2, VR, VL`` is a phase shifter
followed by a QWP-HWP-QWP sequence. The stages sit inside a Mach-Zehnder
arrangement of two symmetric beam splitters and a mirror pair, which gives
the 4x4 block matrix

    [[ V2 (VR+VL) V1 / 2,   -i V2 (VR-VL) / 2 ],
     [  i (VR-VL) V1 / 2,       (VR+VL) / 2   ]]

in path-major order (path R/L outer, polarization H/V inner).
"""

from __future__ import annotations

import enum
from dataclasses import astuple, dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from . import qlin

TWO_PI = 2.0 * np.pi

I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)

BEAM_SPLITTER = np.block([[I2, 1j * I2], [1j * I2, I2]]) / np.sqrt(2)
MIRROR = np.block([[_Z2, -1j * I2], [-1j * I2, _Z2]])


def wave_plate(kind: str, angle: float) -> np.ndarray:
    """Jones matrix of a quarter (``"quarter"``) or half (``"half"``) wave plate.

    The fast axis sits at ``angle`` from H. Both plates are written as
    determinant-one retarders, so a half-wave plate is exactly the square of
    the quarter-wave plate at the same angle.
    """
    c, s = np.cos(angle), np.sin(angle)
    if kind in ("quarter", "qwp"):
        return np.exp(-0.25j * np.pi) * np.array(
            [[c * c + 1j * s * s, (1 - 1j) * s * c], [(1 - 1j) * s * c, s * s + 1j * c * c]]
        )
    if kind in ("half", "hwp"):
        c2, s2 = np.cos(2 * angle), np.sin(2 * angle)
        return -1j * np.array([[c2, s2], [s2, -c2]], dtype=complex)
    raise ValueError(f"unknown wave plate kind {kind!r}")


@dataclass(frozen=True)
class StageParams:
    qwp1: float = 0.0
    hwp: float = np.pi / 2
    qwp2: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        for name, value in zip(("qwp1", "hwp", "qwp2", "phase"), astuple(self)):
            if not np.isfinite(value):
                raise ValueError(f"stage parameter {name} is not finite")

    def canonical(self) -> "StageParams":
        return StageParams(*(float(np.mod(x, TWO_PI)) for x in astuple(self)))


# QWP(0) HWP(pi/2) QWP(0) = I, so the default stage is the identity
IDENTITY_STAGE = StageParams()

STAGE_NAMES = ("v1", "v2", "vr", "vl")
STAGE_FIELDS = ("qwp1", "hwp", "qwp2", "phase")
PARAM_LABELS = tuple(f"{s}.{f}" for s in STAGE_NAMES for f in STAGE_FIELDS)


@dataclass(frozen=True)
class DeviceParams:
    v1: StageParams = IDENTITY_STAGE
    v2: StageParams = IDENTITY_STAGE
    vr: StageParams = IDENTITY_STAGE
    vl: StageParams = IDENTITY_STAGE

    def to_array(self) -> np.ndarray:
        return np.array([x for stage in (self.v1, self.v2, self.vr, self.vl) for x in astuple(stage)])

    @classmethod
    def from_array(cls, x: Sequence[float]) -> "DeviceParams":
        x = np.asarray(x, dtype=float).ravel()
        if x.shape != (16,):
            raise ValueError(f"expected 16 device parameters, got {x.shape[0]}")
        return cls(*(StageParams(*map(float, x[4 * i : 4 * i + 4])) for i in range(4)))

    def to_dict(self) -> dict[str, float]:
        return dict(zip(PARAM_LABELS, map(float, self.to_array())))

    @classmethod
    def from_dict(cls, d: dict) -> "DeviceParams":
        missing = set(PARAM_LABELS) - set(d)
        extra = set(d) - set(PARAM_LABELS)
        if missing or extra:
            raise ValueError(f"device params: missing {sorted(missing)}, unexpected {sorted(extra)}")
        return cls.from_array([d[k] for k in PARAM_LABELS])

    def canonical(self) -> "DeviceParams":
        return DeviceParams(self.v1.canonical(), self.v2.canonical(), self.vr.canonical(), self.vl.canonical())


def _stage(q1: float, h: float, q2: float, phase: float) -> np.ndarray:
    return np.exp(1j * phase) * (wave_plate("quarter", q2) @ wave_plate("half", h) @ wave_plate("quarter", q1))


def stage_unitary(p: StageParams) -> np.ndarray:
    """V = exp(i phase) QWP(qwp2) HWP(hwp) QWP(qwp1)."""
    return _stage(p.qwp1, p.hwp, p.qwp2, p.phase)


def synthesize(v1, v2, vr, vl, check: bool = True) -> np.ndarray:
    """Assemble the 4x4 gate from the four stage unitaries via the block formulas."""
    if check:
        for name, v in zip(STAGE_NAMES, (v1, v2, vr, vl)):
            if np.shape(v) != (2, 2) or not qlin.is_unitary(v, 1e-10):
                raise ValueError(f"stage {name} is not a 2x2 unitary")
    plus, minus = vr + vl, vr - vl
    return 0.5 * np.block([[v2 @ plus @ v1, -1j * v2 @ minus], [1j * minus @ v1, plus]])


def synthesize_product(v1, v2, vr, vl) -> np.ndarray:
    """Same gate written as the explicit beam-splitter/mirror product."""
    return (
        qlin.direct_sum(v2, I2)
        @ BEAM_SPLITTER
        @ qlin.direct_sum(vr, vl)
        @ MIRROR
        @ BEAM_SPLITTER
        @ qlin.direct_sum(v1, I2)
    )


def device_unitary_from_array(x: np.ndarray) -> np.ndarray:
    v1, v2, vr, vl = (_stage(*x[4 * i : 4 * i + 4]) for i in range(4))
    return synthesize(v1, v2, vr, vl, check=False)


def device_unitary(d: DeviceParams) -> np.ndarray:
    return device_unitary_from_array(d.to_array())


def gate_distance(a, b) -> float:
    """Phase-insensitive distance 1 - |Tr(a^dag b)| / dim."""
    a, b = np.asarray(a), np.asarray(b)
    return float(1.0 - abs(np.vdot(a, b)) / a.shape[0])


def solve_device_params(
    target,
    seeds: int = 8,
    iters: int = 2000,
    rng: np.random.Generator | None = None,
    tol: float = 1e-12,
) -> tuple[DeviceParams, float]:
    """Fit device parameters to ``target`` by multi-start quasi-Newton descent.

    Each start minimizes ``1 - |Tr(target^dag U)|^2 / 16`` from uniform random
    parameters; the best start by phase-insensitive distance wins, ties going
    to the earliest start. Stops early once a start reaches ``tol``.
    """
    target = qlin.as_matrix(target)
    if target.shape != (4, 4) or not qlin.is_unitary(target, 1e-10):
        raise ValueError("solve_device_params needs a 4x4 unitary target")
    rng = np.random.default_rng() if rng is None else rng
    starts = rng.uniform(0.0, TWO_PI, size=(seeds, 16))
    tc = target.conj()

    def loss(x):
        return 1.0 - abs(np.sum(tc * device_unitary_from_array(x))) ** 2 / 16.0

    best_x, best_res = None, np.inf
    for x0 in starts:
        sol = minimize(loss, x0, method="BFGS", options={"maxiter": iters, "gtol": 1e-12})
        res = gate_distance(target, device_unitary_from_array(sol.x))
        if res < best_res:
            best_x, best_res = sol.x, res
        if best_res <= tol:
            break
    return DeviceParams.from_array(best_x).canonical(), max(best_res, 0.0)


class GateName(str, enum.Enum):
    Identity = "Identity"
    CNOT_PolCtrlPath = "CNOT_PolCtrlPath"
    CNOT_PathCtrlPol = "CNOT_PathCtrlPol"
    CZ = "CZ"
    CH_PolCtrlPath = "CH_PolCtrlPath"
    CH_PathCtrlPol = "CH_PathCtrlPol"
    SWAP = "SWAP"
    SqrtSWAP = "SqrtSWAP"
    iSWAP = "iSWAP"


_X = np.array([[0, 1], [1, 0]], dtype=complex)
_HAD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_P0 = np.diag([1, 0]).astype(complex)
_P1 = np.diag([0, 1]).astype(complex)


def _controlled(op: np.ndarray, control: int) -> np.ndarray:
    # qubit 0 = path, qubit 1 = polarization
    if control == 0:
        return np.kron(_P0, I2) + np.kron(_P1, op)
    return np.kron(I2, _P0) + np.kron(op, _P1)


def gate_library(g: GateName | str) -> np.ndarray:
    """Textbook matrix of a named gate in path ⊗ polarization order."""
    g = GateName(g)
    if g is GateName.Identity:
        return np.eye(4, dtype=complex)
    if g is GateName.CNOT_PolCtrlPath:
        return _controlled(_X, control=1)
    if g is GateName.CNOT_PathCtrlPol:
        return _controlled(_X, control=0)
    if g is GateName.CZ:
        return np.diag([1, 1, 1, -1]).astype(complex)
    if g is GateName.CH_PolCtrlPath:
        return _controlled(_HAD, control=1)
    if g is GateName.CH_PathCtrlPol:
        return _controlled(_HAD, control=0)
    if g is GateName.SWAP:
        return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    if g is GateName.SqrtSWAP:
        h = 0.5 * (1 + 1j), 0.5 * (1 - 1j)
        return np.array([[1, 0, 0, 0], [0, h[0], h[1], 0], [0, h[1], h[0], 0], [0, 0, 0, 1]], dtype=complex)
    return np.array([[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex)
