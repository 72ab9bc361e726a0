"""Driver scenarios: pair-detector quadrilaterals, tripartite area surfaces,
critical-point classification, and detector-angle violation searches."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from .born import joint_distribution
from .entropy import build_entropy_table
from .geometry import (
    UNDEFINED,
    VIOLATION_TOL,
    PathCheck,
    area,
    distance,
    heron_area,
    quad_path_check,
)
from .states import DetectorSetting, StateVector, make_named_state

SWEEP_STATES = ("ghz", "w", "product_v")
DEFAULT_GRID = 91  # one-degree steps over [0, pi/2]


# ---------------------------------------------------------------------------
# Two observers, two detectors each: the quadrilateral


def pair_distance(state: StateVector, polar_a: float, polar_b: float) -> float:
    """Information distance between two observers of a 2-qubit state."""
    dist = joint_distribution(
        state,
        [DetectorSetting("A", polar_a), DetectorSetting("B", polar_b)],
    )
    return distance(build_entropy_table(dist), "A", "B")


@dataclass(frozen=True)
class QuadrilateralReport:
    """Distances among {A1, A2} x {B1, B2} and the direct-vs-detour check.

    Same-observer detector pairs are mutually exclusive choices, so only the
    four cross distances exist; the check compares the direct edge A1-B2
    against the detour A1-B1-A2-B2.
    """

    angles: dict
    d_a1b1: float
    d_a1b2: float
    d_a2b1: float
    d_a2b2: float
    check: PathCheck

    def as_dict(self) -> dict:
        return {
            "angles": dict(self.angles),
            "d_a1b1": self.d_a1b1,
            "d_a1b2": self.d_a1b2,
            "d_a2b1": self.d_a2b1,
            "d_a2b2": self.d_a2b2,
            "direct": self.check.direct,
            "path_sum": self.check.path_sum,
            "margin": self.check.margin,
            "violated": self.check.violated,
        }


def quadrilateral_report(
    state: StateVector,
    alice_polars: Sequence[float],
    bob_polars: Sequence[float],
) -> QuadrilateralReport:
    a1, a2 = alice_polars
    b1, b2 = bob_polars
    d_a1b1 = pair_distance(state, a1, b1)
    d_a1b2 = pair_distance(state, a1, b2)
    d_a2b1 = pair_distance(state, a2, b1)
    d_a2b2 = pair_distance(state, a2, b2)
    return QuadrilateralReport(
        angles={"a1": a1, "a2": a2, "b1": b1, "b2": b2},
        d_a1b1=d_a1b1,
        d_a1b2=d_a1b2,
        d_a2b1=d_a2b1,
        d_a2b2=d_a2b2,
        check=quad_path_check(d_a1b2, d_a1b1, d_a2b1, d_a2b2),
    )


@dataclass(frozen=True)
class QuadrilateralPreset:
    name: str
    state_name: str
    alice_polars: tuple[float, float]
    bob_polars: tuple[float, float]
    note: str

    def evaluate(self) -> QuadrilateralReport:
        state = make_named_state(self.state_name, 2)
        return quadrilateral_report(state, self.alice_polars, self.bob_polars)


_DELTA_STAR = 0.15234

PRESETS = {
    "schumacher-symmetric": QuadrilateralPreset(
        name="schumacher-symmetric",
        state_name="singlet_sym",
        alice_polars=(0.0, 2 * _DELTA_STAR),
        bob_polars=(_DELTA_STAR, 3 * _DELTA_STAR),
        note="symmetric photon pair at the maximal-violation polarizer chain",
    ),
    "schumacher-original": QuadrilateralPreset(
        name="schumacher-original",
        state_name="singlet_antisym",
        # spin-half analyzer rotations 0, pi/4 and pi/8, 3pi/8; a physical
        # analyzer rotation enters the polarization projector at half angle
        alice_polars=(0.0, math.pi / 8),
        bob_polars=(math.pi / 16, 3 * math.pi / 16),
        note="antisymmetric spin-half pair at the classic analyzer chain",
    ),
}


@dataclass(frozen=True)
class ViolationScanRow:
    delta: float
    d_a1b1: float
    d_a1b2: float
    d_a2b1: float
    d_a2b2: float
    margin: float
    violated: bool

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "d_a1b2": self.d_a1b2,
            "d_a1b1": self.d_a1b1,
            "d_a2b1": self.d_a2b1,
            "d_a2b2": self.d_a2b2,
            "margin": self.margin,
            "violated": self.violated,
        }


def schumacher_scenario(delta: float, state: StateVector | None = None) -> ViolationScanRow:
    """One point of the symmetric detector chain a1=0, b1=d, a2=2d, b2=3d.

    Three detour hops then sit at relative angle d while the direct edge
    sits at 3d; the margin is direct minus detour.
    """
    if state is None:
        state = make_named_state("singlet_sym", 2)
    report = quadrilateral_report(state, (0.0, 2 * delta), (delta, 3 * delta))
    return ViolationScanRow(
        delta=float(delta),
        d_a1b1=report.d_a1b1,
        d_a1b2=report.d_a1b2,
        d_a2b1=report.d_a2b1,
        d_a2b2=report.d_a2b2,
        margin=report.check.margin,
        violated=report.check.violated,
    )


@dataclass(frozen=True)
class ScanResult:
    rows: tuple[ViolationScanRow, ...]
    best: ViolationScanRow
    best_on_boundary: bool


def scan_delta(lo: float, hi: float, steps: int, state: StateVector | None = None) -> ScanResult:
    """Scan the symmetric chain over [lo, hi] and return the margin argmax."""
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if state is None:
        state = make_named_state("singlet_sym", 2)
    rows = tuple(schumacher_scenario(d, state) for d in np.linspace(lo, hi, steps))
    idx = max(range(len(rows)), key=lambda i: rows[i].margin)
    return ScanResult(rows=rows, best=rows[idx], best_on_boundary=idx in (0, len(rows) - 1))


# ---------------------------------------------------------------------------
# Tripartite area surfaces


@dataclass(frozen=True)
class SweepRow:
    beta: float
    gamma: float
    d_ab: float
    d_ac: float
    d_bc: float
    area_info: float
    area_euclid: float  # UNDEFINED sentinel when the triangle inequality fails
    euclid_defined: bool
    ratio: float  # UNDEFINED sentinel when either area is unavailable

    def as_dict(self) -> dict:
        return {
            "beta": self.beta,
            "gamma": self.gamma,
            "d_ab": self.d_ab,
            "d_ac": self.d_ac,
            "d_bc": self.d_bc,
            "area_info": self.area_info,
            "area_euclid": self.area_euclid,
            "euclid_defined": self.euclid_defined,
            "ratio": self.ratio,
        }


def surface_point(state: StateVector, beta: float, gamma: float) -> SweepRow:
    """Triangle geometry of a tripartite state at detector angles (0, beta, gamma)."""
    table = build_entropy_table(
        joint_distribution(
            state,
            [
                DetectorSetting("A", 0.0),
                DetectorSetting("B", beta),
                DetectorSetting("C", gamma),
            ],
        )
    )
    d_ab = distance(table, "A", "B")
    d_ac = distance(table, "A", "C")
    d_bc = distance(table, "B", "C")
    a_info = area(table, "A", "B", "C")
    heron = heron_area(d_ab, d_ac, d_bc)
    a_euclid = heron.area if heron.defined else UNDEFINED
    if heron.defined and a_info >= VIOLATION_TOL:
        ratio = heron.area / a_info
    else:
        ratio = UNDEFINED
    return SweepRow(
        beta=float(beta),
        gamma=float(gamma),
        d_ab=d_ab,
        d_ac=d_ac,
        d_bc=d_bc,
        area_info=a_info,
        area_euclid=a_euclid,
        euclid_defined=heron.defined,
        ratio=ratio,
    )


def sweep_surface(state_name: str, grid_n: int = DEFAULT_GRID) -> list[SweepRow]:
    """Grid the (beta, gamma) square [0, pi/2]^2 for one named tripartite state.

    The first observer's angle is pinned to 0; rows are emitted beta-major.
    """
    if state_name not in SWEEP_STATES:
        raise ValueError(f"sweep states are {SWEEP_STATES}, got {state_name!r}")
    if grid_n < 2:
        raise ValueError(f"grid_n must be >= 2, got {grid_n}")
    state = make_named_state(state_name, 3)
    angles = np.linspace(0.0, np.pi / 2, grid_n)
    return [surface_point(state, b, g) for b in angles for g in angles]


def area_surface_fn(state_name: str) -> Callable[[float, float], float]:
    """Information-area surface of a named state as a plain callable."""
    state = make_named_state(state_name, 3)
    return lambda beta, gamma: surface_point(state, beta, gamma).area_info


# ---------------------------------------------------------------------------
# Discrete critical points


@dataclass(frozen=True)
class CriticalPoint:
    beta: float
    gamma: float
    value: float
    kind: str  # max | min | saddle | flat | degenerate

    def as_dict(self) -> dict:
        return {"beta": self.beta, "gamma": self.gamma, "value": self.value, "kind": self.kind}


def _classify_stencil(center: float, ew: tuple, ns: tuple, diag: tuple, anti: tuple, tol: float) -> str:
    """Classify from second differences along the four grid directions.

    Directional differences are used instead of a Hessian eigen-test: the
    area surfaces contain p log p creases whose cross-stencil pollution
    would otherwise flip saddle verdicts.
    """
    seconds = [
        ew[0] - 2 * center + ew[1],
        ns[0] - 2 * center + ns[1],
        diag[0] - 2 * center + diag[1],
        anti[0] - 2 * center + anti[1],
    ]
    if all(abs(s) <= tol for s in seconds):
        return "flat"
    if all(s <= -tol for s in seconds):
        return "max"
    if all(s >= tol for s in seconds):
        return "min"
    if any(s <= -tol for s in seconds) and any(s >= tol for s in seconds):
        return "saddle"
    return "degenerate"


def _grid_from_rows(rows: Sequence[SweepRow], field: str):
    betas = np.array(sorted({row.beta for row in rows}))
    gammas = np.array(sorted({row.gamma for row in rows}))
    values = np.full((betas.size, gammas.size), np.nan)
    bi = {b: i for i, b in enumerate(betas)}
    gi = {g: j for j, g in enumerate(gammas)}
    for row in rows:
        values[bi[row.beta], gi[row.gamma]] = getattr(row, field)
    if np.any(np.isnan(values)):
        raise ValueError("rows do not cover a full rectangular grid")
    return betas, gammas, values


def critical_points(
    rows: Sequence[SweepRow],
    field: str = "area_info",
    surface_fn: Callable[[float, float], float] | None = None,
    refine_levels: int = 3,
) -> list[CriticalPoint]:
    """Locate and classify stationary points of a swept surface.

    Interior grid points are stationary candidates when the surface has a
    one-dimensional extremum along both axes (first differences change sign)
    or a vanishing central gradient.  Classification reads the sign pattern
    of second differences along the two axes and the two diagonals.  With
    ``surface_fn`` given, each candidate is re-gridded locally at halving
    cell sizes (``refine_levels`` times) to sharpen its location and verdict.
    """
    betas, gammas, v = _grid_from_rows(rows, field)
    if betas.size < 5 or gammas.size < 5:
        raise ValueError("critical-point detection needs at least a 5x5 grid")
    span = float(v.max() - v.min())
    tol = 1e-9 + 1e-6 * span
    grad_scale = max(
        float(np.abs(np.diff(v, axis=0)).max()),
        float(np.abs(np.diff(v, axis=1)).max()),
        1e-12,
    )
    grad_tol = 1e-6 * grad_scale

    found = []
    for i in range(1, betas.size - 1):
        for j in range(1, gammas.size - 1):
            dxm, dxp = v[i, j] - v[i - 1, j], v[i + 1, j] - v[i, j]
            dym, dyp = v[i, j] - v[i, j - 1], v[i, j + 1] - v[i, j]
            extremal_x = dxm * dxp <= 0 or abs(dxp + dxm) <= 2 * grad_tol
            extremal_y = dym * dyp <= 0 or abs(dyp + dym) <= 2 * grad_tol
            if not (extremal_x and extremal_y):
                continue
            kind = _classify_stencil(
                v[i, j],
                (v[i - 1, j], v[i + 1, j]),
                (v[i, j - 1], v[i, j + 1]),
                (v[i - 1, j - 1], v[i + 1, j + 1]),
                (v[i - 1, j + 1], v[i + 1, j - 1]),
                tol,
            )
            point = CriticalPoint(float(betas[i]), float(gammas[j]), float(v[i, j]), kind)
            if surface_fn is not None:
                point = _refine_candidate(
                    point,
                    surface_fn,
                    float(betas[i + 1] - betas[i]),
                    float(gammas[j + 1] - gammas[j]),
                    tol,
                    refine_levels,
                )
            found.append(point)
    return found


def _refine_candidate(point, surface_fn, h_beta, h_gamma, tol, levels):
    beta, gamma = point.beta, point.gamma
    kind = point.kind
    for _ in range(max(0, levels)):
        h_beta, h_gamma = h_beta / 2.0, h_gamma / 2.0
        # 5x5 local re-grid; recentre on the interior point with the
        # flattest central gradient before classifying
        bs = beta + h_beta * np.arange(-2, 3)
        gs = gamma + h_gamma * np.arange(-2, 3)
        patch = np.array([[surface_fn(b, g) for g in gs] for b in bs])
        best, best_grad = (2, 2), float("inf")
        for i in range(1, 4):
            for j in range(1, 4):
                gsq = (patch[i + 1, j] - patch[i - 1, j]) ** 2 + (
                    patch[i, j + 1] - patch[i, j - 1]
                ) ** 2
                if gsq < best_grad:
                    best, best_grad = (i, j), gsq
        i, j = best
        beta, gamma = float(bs[i]), float(gs[j])
        kind = _classify_stencil(
            patch[i, j],
            (patch[i - 1, j], patch[i + 1, j]),
            (patch[i, j - 1], patch[i, j + 1]),
            (patch[i - 1, j - 1], patch[i + 1, j + 1]),
            (patch[i - 1, j + 1], patch[i + 1, j - 1]),
            tol,
        )
    return CriticalPoint(beta, gamma, float(surface_fn(beta, gamma)), kind)


# ---------------------------------------------------------------------------
# Violation search


@dataclass(frozen=True)
class SearchResult:
    parameterization: str
    angles: dict
    margin: float
    evaluations: int

    def as_dict(self) -> dict:
        return {
            "parameterization": self.parameterization,
            "angles": dict(self.angles),
            "margin": self.margin,
            "evaluations": self.evaluations,
        }


def search_violation(
    state: StateVector,
    parameterization: str = "symmetric-delta",
    initial: Sequence[float] | None = None,
    budget: int = 10_000,
    bounds: Sequence[tuple[float, float]] | None = None,
) -> SearchResult:
    """Maximize the quadrilateral margin over detector angles.

    Two parameterizations: "symmetric-delta" walks the one-parameter chain
    a1=0, b1=d, a2=2d, b2=3d; "free" optimizes (a2, b1, b2) with a1 pinned
    to 0.  Derivative free: a coarse grid seeds a Nelder-Mead polytope that
    spends the remaining evaluation budget.  Deterministic for fixed inputs.
    """
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget}")
    evaluations = 0

    def margin_of(a1, a2, b1, b2) -> float:
        nonlocal evaluations
        evaluations += 1
        return quadrilateral_report(state, (a1, a2), (b1, b2)).check.margin

    if parameterization == "symmetric-delta":
        lo, hi = bounds[0] if bounds else (0.005, 0.6)
        objective = lambda x: -margin_of(0.0, 2 * x[0], x[0], 3 * x[0])
        grid_budget = max(2, min(budget // 2, 256))
        seeds = np.linspace(lo, hi, grid_budget)
        if initial is not None:
            seeds = np.append(seeds, initial[0])
        values = [objective([d]) for d in seeds]
        x0 = [float(seeds[int(np.argmin(values))])]
        box = [(lo, hi)]
    elif parameterization == "free":
        box = list(bounds) if bounds else [(0.0, np.pi)] * 3
        per_axis = max(3, int(round((max(budget // 2, 27)) ** (1 / 3))))
        per_axis = min(per_axis, 12)
        axes = [np.linspace(lo, hi, per_axis) for lo, hi in box]
        objective = lambda x: -margin_of(0.0, x[0], x[1], x[2])
        best_x, best_v = None, float("inf")
        for x in itertools.product(*axes):
            val = objective(x)
            if val < best_v:
                best_x, best_v = list(x), val
        if initial is not None:
            val = objective(list(initial))
            if val < best_v:
                best_x, best_v = list(initial), val
        x0 = best_x
    else:
        raise ValueError(f"unknown parameterization {parameterization!r}")

    remaining = max(budget - evaluations, 1)
    result = minimize(
        objective,
        x0=np.asarray(x0, dtype=float),
        method="Nelder-Mead",
        bounds=box,
        options={"maxfev": remaining, "xatol": 1e-7, "fatol": 1e-12},
    )
    # the initial simplex contains x0, so the polytope never loses to the seed
    best = result.x
    best_margin = -float(result.fun)
    if parameterization == "symmetric-delta":
        d = float(best[0])
        angles = {"a1": 0.0, "a2": 2 * d, "b1": d, "b2": 3 * d, "delta": d}
    else:
        angles = {"a1": 0.0, "a2": float(best[0]), "b1": float(best[1]), "b2": float(best[2])}
    return SearchResult(
        parameterization=parameterization,
        angles=angles,
        margin=float(best_margin),
        evaluations=evaluations,
    )
