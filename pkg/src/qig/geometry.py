"""Information geometry over entropy tables: lengths, areas, volumes.

The edge length between two measurement records is the Rokhlin-Rajski
distance D(X,Y) = H(X|Y) + H(Y|X) = 2 H(XY) - H(X) - H(Y).  Its simplex
generalizations used here are elementary symmetric polynomials of the fully
conditioned entropies: e2 over three vertices gives a triangle area (bits^2),
e3 over four gives a tetrahedron volume (bits^3), and e_{m-1} over m vertices
extends the ladder.  The m > 4 rungs are an extrapolation of that pattern,
not an independently established quantity; they reduce exactly to the lower
rungs for m <= 4.

Euclidean comparisons (Heron areas, Cayley-Menger embeddability) treat the
information distances as if they were straight-line lengths, which is
exactly where entangled states can break the rules of flat geometry.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .born import joint_distribution
from .entropy import EntropyTable, build_entropy_table
from .states import DetectorSetting, StateVector

# margins / Heron factors within this of zero count as exact zeros, so
# float noise on exactly-degenerate triangles never raises a flag
VIOLATION_TOL = 1e-12

# dual-form agreement guard for the triangle area
AREA_FORM_TOL = 1e-10

# sentinel for undefined ratio / Euclidean area fields (kept NaN-free so
# CSV and JSON round-trip identically); real values are never negative
UNDEFINED = -1.0


def _conditioned(table: EntropyTable, labels: Sequence[str]) -> list[float]:
    """H(v | all other listed vertices) for each vertex v."""
    labels = list(labels)
    return [
        table.conditional(v, [u for u in labels if u != v])
        for v in labels
    ]


def _elementary_symmetric(values: Sequence[float], k: int) -> float:
    total = 0.0
    for combo in itertools.combinations(values, k):
        total += math.prod(combo)
    return total


def distance(table: EntropyTable, x: str, y: str) -> float:
    """Information distance 2 H(XY) - H(X) - H(Y), in bits."""
    if x == y:
        raise ValueError("distance needs two distinct observers")
    x, y = sorted((x, y))  # canonical evaluation order: symmetry is bit-exact
    return 2.0 * table.joint(x, y) - table.joint(x) - table.joint(y)


def area(table: EntropyTable, x: str, y: str, z: str) -> float:
    """Information area of a triangle of observers, in bits^2.

    Symmetric sum of pairwise products of the three fully conditioned
    entropies.  An equivalent expansion purely in joint entropies is
    evaluated alongside as a self-check; disagreement beyond 1e-10 means a
    broken entropy table and raises.
    """
    labels = tuple(sorted((x, y, z)))
    if len(set(labels)) != 3:
        raise ValueError("area needs three distinct observers")
    x, y, z = labels
    cond = _conditioned(table, labels)
    value = _elementary_symmetric(cond, 2)

    h3 = table.joint(*labels)
    h_xy, h_yz, h_xz = table.joint(x, y), table.joint(y, z), table.joint(x, z)
    poly = (
        3.0 * h3 * h3
        - 2.0 * (h_xy + h_yz + h_xz) * h3
        + (h_xz * h_yz + h_xy * h_xz + h_xy * h_yz)
    )
    if abs(value - poly) > AREA_FORM_TOL:
        raise ArithmeticError(
            f"triangle area forms disagree: conditioned {value!r} vs polynomial {poly!r}"
        )
    return value


def volume(table: EntropyTable, w: str, x: str, y: str, z: str) -> float:
    """Information volume of a tetrahedron of observers, in bits^3.

    e3 of the four fully conditioned entropies, i.e. the sum of the four
    distinct triple products, the symmetric continuation of the
    distance/area ladder.
    """
    labels = tuple(sorted((w, x, y, z)))
    if len(set(labels)) != 4:
        raise ValueError("volume needs four distinct observers")
    return _elementary_symmetric(_conditioned(table, labels), 3)


def k_volume(table: EntropyTable, vertices: Sequence[str]) -> float:
    """Generalized simplex content e_{m-1} over m vertices, in bits^(m-1).

    m = 2, 3, 4 reduce exactly to distance, area and volume.  Higher m
    extrapolates the same elementary-symmetric pattern (see module notes).
    """
    labels = sorted(vertices)
    if len(labels) < 2:
        raise ValueError("k_volume needs at least two vertices")
    if len(set(labels)) != len(labels):
        raise ValueError("k_volume vertices must be distinct")
    return _elementary_symmetric(_conditioned(table, labels), len(labels) - 1)


@dataclass(frozen=True)
class HeronResult:
    """Euclidean triangle area from three side lengths, or the violation.

    ``area`` is set when the three lengths close a (possibly degenerate)
    Euclidean triangle; otherwise ``violated`` is True and ``deficit``
    carries the most negative Heron factor.
    """

    area: float | None
    violated: bool
    deficit: float = 0.0

    @property
    def defined(self) -> bool:
        return self.area is not None


def heron_area(d_ab: float, d_ac: float, d_bc: float) -> HeronResult:
    """Heron's formula with explicit triangle-inequality detection.

    Factors within 1e-12 of zero are snapped to zero so exactly degenerate
    triangles report area 0 rather than square-rooted float noise; a factor
    below -1e-12 is a genuine inequality violation and makes the radicand
    imaginary.
    """
    if min(d_ab, d_ac, d_bc) < -VIOLATION_TOL:
        raise ValueError("side lengths must be nonnegative")
    factors = [
        d_ab + d_ac - d_bc,
        d_ab - d_ac + d_bc,
        -d_ab + d_ac + d_bc,
        d_ab + d_ac + d_bc,
    ]
    worst = min(factors[:3])
    if worst < -VIOLATION_TOL:
        return HeronResult(area=None, violated=True, deficit=worst)
    snapped = [0.0 if abs(f) <= VIOLATION_TOL else f for f in factors]
    return HeronResult(area=0.25 * math.sqrt(math.prod(snapped)), violated=False)


@dataclass(frozen=True)
class PathCheck:
    """Direct edge vs a three-edge detour; violated when direct is longer."""

    direct: float
    path_sum: float
    margin: float
    violated: bool


def quad_path_check(d_direct: float, d_1: float, d_2: float, d_3: float) -> PathCheck:
    """Check the quadrilateral inequality direct <= leg1 + leg2 + leg3."""
    for d in (d_direct, d_1, d_2, d_3):
        if d < -VIOLATION_TOL:
            raise ValueError("lengths must be nonnegative")
    path_sum = d_1 + d_2 + d_3
    margin = d_direct - path_sum
    return PathCheck(
        direct=d_direct,
        path_sum=path_sum,
        margin=margin,
        violated=margin > VIOLATION_TOL,
    )


# ---------------------------------------------------------------------------
# Cayley-Menger embeddability


@dataclass(frozen=True)
class SubsetCheck:
    points: tuple[int, ...]
    determinant: float
    kind: str  # "sign" for simplex-volume sign, "flatness" for excess dimensions
    ok: bool


@dataclass(frozen=True)
class EmbeddabilityReport:
    dim: int
    embeddable: bool
    checks: tuple[SubsetCheck, ...]

    def failures(self) -> list[SubsetCheck]:
        return [c for c in self.checks if not c.ok]


def _cayley_menger_det(sq: np.ndarray) -> float:
    m = sq.shape[0]
    bordered = np.ones((m + 1, m + 1))
    bordered[0, 0] = 0.0
    bordered[1:, 1:] = sq
    return float(np.linalg.det(bordered))


def cayley_menger_embeddable(lengths, target_dim: int) -> EmbeddabilityReport:
    """Decide Euclidean embeddability of a finite metric in ``target_dim``.

    ``lengths`` is a complete symmetric distance matrix; a missing (NaN)
    entry is rejected, since the test needs every pairwise length.  For every
    point subset, the sign of its Cayley-Menger determinant must be
    compatible with a nonnegative squared simplex volume; subsets larger
    than target_dim + 1 points must additionally be flat (zero volume).
    Each subset's verdict is reported so failures can be localized.
    """
    d = np.asarray(lengths, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"expected a square distance matrix, got shape {d.shape}")
    if np.any(np.isnan(d)):
        raise ValueError("incomplete edge set: distance matrix holds NaN entries")
    if not np.allclose(d, d.T, atol=1e-9) or np.any(np.abs(np.diag(d)) > 1e-12):
        raise ValueError("distance matrix must be symmetric with zero diagonal")
    if np.any(d < -VIOLATION_TOL):
        raise ValueError("distances must be nonnegative")
    if target_dim < 1:
        raise ValueError(f"target_dim must be >= 1, got {target_dim}")
    m = d.shape[0]
    sq = d * d
    scale = max(1.0, float(sq.max()))
    checks = []
    embeddable = True
    for size in range(3, m + 1):
        for points in itertools.combinations(range(m), size):
            det = _cayley_menger_det(sq[np.ix_(points, points)])
            tol = 1e-9 * scale ** (size - 1) * math.factorial(size)
            # squared (size-1)-simplex volume carries sign (-1)^size * det
            signed = (-1.0) ** size * det
            if size <= target_dim + 1:
                ok = signed >= -tol
                checks.append(SubsetCheck(points, det, "sign", ok))
            else:
                ok = signed >= -tol and abs(det) <= tol
                kind = "flatness" if signed >= -tol else "sign"
                checks.append(SubsetCheck(points, det, kind, ok))
            embeddable = embeddable and ok
    return EmbeddabilityReport(dim=target_dim, embeddable=embeddable, checks=tuple(checks))


# ---------------------------------------------------------------------------
# Whole-simplex and octahedron reports


@dataclass(frozen=True)
class FaceGeometry:
    vertices: tuple[str, str, str]
    area_info: float
    heron: HeronResult
    ratio: float  # Euclidean over information area; UNDEFINED sentinel when unavailable
    cm_embeddable_2d: bool

    def as_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "area_info": self.area_info,
            "area_euclid": self.heron.area if self.heron.defined else UNDEFINED,
            "euclid_defined": self.heron.defined,
            "triangle_violated": self.heron.violated,
            "ratio": self.ratio,
            "cm_embeddable_2d": self.cm_embeddable_2d,
        }


def _face_geometry(table: EntropyTable, x: str, y: str, z: str) -> FaceGeometry:
    a_info = area(table, x, y, z)
    d_xy, d_xz, d_yz = distance(table, x, y), distance(table, x, z), distance(table, y, z)
    heron = heron_area(d_xy, d_xz, d_yz)
    if heron.defined and a_info >= VIOLATION_TOL:
        ratio = heron.area / a_info
    else:
        ratio = UNDEFINED
    dm = np.zeros((3, 3))
    dm[0, 1] = dm[1, 0] = d_xy
    dm[0, 2] = dm[2, 0] = d_xz
    dm[1, 2] = dm[2, 1] = d_yz
    cm = cayley_menger_embeddable(dm, target_dim=2)
    return FaceGeometry(
        vertices=(x, y, z),
        area_info=a_info,
        heron=heron,
        ratio=ratio,
        cm_embeddable_2d=cm.embeddable,
    )


@dataclass(frozen=True)
class SimplexGeometry:
    """Point geometry of one measurement run: all edges, faces, and (for
    four observers) the tetrahedron volume."""

    vertices: tuple[str, ...]
    edges: dict
    faces: tuple[FaceGeometry, ...]
    volume: float | None
    content: float  # e_{m-1} over all vertices (equals edge/area/volume for m <= 4)

    def as_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": {f"{u}-{v}": d for (u, v), d in self.edges.items()},
            "faces": [f.as_dict() for f in self.faces],
            "volume": self.volume,
            "content": self.content,
        }


def simplex_report(table: EntropyTable) -> SimplexGeometry:
    """Full geometry report for every observer in an entropy table."""
    labels = table.observers
    if len(labels) < 2:
        raise ValueError("geometry needs at least two observers")
    edges = {
        (x, y): distance(table, x, y) for x, y in itertools.combinations(labels, 2)
    }
    faces = tuple(
        _face_geometry(table, x, y, z) for x, y, z in itertools.combinations(labels, 3)
    )
    vol = volume(table, *labels) if len(labels) == 4 else None
    return SimplexGeometry(
        vertices=labels,
        edges=edges,
        faces=faces,
        volume=vol,
        content=k_volume(table, labels),
    )


@dataclass(frozen=True)
class OctahedronReport:
    """Two detectors per observer on a tripartite state.

    Six vertices (observer x setting index), the 12 cross-observer edges,
    and the 8 one-setting-per-observer triangular faces.  Same-observer
    vertex pairs are mutually exclusive measurements and carry no edge, so
    whole-figure embeddability is only decidable when the caller supplies
    those three diagonal lengths.
    """

    vertices: tuple[str, ...]
    edges: dict
    faces: tuple[FaceGeometry, ...]
    path_checks: tuple[PathCheck, ...]
    path_labels: tuple[tuple[str, str, str, str], ...]
    full_embeddability: EmbeddabilityReport | None = field(default=None)

    def as_dict(self) -> dict:
        d = {
            "vertices": list(self.vertices),
            "edges": {f"{u}-{v}": val for (u, v), val in self.edges.items()},
            "faces": [f.as_dict() for f in self.faces],
            "path_checks": [
                {
                    "path": list(labels),
                    "direct": c.direct,
                    "path_sum": c.path_sum,
                    "margin": c.margin,
                    "violated": c.violated,
                }
                for labels, c in zip(self.path_labels, self.path_checks)
            ],
        }
        if self.full_embeddability is not None:
            d["octahedron_embeddable_3d"] = self.full_embeddability.embeddable
        return d


def octahedron_report(
    state: StateVector,
    setting_pairs: Sequence[Sequence[DetectorSetting]],
    diagonals: dict | None = None,
) -> OctahedronReport:
    """Geometry of the six-vertex figure from two settings per observer.

    ``setting_pairs`` holds exactly two settings per qubit slot; the two
    settings of one observer may coincide (edges then degenerate).  Each of
    the eight setting combinations is one measurement run; faces come from
    their own run's entropy table, and each edge comes from the pairwise
    marginal of a run containing both of its settings (the third observer's
    choice cannot influence it).

    ``diagonals`` may map each observer label to a caller-chosen
    same-observer vertex distance; when given, the completed 6-point edge
    set is tested for embeddability in 3 dimensions.
    """
    n = state.n_qubits
    if n != 3:
        raise ValueError(f"octahedron reports need a tripartite state, got n={n}")
    pairs = [tuple(p) for p in setting_pairs]
    if len(pairs) != 3 or any(len(p) != 2 for p in pairs):
        raise ValueError("need exactly two settings per observer for three observers")
    observers = []
    for p in pairs:
        if p[0].observer != p[1].observer:
            raise ValueError(f"setting pair mixes observers: {p[0].observer}, {p[1].observer}")
        observers.append(p[0].observer)
    if len(set(observers)) != 3:
        raise ValueError(f"observer labels must be distinct, got {observers}")

    def vertex(slot: int, idx: int) -> str:
        return f"{observers[slot]}{idx}"

    tables = {}
    for combo in itertools.product((0, 1), repeat=3):
        settings = [pairs[slot][combo[slot]] for slot in range(3)]
        tables[combo] = build_entropy_table(joint_distribution(state, settings))

    # edges: cross-observer vertex pairs, from a run holding both settings
    edges = {}
    for s1, s2 in itertools.combinations(range(3), 2):
        other = 3 - s1 - s2
        for i, j in itertools.product((0, 1), repeat=2):
            combo = [0, 0, 0]
            combo[s1], combo[s2] = i, j
            table = tables[tuple(combo)]
            edges[(vertex(s1, i), vertex(s2, j))] = distance(
                table, observers[s1], observers[s2]
            )

    faces = []
    for combo in itertools.product((0, 1), repeat=3):
        table = tables[combo]
        geo = _face_geometry(table, *observers)
        faces.append(
            FaceGeometry(
                vertices=tuple(vertex(slot, combo[slot]) for slot in range(3)),
                area_info=geo.area_info,
                heron=geo.heron,
                ratio=geo.ratio,
                cm_embeddable_2d=geo.cm_embeddable_2d,
            )
        )

    def edge_length(u: str, v: str):
        return edges.get((u, v), edges.get((v, u)))

    # quadrilateral detours: direct edge vs every 3-edge path over distinct vertices
    all_vertices = [vertex(slot, i) for slot in range(3) for i in (0, 1)]
    path_checks, path_labels, seen = [], [], set()
    for quad in itertools.permutations(all_vertices, 4):
        key = quad if quad[0] < quad[3] else tuple(reversed(quad))
        if key in seen:
            continue
        legs = [edge_length(quad[k], quad[k + 1]) for k in range(3)]
        direct = edge_length(quad[0], quad[3])
        if direct is None or any(leg is None for leg in legs):
            continue  # some hop pairs same-observer vertices: no edge there
        seen.add(key)
        path_labels.append(quad)
        path_checks.append(quad_path_check(direct, *legs))

    full = None
    if diagonals is not None:
        missing = [o for o in observers if o not in diagonals]
        if missing:
            raise ValueError(f"diagonals must cover every observer; missing {missing}")
        dm = np.zeros((6, 6))
        for a, u in enumerate(all_vertices):
            for b, v in enumerate(all_vertices):
                if a == b:
                    continue
                length = edge_length(u, v)
                if length is None:
                    length = float(diagonals[u[:-1]])
                dm[a, b] = length
        full = cayley_menger_embeddable(dm, target_dim=3)

    return OctahedronReport(
        vertices=tuple(all_vertices),
        edges=edges,
        faces=tuple(faces),
        path_checks=tuple(path_checks),
        path_labels=tuple(path_labels),
        full_embeddability=full,
    )
