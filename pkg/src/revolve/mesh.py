"""Revolves a profile into a triangle mesh and measures discrete curvature.

Vertex layout: one ring of n_theta vertices per profile sample, welded at the
theta seam; samples with |x| < 1e-12 collapse to a single pole vertex and the
adjacent strips fan into it.

Normal and sign convention: per-vertex reference normals follow the surface
convention n = (-tz*cos(theta), -tz*sin(theta), tx) built from the profile
tangent (tx, tz); triangle winding agrees with it, and the sign of the
discrete mean curvature is taken against this normal, so a unit sphere built
from its momentum reports H = +1.

Parallelism: strips are independent, but the implementation is sequential,
which trivially honors any REVOLVE_THREADS cap; outputs never depend on it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (AxisSingularity, DegenerateProfile, NonManifold,
                     ParamOutOfRange)
from .momentum import Momentum

__all__ = [
    "SurfaceMesh",
    "revolve",
    "fundamental_forms",
    "discrete_mesh_curvature",
    "write_obj",
    "write_stl",
]

_POLE_EPS = 1e-12


@dataclass
class SurfaceMesh:
    """Triangle mesh of a revolved profile.

    rings[i] holds the vertex indices of sample i's parallel (a single index
    for a pole); per_vertex is filled by discrete_mesh_curvature.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    rings: list[np.ndarray]
    normals: np.ndarray
    n_theta: int
    per_vertex: tuple[np.ndarray, np.ndarray] | None = field(default=None)

    def edge_counts(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {}
        for a, b, c in self.triangles:
            for u, v in ((a, b), (b, c), (c, a)):
                key = (int(u), int(v)) if u < v else (int(v), int(u))
                counts[key] = counts.get(key, 0) + 1
        return counts

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edge_counts()) + len(self.triangles)

    def boundary_loops(self) -> int:
        """Number of closed cycles of boundary edges."""
        nbr: dict[int, list[int]] = {}
        for (u, v), c in self.edge_counts().items():
            if c == 1:
                nbr.setdefault(u, []).append(v)
                nbr.setdefault(v, []).append(u)
        seen: set[int] = set()
        loops = 0
        for start in nbr:
            if start in seen:
                continue
            loops += 1
            stack = [start]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                stack.extend(w for w in nbr[v] if w not in seen)
        return loops


def revolve(p, n_theta: int = 64) -> SurfaceMesh:
    """Revolve profile samples about the z-axis into a welded triangle mesh."""
    if n_theta < 8:
        raise ParamOutOfRange(f"n_theta must be at least 8, got {n_theta!r}")
    x = np.asarray(p.x, dtype=float)
    z = np.asarray(p.z, dtype=float)
    tx = np.asarray(p.tx, dtype=float)
    tz = np.asarray(p.tz, dtype=float)
    n_s = len(x)
    if n_s < 2:
        raise DegenerateProfile("need at least two profile samples")
    if np.any((np.diff(x) == 0.0) & (np.diff(z) == 0.0)):
        raise DegenerateProfile("repeated consecutive profile samples")

    theta = 2.0 * math.pi * np.arange(n_theta) / n_theta
    ct, st = np.cos(theta), np.sin(theta)

    verts: list[np.ndarray] = []
    norms: list[np.ndarray] = []
    rings: list[np.ndarray] = []
    base = 0
    for i in range(n_s):
        if abs(x[i]) < _POLE_EPS:
            idx = np.array([base])
            verts.append(np.array([[0.0, 0.0, z[i]]]))
            nz = tx[i] if tx[i] != 0.0 else 1.0
            norms.append(np.array([[0.0, 0.0, math.copysign(1.0, nz)]]))
        else:
            idx = np.arange(base, base + n_theta)
            ring = np.column_stack([x[i] * ct, x[i] * st, np.full(n_theta, z[i])])
            verts.append(ring)
            norms.append(np.column_stack([-tz[i] * ct, -tz[i] * st,
                                          np.full(n_theta, tx[i])]))
        rings.append(idx)
        base += len(idx)

    tris: list[tuple[int, int, int]] = []
    for i in range(n_s - 1):
        r0, r1 = rings[i], rings[i + 1]
        if len(r0) == 1 and len(r1) == 1:
            raise DegenerateProfile("two consecutive pole samples")
        if len(r0) == 1:
            pole = int(r0[0])
            for j in range(n_theta):
                jn = (j + 1) % n_theta
                tris.append((pole, int(r1[j]), int(r1[jn])))
        elif len(r1) == 1:
            pole = int(r1[0])
            for j in range(n_theta):
                jn = (j + 1) % n_theta
                tris.append((int(r0[j]), pole, int(r0[jn])))
        else:
            for j in range(n_theta):
                jn = (j + 1) % n_theta
                tris.append((int(r0[j]), int(r1[j]), int(r1[jn])))
                tris.append((int(r0[j]), int(r1[jn]), int(r0[jn])))

    return SurfaceMesh(vertices=np.concatenate(verts),
                       triangles=np.array(tris, dtype=np.int64),
                       rings=rings,
                       normals=np.concatenate(norms),
                       n_theta=n_theta)


def fundamental_forms(m: Momentum, x: float
                      ) -> tuple[tuple[float, float], tuple[float, float]]:
    """Diagonal coefficients of the first and second fundamental forms in the
    (arclength, theta) chart: I = (1, x^2), II = (K'(x), x*K(x))."""
    lo, hi = m.domain
    if abs(x) < 1e-13 * max(1.0, hi - lo):
        raise AxisSingularity("the (s, theta) chart degenerates on the axis")
    K = m.eval(x)
    dK = m.deriv(x)
    return (1.0, x * x), (dK, x * K)


def _mixed_areas_and_angles(v: np.ndarray, t: np.ndarray
                            ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-vertex Meyer mixed area, angle sums, and cotangent Laplacian."""
    n = len(v)
    p0, p1, p2 = v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]
    e0 = p2 - p1  # edge opposite corner 0
    e1 = p0 - p2
    e2 = p1 - p0
    cr = np.cross(e2, -e1)
    twice_area = np.linalg.norm(cr, axis=1)
    twice_area = np.maximum(twice_area, 1e-300)
    # dot products of the edge pairs meeting at each corner
    d0 = np.einsum("ij,ij->i", e2, -e1)
    d1 = np.einsum("ij,ij->i", e0, -e2)
    d2 = np.einsum("ij,ij->i", e1, -e0)
    cot0, cot1, cot2 = d0 / twice_area, d1 / twice_area, d2 / twice_area
    ang0 = np.arctan2(twice_area, d0)
    ang1 = np.arctan2(twice_area, d1)
    ang2 = np.arctan2(twice_area, d2)

    l0 = np.einsum("ij,ij->i", e0, e0)
    l1 = np.einsum("ij,ij->i", e1, e1)
    l2 = np.einsum("ij,ij->i", e2, e2)
    area = 0.5 * twice_area
    obtuse0, obtuse1, obtuse2 = d0 < 0.0, d1 < 0.0, d2 < 0.0
    any_obtuse = obtuse0 | obtuse1 | obtuse2

    # Voronoi-safe area split
    a_corner = np.empty((len(t), 3))
    a_corner[:, 0] = (l2 * cot2 + l1 * cot1) / 8.0
    a_corner[:, 1] = (l0 * cot0 + l2 * cot2) / 8.0
    a_corner[:, 2] = (l1 * cot1 + l0 * cot0) / 8.0
    for k, obt in enumerate((obtuse0, obtuse1, obtuse2)):
        rows = any_obtuse
        a_corner[rows & obt, :] = (area[rows & obt] / 4.0)[:, None]
        a_corner[rows & obt, k] = area[rows & obt] / 2.0

    a_mixed = np.zeros(n)
    angle_sum = np.zeros(n)
    lap = np.zeros((n, 3))
    for k, ang, cot, (ia, ib) in ((0, ang0, cot0, (1, 2)),
                                  (1, ang1, cot1, (2, 0)),
                                  (2, ang2, cot2, (0, 1))):
        np.add.at(a_mixed, t[:, k], a_corner[:, k])
        np.add.at(angle_sum, t[:, k], ang)
        va, vb = t[:, ia], t[:, ib]
        w = cot[:, None] * (v[vb] - v[va])
        np.add.at(lap, va, w)
        np.add.at(lap, vb, -w)
    return a_mixed, angle_sum, lap


def discrete_mesh_curvature(mesh: SurfaceMesh
                            ) -> tuple[np.ndarray, np.ndarray]:
    """Per-vertex (H, K_G): cotangent mean curvature signed against the
    stored reference normals (NaN on boundary vertices, whose stencils are
    incomplete), and angle-defect Gauss curvature over the Meyer mixed area
    (boundary defect measured against pi). Results are also cached on
    mesh.per_vertex."""
    counts = mesh.edge_counts()
    if any(c > 2 for c in counts.values()):
        raise NonManifold("an edge is shared by more than two triangles")
    boundary_v = np.zeros(len(mesh.vertices), dtype=bool)
    for (u, v), c in counts.items():
        if c == 1:
            boundary_v[u] = True
            boundary_v[v] = True

    a_mixed, angle_sum, lap = _mixed_areas_and_angles(mesh.vertices,
                                                      mesh.triangles)
    a_safe = np.maximum(a_mixed, 1e-300)
    h_vec = lap / (4.0 * a_safe[:, None])
    H = np.einsum("ij,ij->i", h_vec, mesh.normals)
    # half-stencil cotangent sums carry no curvature information
    H[boundary_v] = np.nan
    defect = np.where(boundary_v, math.pi - angle_sum,
                      2.0 * math.pi - angle_sum)
    K = defect / a_safe
    mesh.per_vertex = (H, K)
    return H, K


def write_obj(mesh: SurfaceMesh) -> str:
    """ASCII OBJ: v/f records, 1-based indices, 17 significant digits.
    Byte-identical for identical meshes."""
    lines = ["# rotational surface mesh",
             "# normal convention: n = (-tz*cos(theta), -tz*sin(theta), tx); "
             "discrete H is signed against this normal"]
    for vx, vy, vz in mesh.vertices:
        lines.append(f"v {vx:.17g} {vy:.17g} {vz:.17g}")
    for a, b, c in mesh.triangles:
        lines.append(f"f {a + 1} {b + 1} {c + 1}")
    return "\n".join(lines) + "\n"


def write_stl(mesh: SurfaceMesh) -> bytes:
    """Binary STL, little-endian float32, 80-byte header. Byte-identical for
    identical meshes."""
    header = b"rotational surface mesh (binary STL)"
    header = header + b"\x00" * (80 - len(header))
    v = mesh.vertices
    t = mesh.triangles
    p0, p1, p2 = v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]
    nrm = np.cross(p1 - p0, p2 - p0)
    length = np.linalg.norm(nrm, axis=1)
    nrm = np.where(length[:, None] > 0, nrm / np.maximum(length, 1e-300)[:, None],
                   0.0)
    record = np.zeros(len(t), dtype=[("n", "<f4", 3), ("v", "<f4", (3, 3)),
                                     ("attr", "<u2")])
    record["n"] = nrm.astype("<f4")
    record["v"][:, 0, :] = p0.astype("<f4")
    record["v"][:, 1, :] = p1.astype("<f4")
    record["v"][:, 2, :] = p2.astype("<f4")
    count = np.uint32(len(t)).astype("<u4").tobytes()
    return header + count + record.tobytes()
