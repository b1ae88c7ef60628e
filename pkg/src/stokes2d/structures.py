"""Force models for immersed structures.

Closed elastic fibers (membrane, cortex, nucleus), tethered point sets,
the anchored ECM spring network, and membrane-cortex adhesion links.
Force densities are in pN/um^2; per-node forces (density times the
reference spacing) are in pN/um and are what the fluid kernels consume.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np


class DegenerateGeometryError(ValueError):
    pass


class ClosedFiber:
    """Discretized closed elastic curve with linear tension law.

    Tension per segment is gamma + k_elastic * (stretch - 1), where stretch
    is segment length over the reference spacing. gamma = 0 gives a purely
    elastic fiber.
    """

    def __init__(self, nodes, ref_spacing, k_elastic, gamma=0.0):
        self.nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
        if self.nodes.shape[0] < 3 or self.nodes.shape[1] != 2:
            raise ValueError(f"need at least 3 nodes of dimension 2, got {self.nodes.shape}")
        if not ref_spacing > 0:
            raise ValueError(f"ref_spacing must be positive, got {ref_spacing}")
        self.ref_spacing = float(ref_spacing)
        self.k_elastic = float(k_elastic)
        self.gamma = float(gamma)

    def __len__(self):
        return self.nodes.shape[0]

    def with_nodes(self, nodes):
        return ClosedFiber(nodes, self.ref_spacing, self.k_elastic, self.gamma)

    def with_stiffness(self, k_elastic):
        return ClosedFiber(self.nodes, self.ref_spacing, k_elastic, self.gamma)

    @classmethod
    def circle(cls, center, radius, n, k_elastic, gamma=0.0, ref_spacing=None):
        """Circle discretized with n nodes; at rest unless ref_spacing is given."""
        theta = 2 * np.pi * np.arange(n) / n
        nodes = np.asarray(center, dtype=float) + radius * np.stack(
            [np.cos(theta), np.sin(theta)], axis=1
        )
        if ref_spacing is None:
            ref_spacing = np.linalg.norm(nodes[1] - nodes[0])
        return cls(nodes, ref_spacing, k_elastic, gamma)


def _segments(fiber):
    """Segment vectors X_{j+1} - X_j (closed: index modulo N)."""
    return np.roll(fiber.nodes, -1, axis=0) - fiber.nodes


def fiber_tension(fiber):
    """Per-segment tension; segment j connects node j to node j+1."""
    seg = _segments(fiber)
    lengths = np.linalg.norm(seg, axis=1)
    return fiber.gamma + fiber.k_elastic * (lengths / fiber.ref_spacing - 1.0)


def fiber_force_density(fiber):
    """Elastic force density (pN/um^2) at each node: d(T tau)/ds, centered."""
    seg = _segments(fiber)
    lengths = np.linalg.norm(seg, axis=1)
    if np.any(lengths == 0.0):
        j = int(np.argmin(lengths))
        raise DegenerateGeometryError(f"zero-length segment at node {j}")
    tension = fiber.gamma + fiber.k_elastic * (lengths / fiber.ref_spacing - 1.0)
    t_tau = (tension / lengths)[:, None] * seg
    return (t_tau - np.roll(t_tau, 1, axis=0)) / fiber.ref_spacing


def fiber_elastic_force(fiber):
    """Per-node elastic force (pN/um): force density times reference spacing.

    The centered-difference divergence telescopes around the closed curve,
    so the forces sum to zero exactly.
    """
    return fiber_force_density(fiber) * fiber.ref_spacing


def outward_normals(fiber):
    """Unit normals pointing away from the polygon centroid."""
    tangents = np.roll(fiber.nodes, -1, axis=0) - np.roll(fiber.nodes, 1, axis=0)
    norms = np.linalg.norm(tangents, axis=1)
    if np.any(norms == 0.0):
        j = int(np.argmin(norms))
        raise DegenerateGeometryError(f"degenerate tangent at node {j}")
    normals = np.stack([tangents[:, 1], -tangents[:, 0]], axis=1) / norms[:, None]
    centroid = fiber.nodes.mean(axis=0)
    flip = np.einsum("ij,ij->i", normals, fiber.nodes - centroid) < 0
    normals[flip] *= -1.0
    return normals


def tether_force(points, anchors_right, anchors_left, k_teth):
    """Spring force tying each point to its right and left anchors."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    anchors_right = np.atleast_2d(np.asarray(anchors_right, dtype=float))
    anchors_left = np.atleast_2d(np.asarray(anchors_left, dtype=float))
    if not (points.shape == anchors_right.shape == anchors_left.shape):
        raise ValueError("points and anchors must have matching shapes")
    return -k_teth * (2.0 * points - anchors_right - anchors_left)


class SpringNetwork:
    """ECM nodes connected by springs along edges, plus per-node anchors."""

    def __init__(self, nodes, edges, anchors, k_teth):
        self.nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
        self.edges = [(int(i), int(j)) for i, j in edges]
        self.anchors = np.atleast_2d(np.asarray(anchors, dtype=float))
        self.k_teth = float(k_teth)
        n = self.nodes.shape[0]
        if self.anchors.shape != self.nodes.shape:
            raise ValueError("anchors must match nodes in shape")
        seen = set()
        for i, j in self.edges:
            if not (0 <= i < n and 0 <= j < n) or i >= j:
                raise ValueError(f"bad edge ({i}, {j}); need 0 <= i < j < {n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))

    def __len__(self):
        return self.nodes.shape[0]

    def with_nodes(self, nodes):
        return SpringNetwork(nodes, self.edges, self.anchors, self.k_teth)

    @classmethod
    def from_initial(cls, nodes, edges, k_teth):
        """Network whose anchors make the initial configuration force-free."""
        anchors = compute_anchors(nodes, edges)
        return cls(nodes, edges, anchors, k_teth)


def ecm_force(network):
    """Spring + anchor force (pN/um) on each ECM node."""
    x = network.nodes
    f = -(x - network.anchors)
    for i, j in network.edges:
        d = x[i] - x[j]
        f[i] -= d
        f[j] += d
    return network.k_teth * f


def compute_anchors(nodes, edges):
    """Anchor positions that zero the ECM force at the given configuration."""
    nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
    z = nodes.copy()
    for i, j in edges:
        d = nodes[i] - nodes[j]
        z[i] += d
        z[j] -= d
    return z


def _circumcircle(a, b, c):
    """Center and squared radius of the circle through a, b, c (None if collinear)."""
    d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
    if d == 0.0:
        return None
    a2, b2, c2 = a @ a, b @ b, c @ c
    ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d
    uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d
    center = np.array([ux, uy])
    return center, np.sum((a - center) ** 2)


def _segments_cross(p, q, r, s):
    """True if open segments pq and rs properly intersect."""
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    return (orient(p, q, r) * orient(p, q, s) < 0) and (orient(r, s, p) * orient(r, s, q) < 0)


def delaunay_edges(points):
    """Delaunay edges by the brute-force empty-circumcircle test.

    Every point triple whose circumcircle strictly contains no other point
    contributes its three edges. Cocircular degeneracies are broken in favor
    of the lexicographically smallest crossing edge.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n = pts.shape[0]
    if n < 3:
        raise ValueError(f"need at least 3 points, got {n}")
    scale = np.ptp(pts, axis=0).max()
    if scale == 0.0:
        raise DegenerateGeometryError("all points coincide")
    tol = 1e-12 * scale**2
    for i in range(n):
        for j in range(i + 1, n):
            if np.sum((pts[i] - pts[j]) ** 2) == 0.0:
                raise DegenerateGeometryError(f"duplicate points {i} and {j}")

    edges = set()
    any_triangle = False
    for i, j, k in itertools.combinations(range(n), 3):
        cc = _circumcircle(pts[i], pts[j], pts[k])
        if cc is None:
            continue
        center, r2 = cc
        d2 = np.sum((pts - center) ** 2, axis=1)
        d2[[i, j, k]] = np.inf
        if np.min(d2) > r2 - tol:
            any_triangle = True
            edges.update([(i, j), (i, k), (j, k)])
    if not any_triangle:
        raise DegenerateGeometryError("all points are collinear")

    # cocircular quads admit both diagonals; keep the lexicographically smaller
    out = sorted(edges)
    dropped = set()
    for a in range(len(out)):
        for b in range(a + 1, len(out)):
            e, f = out[a], out[b]
            if e in dropped or f in dropped or set(e) & set(f):
                continue
            if _segments_cross(pts[e[0]], pts[e[1]], pts[f[0]], pts[f[1]]):
                dropped.add(f)
    return [e for e in out if e not in dropped]


@dataclass
class AdhesionState:
    """Index pairing of membrane to cortex nodes with per-link broken flags."""

    pairing: np.ndarray   # pairing[m] = cortex index linked to membrane node m
    broken: np.ndarray    # bool per membrane node
    k_adh: float          # pN/um^3

    @classmethod
    def identity(cls, n, k_adh):
        return cls(pairing=np.arange(n), broken=np.zeros(n, dtype=bool), k_adh=float(k_adh))

    def __post_init__(self):
        self.pairing = np.asarray(self.pairing, dtype=int)
        self.broken = np.asarray(self.broken, dtype=bool)
        if self.pairing.shape != self.broken.shape:
            raise ValueError("pairing and broken must have equal length")
        if len(set(self.pairing.tolist())) != self.pairing.size:
            raise ValueError("pairing must be one-to-one")


def adhesion_force_density(membrane, cortex, state):
    """Adhesion force densities (pN/um^2) on membrane and cortex nodes."""
    gap = membrane.nodes - cortex.nodes[state.pairing]
    f_mem = -state.k_adh * gap
    f_mem[state.broken] = 0.0
    f_cor = np.zeros_like(cortex.nodes)
    f_cor[state.pairing] = -f_mem
    return f_mem, f_cor


def adhesion_forces(membrane, cortex, state):
    """Per-node adhesion forces (pN/um); equal and opposite across the pairing."""
    f_mem, f_cor = adhesion_force_density(membrane, cortex, state)
    return f_mem * membrane.ref_spacing, f_cor * membrane.ref_spacing
