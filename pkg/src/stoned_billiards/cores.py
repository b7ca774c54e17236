"""n-cores, their growth moves, and the limit shapes of core growth."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import shapely
from shapely.geometry import Polygon

from .groups import AffinePermutation, reduced_word

# boundary sampling step, as a fraction of the region diameter
HAUSDORFF_RESOLUTION = 1e-3


# ----------------------------------------------------------------- partitions

def check_partition(nu):
    nu = tuple(int(x) for x in nu)
    if any(x <= 0 for x in nu) or any(a < b for a, b in zip(nu, nu[1:])):
        raise ValueError(f"not a partition: {nu}")
    return nu


def hook_lengths(nu):
    nu = check_partition(nu)
    conj = conjugate(nu)
    return [[nu[r] - c + conj[c] - r - 1 for c in range(nu[r])] for r in range(len(nu))]


def conjugate(nu):
    return tuple(sum(1 for x in nu if x > c) for c in range(nu[0])) if nu else ()


def is_ncore(nu, n):
    return all(h % n for row in hook_lengths(nu) for h in row)


def addable_boxes(nu):
    """Boxes (row, col), 1-based, whose addition keeps a partition."""
    nu = tuple(nu)
    out = []
    for r in range(len(nu) + 1):
        c = (nu[r] if r < len(nu) else 0) + 1
        if r == 0 or nu[r - 1] >= c:
            out.append((r + 1, c))
    return out


def content(box):
    r, c = box
    return c - r


def gamma_add(nu, d0, n):
    """Add every addable box whose diagonal is congruent to d0 mod n."""
    boxes = [b for b in addable_boxes(nu) if content(b) % n == d0 % n]
    if not boxes:
        raise ValueError(f"no addable boxes in class {d0 % n}")
    rows = list(nu)
    for r, c in sorted(boxes):
        if r > len(rows):
            rows.append(0)
        rows[r - 1] += 1
    return tuple(rows)


def kappa_by_word(u):
    """kappa(u) from a reduced word (small elements only)."""
    nu = ()
    for j in reduced_word(u):
        nu = gamma_add(nu, j, u.n)
    return nu


# ------------------------------------------------------ runner description
# A core is determined by n runner tops: position x (with x = nu_i - i for the
# i-th particle) is occupied iff x < top[x mod n].  The tops are the window
# values of u minus one, and gamma_{d0} acts like s_{d0} on them.

def runner_tops(u):
    n = u.n
    tops = [0] * n
    for x in u.window:
        tops[(x - 1) % n] = x - 1
    return tops


def kappa(u):
    """kappa(u) read directly off the window of an affine Grassmannian u."""
    return partition_from_tops(runner_tops(u), u.n)


def partition_from_tops(tops, n):
    low = min(tops)
    parts = [np.arange(t - n, low - 1, -n) for t in tops]
    pos = np.sort(np.concatenate(parts))[::-1] if parts else np.array([], dtype=np.int64)
    k = len(pos)
    if low + k != 0:
        raise ValueError("runner tops do not have charge zero")
    rows = pos + np.arange(1, k + 1)
    return tuple(int(x) for x in rows[rows > 0])


def grow_along_trajectory(traj, every=1):
    """Cores kappa(v_M) for M = 0, every, 2*every, ... along an AGRRBT run."""
    n = traj.windows.shape[1]
    out = []
    for M in range(0, len(traj.windows), every):
        u = AffinePermutation(traj.windows[M])
        if not u.is_grassmannian():
            raise ValueError(f"state at step {M} left the fundamental chamber")
        out.append(kappa(u))
    return out


def grow_by_moves(traj):
    """Same sequence built move by move with gamma_add (checks the bookkeeping)."""
    n = traj.windows.shape[1]
    nu = ()
    out = [nu]
    for i, c in zip(traj.letters(), traj.crossed):
        if c:
            nu = gamma_add(nu, i, n)
        out.append(nu)
    return out


# ------------------------------------------------- partitions and particles

def partition_to_configuration(nu):
    """Particle i sits on site nu_i - i + 1, so the empty partition is the step
    configuration with every site <= 0 occupied.

    Returns (lo, occ) with occ[k] the occupation of site lo + k; sites left of
    lo are occupied and sites right of the array are vacant.
    """
    nu = tuple(nu)
    ell = len(nu)
    lo = -ell
    hi = (nu[0] if nu else 0) + 1
    occ = np.zeros(hi - lo, dtype=np.uint8)
    occ[0] = 1
    for i, x in enumerate(nu, 1):
        occ[x - i + 1 - lo] = 1
    return lo, occ


def configuration_to_partition(lo, occ):
    """Inverse of partition_to_configuration (any window with the same sites)."""
    sites = lo + np.flatnonzero(np.asarray(occ))[::-1]
    rows = [int(s) + i - 1 for i, s in enumerate(sites, 1)]
    # particles left of the window continue at lo - 1, lo - 2, ...
    if lo - 1 + len(sites) != 0:
        raise ValueError("configuration has nonzero charge relative to the step state")
    return tuple(x for x in rows if x > 0)


# -------------------------------------------------------------------- regions

@dataclass
class Region:
    """A region in the fourth quadrant given by its boundary polygon."""

    polygon: Polygon
    name: str = ""
    exact_vertices: tuple = ()

    @property
    def area(self):
        return self.polygon.area


def _normalize(points):
    poly = Polygon(points)
    s = poly.area ** -0.5
    return Polygon([(x * s, y * s) for x, y in points]), s


def diagram_polygon(nu):
    """Young diagram outline, top-left corner at the origin, rows going down."""
    nu = check_partition(nu)
    if not nu:
        raise ValueError("empty partition has no diagram")
    pts = [(0.0, 0.0), (float(nu[0]), 0.0)]
    for r in range(len(nu)):
        pts.append((float(nu[r]), -float(r + 1)))
        nxt = nu[r + 1] if r + 1 < len(nu) else 0
        if nxt != nu[r]:
            pts.append((float(nxt), -float(r + 1)))
    pts = [p for k, p in enumerate(pts) if k == 0 or p != pts[k - 1]]
    return pts


def scaled_diagram(nu):
    poly, s = _normalize(diagram_polygon(nu))
    return Region(poly, f"D{len(nu)}rows", ())


def h_values(n, p):
    p = Fraction(p)
    return [Fraction(2 * n) / ((n - (i - 1) * p) * (n - i * p) * (n - (i + 1) * p)) for i in range(1, n)]


def limit_vertices(n, p, h=None):
    """Exact r_k = (sum_{i<k} i h(i), -sum_{i>=k} (n-i) h(i)), k = 1..n."""
    h = h_values(n, p) if h is None else h
    out = []
    for k in range(1, n + 1):
        x = sum((i * h[i - 1] for i in range(1, k)), Fraction(0))
        y = -sum(((n - i) * h[i - 1] for i in range(k, n)), Fraction(0))
        out.append((x, y))
    return out


def limit_region(n, p):
    verts = limit_vertices(n, p)
    pts = [(0.0, 0.0)] + [(float(x), float(y)) for x, y in verts]
    poly, _ = _normalize(pts)
    return Region(poly, f"R(n={n},p={p})", tuple(verts))


def curve_point(alpha, p):
    """Boundary point of the n -> infinity region before normalization."""
    return (alpha ** 2 / (1 - p * alpha) ** 2, -(1 - alpha) ** 2 / ((1 - p) * (1 - p * alpha) ** 2))


def region_infinity(p, samples=4001):
    p = float(p)
    a = np.linspace(0.0, 1.0, samples)
    x, y = curve_point(a, p)
    pts = [(0.0, 0.0)] + list(zip(x.tolist(), y.tolist()))
    poly, _ = _normalize(pts)
    return Region(poly, f"Rinf(p={p})")


def _boundary_samples(poly, step):
    ring = shapely.segmentize(poly.exterior, step)
    return shapely.points(np.asarray(ring.coords))


def hausdorff(a, b, resolution=HAUSDORFF_RESOLUTION):
    """Hausdorff distance between two regions (0 inside), from boundary samples
    spaced resolution * diameter apart."""
    pa = a.polygon if isinstance(a, Region) else a
    pb = b.polygon if isinstance(b, Region) else b
    minx, miny, maxx, maxy = shapely.union(pa, pb).bounds
    step = resolution * float(np.hypot(maxx - minx, maxy - miny))
    da = shapely.distance(_boundary_samples(pa, step), pb).max()
    db = shapely.distance(_boundary_samples(pb, step), pa).max()
    return float(max(da, db))


__all__ = [
    "is_ncore", "gamma_add", "kappa", "kappa_by_word", "grow_along_trajectory", "grow_by_moves",
    "limit_region", "limit_vertices", "region_infinity", "hausdorff", "scaled_diagram", "Region",
    "partition_to_configuration", "configuration_to_partition", "h_values", "curve_point",
]
