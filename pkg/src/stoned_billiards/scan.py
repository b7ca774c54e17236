"""Scan TASEP/ASEP on the integer line, corner and multicorner growth, and
geometric last-passage percolation."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats
from shapely.geometry import Polygon

from . import kernels
from .cores import Region, _normalize, configuration_to_partition, diagram_polygon, partition_to_configuration

UNIFORM_CHUNK = 4096
MAX_WINDOW = 1 << 24


def _check_pt(p, t):
    if not 0 < p < 1:
        raise ValueError(f"p = {p} not in (0,1)")
    if not 0 <= t < 1:
        raise ValueError(f"t = {t} not in [0,1)")


class LineConfiguration:
    """Particles on Z. occ[k] is the occupation of site lo + k; everything left
    of the window is occupied and everything right of it vacant."""

    def __init__(self, lo=0, occ=None):
        self.lo = int(lo)
        self.occ = np.ones(1, dtype=np.uint8) if occ is None else np.array(occ, dtype=np.uint8)
        self._trim_check()

    def _trim_check(self):
        if len(self.occ) == 0:
            raise ValueError("empty window")

    @classmethod
    def step(cls, margin=8):
        """Every site <= 0 occupied."""
        occ = np.zeros(2 * margin, dtype=np.uint8)
        occ[:margin] = 1
        return cls(1 - margin, occ)

    @classmethod
    def from_partition(cls, nu):
        return cls(*partition_to_configuration(nu))

    def copy(self):
        return LineConfiguration(self.lo, self.occ.copy())

    def pad(self, left, right):
        self.occ = np.concatenate([np.ones(left, np.uint8), self.occ, np.zeros(right, np.uint8)])
        self.lo -= left

    def occupied_sites(self):
        """Occupied sites inside the window, right to left."""
        return self.lo + np.flatnonzero(self.occ)[::-1]

    def particle_site(self, b):
        """Site of the b-th particle from the right (b >= 1)."""
        sites = self.occupied_sites()
        if b <= len(sites):
            return int(sites[b - 1])
        return self.lo - 1 - (b - 1 - len(sites))

    def to_partition(self):
        return configuration_to_partition(self.lo, self.occ)

    def particle_count_defect(self):
        # conserved: (#vacancies at or left of 0) - (#particles right of 0)
        sites = self.lo + np.arange(len(self.occ))
        return int(np.sum((sites <= 0) & (self.occ == 0))) - int(np.sum((sites > 0) & (self.occ == 1)))

    def __eq__(self, other):
        return self.to_partition() == other.to_partition()

    def __repr__(self):
        return f"LineConfiguration(lo={self.lo}, occ={''.join(map(str, self.occ.tolist()))})"


class _UniformStream:
    """Uniforms drawn in chunks, so a retry after a window overflow replays the
    same draws."""

    def __init__(self, rng):
        self.rng = rng
        self.buf = np.empty(0)
        self.pos = 0

    def ensure(self, k):
        if len(self.buf) - self.pos < k:
            rest = self.buf[self.pos:]
            self.buf = np.concatenate([rest, self.rng.random(max(k, UNIFORM_CHUNK))])
            self.pos = 0


def run_scans(config, nscans, p, t, stream, backend=None):
    """Advance config by nscans scans in place, growing the window on demand."""
    need = max(64, 4 * len(config.occ))
    while True:
        stream.ensure(need)
        trial = config.occ.copy()
        pos = kernels.scan_sweeps(trial, nscans, p, p * t, stream.buf, stream.pos, backend=backend)
        if pos >= 0 and trial[0] == 1 and trial[-1] == 0:
            config.occ = trial
            stream.pos = pos
            return config
        # window or buffer too small: widen both and replay the same uniforms
        k = len(config.occ)
        if 3 * k > MAX_WINDOW:
            raise RuntimeError("scan did not terminate inside the maximal window")
        config.pad(k, k)
        need = max(need * 2, 4 * len(config.occ))


def scan_step(config, p, t, rng, backend=None):
    """One scan of the scan ASEP (t = 0: scan TASEP). Returns a new configuration."""
    _check_pt(p, t)
    out = config.copy()
    run_scans(out, 1, p, t, _UniformStream(rng), backend=backend)
    return out


def scan_process(p, t, scans, seed, record=None, backend=None):
    """Scan ASEP from the step state; returns the final configuration and the
    partitions after each scan count listed in record."""
    _check_pt(p, t)
    rng = np.random.default_rng(seed)
    stream = _UniformStream(rng)
    cfg = LineConfiguration.step()
    record = sorted(set(record or []))
    out = {}
    done = 0
    for k in record + [scans]:
        if k > done:
            run_scans(cfg, k - done, p, t, stream, backend=backend)
            done = k
        if k in record:
            out[k] = cfg.to_partition()
    return cfg, out


# --------------------------------------------------------------------- G_scan

@dataclass
class ScanRecord:
    a: int
    b: int
    p: float
    samples: np.ndarray
    seeds: list = field(default_factory=list)

    def __post_init__(self):
        if np.any(self.samples < 1):
            raise ValueError("G_scan values must be positive integers")


def gscan_once(a, b, p, rng, t=0.0, max_scans=10 ** 6, backend=None):
    """Index of the scan during which the b-th particle from the right first
    reaches site a - b + 1, i.e. makes its a-th jump (at t = 0)."""
    target = a - b + 1
    cfg = LineConfiguration.step(margin=a + b + 4)
    stream = _UniformStream(rng)
    for k in range(1, max_scans + 1):
        run_scans(cfg, 1, p, t, stream, backend=backend)
        if cfg.particle_site(b) >= target:
            return k
    raise RuntimeError("G_scan did not occur within max_scans")


def _gscan_chunk(args):
    a, b, p, seeds, backend = args
    return [gscan_once(a, b, p, np.random.default_rng(c), backend=backend) for c in seeds]


def sample_gscan(a, b, p, trials, seed, threads=1, backend=None):
    """Trial k uses the k-th child of SeedSequence(seed), so results do not
    depend on the number of worker processes."""
    children = np.random.SeedSequence(seed).spawn(trials)
    if threads <= 1:
        vals = _gscan_chunk((a, b, p, children, backend))
    else:
        from concurrent.futures import ProcessPoolExecutor
        size = -(-trials // threads)
        jobs = [(a, b, p, children[k:k + size], backend) for k in range(0, trials, size)]
        with ProcessPoolExecutor(threads) as ex:
            vals = [v for part in ex.map(_gscan_chunk, jobs) for v in part]
    return ScanRecord(a, b, p, np.asarray(vals, dtype=np.int64), [seed])


def lpp_G(a, b, p, trials, seed):
    """Geometric last-passage times G(a,b); weights have support {1,2,...}
    and mean 1/p."""
    if a < 1 or b < 1:
        raise ValueError("a, b must be >= 1")
    rng = np.random.default_rng(seed)
    X = rng.geometric(p, size=(trials, a, b))
    G = np.zeros((trials, a + 1, b + 1), dtype=np.int64)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            G[:, i, j] = X[:, i - 1, j - 1] + np.maximum(G[:, i - 1, j], G[:, i, j - 1])
    return G[:, a, b]


def lpp_G_enumerated(a, b, weights):
    """Max over up/right lattice paths by brute enumeration (small a + b)."""
    from itertools import combinations
    best = None
    steps = a + b - 2
    for rights in combinations(range(steps), a - 1):
        i = j = 0
        tot = weights[0][0]
        for s in range(steps):
            if s in rights:
                i += 1
            else:
                j += 1
            tot += weights[i][j]
        best = tot if best is None else max(best, tot)
    return best


def chi2_same_distribution(x, y, min_expected=5):
    """Two-sample chi-square test on a shared integer support, pooling the
    tail so every pooled cell has enough counts. Returns (statistic, pvalue)."""
    x = np.asarray(x)
    y = np.asarray(y)
    lo = int(min(x.min(), y.min()))
    hi = int(max(x.max(), y.max()))
    cx = np.bincount(x - lo, minlength=hi - lo + 1)
    cy = np.bincount(y - lo, minlength=hi - lo + 1)
    # merge adjacent bins left to right until each pooled column is big enough
    rows_x, rows_y = [], []
    ax = ay = 0
    for u, v in zip(cx, cy):
        ax += u
        ay += v
        if ax >= min_expected and ay >= min_expected:
            rows_x.append(ax)
            rows_y.append(ay)
            ax = ay = 0
    if rows_x:
        rows_x[-1] += ax
        rows_y[-1] += ay
    if len(rows_x) < 2:
        return 0.0, 1.0
    res = stats.chi2_contingency(np.array([rows_x, rows_y]))
    return float(res.statistic), float(res.pvalue)


# ------------------------------------------------------------------- growth

def _addable(nu):
    nu = list(nu)
    out = []
    for r in range(len(nu) + 1):
        c = nu[r] if r < len(nu) else 0
        if r == 0 or nu[r - 1] > c:
            out.append(r)
    return out


def corner_growth(seed, steps):
    """Add one uniformly random addable box per step."""
    rng = np.random.default_rng(seed)
    nu = []
    seq = [()]
    for _ in range(steps):
        rows = _addable(nu)
        r = rows[rng.integers(len(rows))]
        if r == len(nu):
            nu.append(0)
        nu[r] += 1
        seq.append(tuple(nu))
    return seq


def multicorner_growth(p, seed, steps):
    """Each step adds every addable box independently with probability p."""
    rng = np.random.default_rng(seed)
    nu = []
    seq = [()]
    for _ in range(steps):
        rows = _addable(nu)
        keep = [r for r, x in zip(rows, rng.random(len(rows))) if x < p]
        for r in keep:
            if r == len(nu):
                nu.append(0)
            nu[r] += 1
        seq.append(tuple(nu))
    return seq


def rost_region(samples=4001):
    """sqrt(x) + sqrt(-y) <= 6**(1/4), which already has area 1."""
    c = 6 ** 0.25
    s = np.linspace(0.0, 1.0, samples)
    pts = [(0.0, 0.0)] + list(zip((c * c * s ** 2).tolist(), (-(c * c * (1 - s) ** 2)).tolist()))
    return Region(Polygon(pts), "rost")


def multicorner_region(p, samples=4001):
    """Limit of multicorner growth: x + y + 2 sqrt((1-p) x y) <= 1 (mirrored
    into the fourth quadrant), scaled to area 1. p -> 0 recovers rost_region."""
    q = 1 - p
    th = np.linspace(0.0, np.pi / 2, samples)
    cx, cy = np.cos(th) ** 2, np.sin(th) ** 2
    r = 1.0 / (cx + cy + 2 * np.sqrt(q * cx * cy))
    pts = [(0.0, 0.0)] + list(zip((r * cx).tolist(), (-(r * cy)).tolist()))
    poly, _ = _normalize(pts)
    return Region(poly, f"multicorner(p={p})")


def scaled_partition(nu):
    poly, _ = _normalize(diagram_polygon(nu))
    return Region(poly, f"D|{sum(nu)}|")


__all__ = [
    "LineConfiguration", "ScanRecord", "scan_step", "scan_process", "run_scans", "sample_gscan",
    "gscan_once", "lpp_G", "lpp_G_enumerated", "chi2_same_distribution", "corner_growth",
    "multicorner_growth", "rost_region", "multicorner_region", "scaled_partition",
]
