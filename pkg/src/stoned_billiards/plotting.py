"""SVG figures with byte-stable output (fixed hash salt, no date stamp)."""
import csv
import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import billiards as bl  # noqa: E402
from . import chains as ch  # noqa: E402
from . import cores, scan  # noqa: E402
from .groups import all_perms  # noqa: E402

plt.rcParams["svg.hashsalt"] = "stoned-billiards"
plt.rcParams["svg.fonttype"] = "none"

# orthonormal basis of the plane x1 + x2 + x3 = 0
PLANE = np.array([[1.0, -1.0, 0.0], [1.0, 1.0, -2.0]]) / np.array([[np.sqrt(2)], [np.sqrt(6)]])


def to_svg(fig):
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def _read_csv(path):
    with open(path) as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def plot_trajectory(cfg, args):
    """n = 3 arrangement with the fundamental alcove, the six chamber rays and
    the alcove centers visited by a reduced random billiard trajectory."""
    if cfg.n != 3:
        raise ValueError("trajectory plot needs n = 3")
    traj = bl.simulate_rrbt(bl.RayConfig(cfg.eta or bl.delta_vector(3)), cfg.p, cfg.steps, cfg.seed)
    pts = bl.centers(traj.windows) @ PLANE.T
    R = max(3.0, float(np.abs(pts).max()) + 1)
    fig, ax = plt.subplots(figsize=(6, 6))
    s = np.linspace(-R, R, 2)
    for i, j in [(0, 1), (0, 2), (1, 2)]:
        normal = PLANE @ (np.eye(3)[i] - np.eye(3)[j])
        along = np.array([-normal[1], normal[0]]) / np.linalg.norm(normal)
        for k in range(-int(R * 2) - 2, int(R * 2) + 3):
            base = normal * k / normal.dot(normal)
            ax.plot(base[0] + s * along[0], base[1] + s * along[1], color="0.8", lw=0.5)
    alcove = np.array([[0, 0, 0], [2 / 3, -1 / 3, -1 / 3], [1 / 3, 1 / 3, -2 / 3]]) @ PLANE.T
    ax.fill(alcove[:, 0], alcove[:, 1], color="tab:blue", alpha=0.4)
    p = float(cfg.p)
    psi = np.array([3 - 2 * p, p, p - 3])
    for w in all_perms(3):
        d = PLANE @ psi[np.array(w) - 1]
        d = d / np.linalg.norm(d) * R
        ax.plot([0, d[0]], [0, d[1]], ls=":", color="tab:red", lw=1)
    ax.plot(pts[:, 0], pts[:, 1], color="k", lw=0.8)
    ax.set_xlim(-R, R)
    ax.set_ylim(-R, R)
    ax.set_aspect("equal")
    ax.set_axis_off()
    return to_svg(fig)


def plot_limit_shape(cfg, args):
    n, p = cfg.n, cfg.p
    traj = bl.simulate_agrrbt(bl.RayConfig(cfg.eta or bl.delta_vector(n)), p, cfg.steps, cfg.seed)
    nu = cores.kappa(traj.state(cfg.steps))
    fig, ax = plt.subplots(figsize=(5, 5))
    region = cores.limit_region(n, p)
    x, y = region.polygon.exterior.xy
    ax.fill(x, y, color="tab:green", alpha=0.25, lw=0)
    if nu:
        d = cores.scaled_diagram(nu).polygon.exterior.xy
        ax.fill(d[0], d[1], color="darkgreen", alpha=0.8, lw=0)
    ax.plot(x, y, color="tab:red", lw=1)
    ax.set_aspect("equal")
    ax.set_title(f"{n}-core after {cfg.steps} steps, |nu| = {sum(nu)}")
    return to_svg(fig)


def plot_stationary(cfg, args):
    if args.input:
        rows = _read_csv(args.input)
        labels = [r["state"] for r in rows]
        vals = [float(r["float"]) for r in rows]
    else:
        from .cli import build_chain
        chain = build_chain(cfg.validate())
        res = ch.stationary_exact(chain).probs
        labels = [ch.state_text(s) for s in chain.states]
        vals = [float(res[s]) for s in chain.states]
    fig, ax = plt.subplots(figsize=(max(4, 0.25 * len(vals)), 4))
    ax.bar(range(len(vals)), vals, color="tab:blue")
    ax.set_xticks(range(len(vals)))
    ax.set_xticklabels(labels, rotation=90, fontsize=6)
    ax.set_ylabel("stationary probability")
    fig.tight_layout()
    return to_svg(fig)


def plot_gscan(cfg, args):
    if args.input:
        rows = _read_csv(args.input)
        v = np.array([int(r["value"]) for r in rows])
        c1 = np.array([int(r["scan_count"]) for r in rows])
        c2 = np.array([int(r["lpp_shifted_count"]) for r in rows])
    else:
        a, b = cfg.gs
        g = scan.sample_gscan(a, b, float(cfg.p), cfg.trials, cfg.seed).samples
        G = scan.lpp_G(a, b, float(cfg.p), cfg.trials, cfg.seed + 1) - a + 1
        hi = int(max(g.max(), G.max()))
        v = np.arange(1, hi + 1)
        c1 = np.bincount(g, minlength=hi + 1)[1:]
        c2 = np.bincount(G, minlength=hi + 1)[1:]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(v - 0.2, c1, width=0.4, label="scan")
    ax.bar(v + 0.2, c2, width=0.4, label="LPP shifted")
    ax.legend()
    ax.set_xlabel("value")
    return to_svg(fig)


PLOTS = {"trajectory": plot_trajectory, "limit-shape": plot_limit_shape,
         "stationary": plot_stationary, "gscan": plot_gscan}
