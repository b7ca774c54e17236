"""Command-line entry point: `stoned <command> [options]`.

Commands: verify, stationary, simulate, billiard, cores, scan, plot.
Global flags: --seed, --out, --config, --threads. Values in the INI file's
[experiment] section act as defaults; flags given on the command line win.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, kernels
from . import billiards as bl
from . import chains as ch
from . import cores, hecke, scan, suites

PROCESSES = ("masep", "stoned-asep", "itasep", "stoned-itasep", "obasep", "stoned-obasep", "toric")


# ------------------------------------------------------------------ parsing

def frac(s):
    s = str(s).strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def ints(s):
    return tuple(int(x) for x in str(s).replace(" ", "").split(",") if x != "")


def fracs(s):
    return tuple(frac(x) for x in str(s).replace(" ", "").split(",") if x != "")


@dataclass
class ExperimentConfig:
    process: str = "stoned-asep"
    lam: tuple = (1, 2, 3)
    rho: tuple = (1, 2, 2)
    p: Fraction = Fraction(1, 2)
    t: Fraction = Fraction(0)
    a: tuple = ()
    sig: tuple = ()
    alpha: Fraction = Fraction(1, 2)
    beta: Fraction = Fraction(1, 2)
    chi: tuple = (1, 2, 2)
    chi_stone: Fraction = Fraction(3, 4)
    n: int = 3
    eta: tuple = ()
    seed: int = 0
    steps: int = 10 ** 5
    burn_in: int = 10 ** 4
    trials: int = 10 ** 4
    every: int = 1000
    gs: tuple = (2, 2)

    def validate(self):
        """Re-check the parameter ranges; chain builders name the violated inequality."""
        if self.process not in PROCESSES:
            raise ValueError(f"unknown process {self.process!r}")
        if not 0 <= self.t < 1:
            raise ValueError(f"t = {self.t} not in [0,1)")
        if not 0 < self.p <= 1:
            raise ValueError(f"p = {self.p} not in (0,1]")
        if self.steps < 0 or self.trials < 1:
            raise ValueError("steps must be >= 0 and trials >= 1")
        build_chain(self)
        return self

    def exact_items(self, keys=None):
        if keys is not None:
            return [(k, _show(getattr(self, k))) for k in keys]
        keys = {"masep": ("lam", "t"), "stoned-asep": ("lam", "rho", "chi", "t"),
                "itasep": ("lam", "a"), "stoned-itasep": ("lam", "rho", "sig", "a"),
                "obasep": ("lam", "alpha", "beta", "t"),
                "stoned-obasep": ("lam", "chi", "chi_stone", "alpha", "beta", "t"),
                "toric": ("eta", "n", "p", "t")}[self.process]
        return [("process", self.process)] + [(k, _show(getattr(self, k))) for k in keys]


CONVERTERS = {"lam": ints, "rho": ints, "eta": ints, "gs": ints, "p": frac, "t": frac, "alpha": frac,
              "beta": frac, "chi_stone": frac, "a": fracs, "sig": fracs, "chi": fracs, "n": int,
              "seed": int, "steps": int, "burn_in": int, "trials": int, "every": int, "process": str}


def _show(v):
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)


def load_config(path):
    """Read the [experiment] section of an INI file into converted values."""
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise FileNotFoundError(f"config file not found: {path}")
    if "experiment" not in cp:
        raise ValueError(f"{path}: missing [experiment] section")
    out = {}
    for k, v in cp["experiment"].items():
        k = k.replace("-", "_")
        if k not in CONVERTERS:
            raise ValueError(f"{path}: unknown key {k!r}")
        out[k] = CONVERTERS[k](v)
    return out


def make_config(args):
    base = load_config(args.config) if args.config else {}
    cfg = ExperimentConfig()
    for f in fields(ExperimentConfig):
        if f.name in base:
            setattr(cfg, f.name, base[f.name])
        v = getattr(args, f.name, None)
        if v is not None:
            setattr(cfg, f.name, v)
    if args.seed is not None:
        cfg.seed = args.seed
    return cfg


# ----------------------------------------------------------------- builders

def _word(cfg):
    eta = cfg.eta or bl.delta_vector(cfg.n)
    return bl.ray_word(bl.RayConfig(eta))


def build_chain(cfg):
    k = cfg.process
    if k == "masep":
        return ch.masep_chain(cfg.lam, cfg.t)
    if k == "stoned-asep":
        return ch.stoned_masep_chain(cfg.lam, cfg.rho, cfg.chi, cfg.t)
    if k == "itasep":
        return ch.itasep_chain(cfg.lam, cfg.a)
    if k == "stoned-itasep":
        return ch.stoned_itasep_chain(cfg.lam, cfg.rho, cfg.sig, cfg.a)
    if k == "obasep":
        return ch.obasep_chain(cfg.lam, cfg.alpha, cfg.beta, cfg.t)
    if k == "stoned-obasep":
        return ch.stoned_obasep_chain(cfg.lam, cfg.chi, cfg.chi_stone, cfg.alpha, cfg.beta, cfg.t)
    if k == "toric":
        return bl.toric_chain(_word(cfg), cfg.p, cfg.t)
    raise ValueError(f"unknown process {k!r}")


def claimed_law(cfg):
    """The closed-form stationary law for the stoned chains (None otherwise)."""
    k = cfg.process
    if k == "stoned-asep":
        return ch.stoned_asep_law(hecke.build_F_family(cfg.lam, cfg.t), cfg.lam, cfg.rho, cfg.chi, cfg.t)
    if k == "stoned-itasep":
        return ch.stoned_itasep_law(hecke.build_Psi_family(cfg.lam, cfg.a), cfg.lam, cfg.rho, cfg.sig)
    if k == "stoned-obasep":
        G = hecke.build_G_family(cfg.lam, cfg.alpha, cfg.beta, cfg.t)
        return ch.stoned_obasep_law(G, cfg.chi, cfg.chi_stone)
    return None


# --------------------------------------------------------------- reporting

def provenance(cfg, command, extra=(), keys=None):
    rows = [("tool", f"stoned_billiards {__version__}"), ("command", command),
            ("rng", ch.RNG_ID), ("seed", str(cfg.seed)), ("numpy", np.__version__)]
    return rows + list(cfg.exact_items(keys)) + list(extra)


def render(prov, header, rows):
    out = io.StringIO()
    for k, v in prov:
        out.write(f"# {k}: {v}\n")
    wr = csv.writer(out, lineterminator="\n")
    wr.writerow(header)
    wr.writerows(rows)
    return out.getvalue()


def emit(args, name, text):
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        (d / name).write_text(text)
        print(f"wrote {d / name}")
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------- commands

def cmd_verify(args):
    try:
        checks = suites.run_suite(args.suite)
    except KeyError as e:
        print(e.args[0], file=sys.stderr)
        return 2
    for c in checks:
        print(c.line())
    bad = sum(not c.ok for c in checks)
    print(f"{len(checks) - bad}/{len(checks)} passed")
    return 1 if bad else 0


def cmd_stationary(args):
    cfg = make_config(args).validate()
    chain = build_chain(cfg)
    res = ch.stationary_exact(chain).probs
    claim = claimed_law(cfg)
    rows = []
    for s in chain.states:
        rows.append([ch.state_text(s), str(res[s]), "" if claim is None else str(claim[s]), repr(float(res[s]))])
    extra = [("states", str(len(chain)))]
    if claim is not None:
        extra.append(("claimed_law_matches", str(all(claim[s] == res[s] for s in chain.states))))
    emit(args, "stationary.csv", render(provenance(cfg, "stationary", extra),
                                        ["state", "exact", "claimed", "float"], rows))
    return 0


def cmd_simulate(args):
    cfg = make_config(args).validate()
    chain = build_chain(cfg)
    exact = ch.stationary_exact(chain).probs
    path = ch.simulate(chain, cfg.seed, cfg.steps + cfg.burn_in)
    emp = ch.empirical(chain, path, cfg.burn_in + 1).probs
    tv = ch.tv_distance(emp, exact)
    rows = [[ch.state_text(s), str(exact[s]), repr(float(exact[s])), repr(float(emp[s]))] for s in chain.states]
    extra = [("steps", str(cfg.steps)), ("burn_in", str(cfg.burn_in)), ("tv", f"{tv:.6f}")]
    emit(args, "simulate.csv", render(provenance(cfg, "simulate", extra),
                                      ["state", "exact", "exact_float", "empirical"], rows))
    return 0


def cmd_billiard(args):
    cfg = make_config(args)
    cfg.eta = cfg.eta or bl.delta_vector(cfg.n)
    word = _word(cfg)
    traj = bl.simulate(word, cfg.p, cfg.steps, cfg.seed, grassmannian=args.grassmannian)
    keys = ("eta", "p", "steps")
    extra = [("word", _show(word.letters)), ("grassmannian", str(args.grassmannian))]
    rows = []
    for m, (i, c) in enumerate(zip(traj.letters(), traj.crossed)):
        rows.append([m, " ".join(map(str, traj.windows[m])), i, "cross" if c else "reflect"])
    rows.append([len(traj), " ".join(map(str, traj.windows[-1])), "", "end"])
    emit(args, "billiard.csv", render(provenance(cfg, "billiard", extra, keys), ["M", "window", "letter", "event"], rows))
    if args.chambers and cfg.n == 3:
        probs = bl.chamber_probabilities(word, cfg.p)
        rows = [["".join(map(str, w)), str(v), repr(float(v))] for w, v in sorted(probs.items())]
        emit(args, "chambers.csv", render(provenance(cfg, "billiard --chambers", (), ("eta", "p")), ["w", "exact", "float"], rows))
    return 0


def cmd_cores(args):
    cfg = make_config(args)
    n, p = cfg.n, cfg.p
    cfg.eta = cfg.eta or bl.delta_vector(n)
    rc = bl.RayConfig(cfg.eta)
    traj = bl.simulate_agrrbt(rc, p, cfg.steps, cfg.seed)
    region = cores.limit_region(n, p)
    rows = []
    for M in range(0, cfg.steps + 1, cfg.every):
        nu = cores.kappa(traj.state(M))
        d = cores.hausdorff(cores.scaled_diagram(nu), region) if nu else ""
        rows.append([M, sum(nu), d if d == "" else f"{d:.6f}"])
    verts = " ".join(f"({x},{y})" for x, y in region.exact_vertices)
    extra = [("limit_vertices", verts)]
    emit(args, "cores.csv", render(provenance(cfg, "cores", extra, ("eta", "p", "steps", "every")), ["M", "size", "hausdorff"], rows))
    return 0


def cmd_scan(args):
    cfg = make_config(args)
    a, b = cfg.gs
    p = float(cfg.p)
    g = scan.sample_gscan(a, b, p, cfg.trials, cfg.seed, threads=args.threads).samples
    G = scan.lpp_G(a, b, p, cfg.trials, cfg.seed + 1) - a + 1
    stat, pv = scan.chi2_same_distribution(g, G)
    hi = int(max(g.max(), G.max()))
    cg = np.bincount(g, minlength=hi + 1)
    cG = np.bincount(G, minlength=hi + 1)
    rows = [[v, int(cg[v]), int(cG[v])] for v in range(1, hi + 1)]
    extra = [("lpp_seed", str(cfg.seed + 1)),
             ("chi2", f"{stat:.4f}"), ("pvalue", f"{pv:.6f}")]
    emit(args, f"gscan_{a}_{b}.csv", render(provenance(cfg, "scan", extra, ("gs", "p", "trials")),
                                            ["value", "scan_count", "lpp_shifted_count"], rows))
    return 0


def cmd_plot(args):
    from . import plotting
    cfg = make_config(args)
    svg = plotting.PLOTS[args.kind](cfg, args)
    emit(args, f"{args.kind}.svg", svg)
    return 0


# ------------------------------------------------------------------- parser

def _common(p):
    p.add_argument("--process", choices=PROCESSES)
    p.add_argument("--lam", type=ints, help="species vector, e.g. 1,2,3")
    p.add_argument("--rho", type=ints, help="stone densities")
    p.add_argument("--chi", type=fracs, help="stone parameters (rationals)")
    p.add_argument("--chi-stone", dest="chi_stone", type=frac)
    p.add_argument("--sig", type=fracs, help="signal probabilities p(j) of the iTASEP stones")
    p.add_argument("--a", type=fracs, help="iTASEP rates a_1..a_m")
    p.add_argument("--alpha", type=frac)
    p.add_argument("--beta", type=frac)
    p.add_argument("-p", "--p", type=frac)
    p.add_argument("-t", "--t", type=frac)
    p.add_argument("-n", "--n", type=int)
    p.add_argument("--eta", type=ints, help="ray direction, integers summing to zero")
    p.add_argument("--steps", type=int)
    p.add_argument("--burn-in", dest="burn_in", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--every", type=int)
    p.add_argument("--gs", type=ints, help="a,b for G_scan(a,b)")


def build_parser():
    top = argparse.ArgumentParser(prog="stoned", description=__doc__.splitlines()[0])
    top.add_argument("--seed", type=int)
    top.add_argument("--out", help="output directory (default: stdout)")
    top.add_argument("--config", help="INI file with an [experiment] section")
    top.add_argument("--threads", type=int, default=1)
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({kernels.BACKEND} kernels)")
    sub = top.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run exact and statistical checks")
    v.add_argument("suite", help="qkz, balance, correlations, billiards, cores, scan or all")
    v.set_defaults(func=cmd_verify)

    for name, fn, hlp in [("stationary", cmd_stationary, "exact stationary law as fractions"),
                          ("simulate", cmd_simulate, "Monte Carlo run against the exact law"),
                          ("billiard", cmd_billiard, "reduced random billiard trajectory"),
                          ("cores", cmd_cores, "core growth and its distance to the limit region"),
                          ("scan", cmd_scan, "G_scan(a,b) against shifted geometric LPP")]:
        s = sub.add_parser(name, help=hlp)
        _common(s)
        s.set_defaults(func=fn)
        if name == "billiard":
            s.add_argument("--grassmannian", action="store_true", help="also reflect off chamber walls")
            s.add_argument("--chambers", action="store_true", help="exact chamber probabilities (n = 3)")

    pl = sub.add_parser("plot", help="deterministic SVG figures")
    pl.add_argument("kind", choices=["trajectory", "limit-shape", "stationary", "gscan"])
    pl.add_argument("--input", help="CSV written by `stationary` or `scan`")
    _common(pl)
    pl.set_defaults(func=cmd_plot)
    return top


def _reparse_globals(argv):
    # global flags are accepted after the subcommand as well
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    for f in ("--seed", "--out", "--config", "--threads"):
        pre.add_argument(f)
    known, rest = pre.parse_known_args(argv)
    front = []
    for k, v in vars(known).items():
        if v is not None:
            front += [f"--{k}", v]
    return front + rest


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_reparse_globals(argv))
    try:
        return args.func(args)
    except (ValueError, ch.ChainError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
