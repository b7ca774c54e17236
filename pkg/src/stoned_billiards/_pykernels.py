"""Pure-Python versions of the Monte Carlo kernels.

Each function mirrors its compiled twin in ``_ckernels.pyx`` line for line and
consumes the same pre-drawn uniforms, so both produce identical output.
"""
import numpy as np


def chain_walk(offsets, targets, cum, u, s0):
    steps = len(u)
    path = np.empty(steps + 1, dtype=np.int64)
    s = int(s0)
    path[0] = s
    off = offsets.tolist()
    tg = targets.tolist()
    cm = cum.tolist()
    for k, x in enumerate(u.tolist()):
        j = off[s]
        end = off[s + 1] - 1
        while j < end and x >= cm[j]:
            j += 1
        s = tg[j]
        path[k + 1] = s
    return path


def _inv_at(w, n, v):
    # position of value v under the affine permutation with window w
    for k in range(n):
        d = v - w[k]
        if d % n == 0:
            return k + 1 + d
    return 0


def billiard_walk(window, letters, phase0, u, p, grassmannian):
    """Reduced random walk along a periodic word.

    At step M the letter i = letters[(phase0 + M) % N] is tried: the light
    crosses into s_i u when length(s_i u) > length(u) (and, in the affine
    Grassmannian version, s_i u keeps an increasing window) and u[M] < p.
    """
    n = len(window)
    N = len(letters)
    steps = len(u)
    out = np.empty((steps + 1, n), dtype=np.int64)
    crossed = np.zeros(steps, dtype=np.uint8)
    w = [int(x) for x in window]
    out[0] = w
    lt = letters.tolist()
    uu = u.tolist()
    for m in range(steps):
        i = lt[(phase0 + m) % N]
        a = i if i != 0 else n
        if _inv_at(w, n, a) < _inv_at(w, n, a + 1):
            nw = list(w)
            for k in range(n):
                r = nw[k] % n
                if r == i:
                    nw[k] += 1
                elif r == (i + 1) % n:
                    nw[k] -= 1
            ok = True
            if grassmannian:
                for k in range(n - 1):
                    if nw[k] > nw[k + 1]:
                        ok = False
                        break
            if ok and uu[m] < p:
                w = nw
                crossed[m] = 1
        out[m + 1] = w
    return out, crossed


def scan_sweeps(occ, nscans, p, pt, u, upos):
    """Run scans in place on a 0/1 window (sites left of it occupied, right of
    it vacant). Returns the new uniform position, or -1 if the window or the
    uniform buffer was too small."""
    W = len(occ)
    nu = len(u)
    R = -1
    for k in range(W - 1, -1, -1):
        if occ[k]:
            R = k
            break
    for _ in range(nscans):
        v = 0
        while v < W and occ[v]:
            v += 1
        if v == 0 or v >= W:
            return -1
        i = v - 1
        while True:
            if occ[i] == 0 and i > R:
                break
            if i + 1 >= W:
                return -1
            if occ[i] == 1 and occ[i + 1] == 0:
                if upos >= nu:
                    return -1
                x = u[upos]
                upos += 1
                if x < p:
                    occ[i] = 0
                    occ[i + 1] = 1
                    if i + 1 > R:
                        R = i + 1
            elif occ[i] == 0 and occ[i + 1] == 1 and pt > 0:
                if upos >= nu:
                    return -1
                x = u[upos]
                upos += 1
                if x < pt:
                    occ[i] = 1
                    occ[i + 1] = 0
                    if i + 1 == R:
                        R = i
            i += 1
    return upos
