import numpy as np
import pytest

from stoned_billiards import billiards as bl
from stoned_billiards import chains as ch
from stoned_billiards import kernels

needs_c = pytest.mark.skipif(kernels._ckernels is None, reason="compiled kernels not built")


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels._pick("fortran")


@needs_c
def test_chain_walk_backends_agree():
    chain = ch.stoned_masep_chain((1, 2, 3), (1, 2, 2), (1, 2, 2), 0)
    a = ch.simulate(chain, 9, 5000, backend="python")
    b = ch.simulate(chain, 9, 5000, backend="cython")
    assert np.array_equal(a, b)


@needs_c
@pytest.mark.parametrize("grass", [False, True])
def test_billiard_walk_backends_agree(grass):
    cfg = bl.RayConfig(bl.delta_vector(4))
    a = bl.simulate(bl.ray_word(cfg), 0.6, 2000, 4, grass, backend="python")
    b = bl.simulate(bl.ray_word(cfg), 0.6, 2000, 4, grass, backend="cython")
    assert np.array_equal(a.windows, b.windows) and np.array_equal(a.crossed, b.crossed)


@needs_c
@pytest.mark.parametrize("t", [0.0, 0.4])
def test_scan_backends_agree(t):
    from stoned_billiards import scan
    a, _ = scan.scan_process(0.5, t, 200, 8, backend="python")
    b, _ = scan.scan_process(0.5, t, 200, 8, backend="cython")
    assert a == b
