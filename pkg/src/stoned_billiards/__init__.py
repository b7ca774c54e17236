"""Stoned exclusion processes, reduced random billiard trajectories in affine
arrangements, n-core growth and the scan TASEP."""

__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402
