"""dirichlet-lab: sieves, truncated Dirichlet-series algebra, weighted
Hilbert/Bergman norms, and desk-scale verification experiments."""

__version__ = "0.1.0"

from ._kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
