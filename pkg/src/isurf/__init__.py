"""Exact computer algebra for T-singular I-surfaces.

Sparse rational polynomial arithmetic, lattice cones and Hilbert bases,
Hirzebruch-Jung combinatorics, toric blowups, canonical-ring relation
formats, and curve-configuration replay, behind a deterministic scenario
runner (``isurf`` on the command line).
"""

__version__ = "0.1.0"
