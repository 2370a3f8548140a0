"""Exact computational toolkit for finite-group anomalies.

Subpackages cover: finite groups as multiplication tables (`groups`),
exact cyclotomic arithmetic (`cyclotomic`), bar-complex cohomology with
Z/m coefficients (`cohomology`), twisted-double modular data (`double`),
matrix-algebra gauge anomalies (`azumaya`), and abelian orbifold
bookkeeping (`gauging`).  Everything is exact: no floating point enters
any result (float64 BLAS is used internally only where the integer
arithmetic is provably below 2**53).
"""

__version__ = "0.1.0"
