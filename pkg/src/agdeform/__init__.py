"""Exact symbolic verification of deformed almost-Grassmannian structures.

The package builds, on the affine chart of the Grassmannian of 2-planes in
(2+n)-space, the strongly essential flow fixing a higher-order point, a
family of deformed structures parameterized by c_2..c_n, and checks every
claimed identity (flow transformation laws, torsion normalizations,
representation-theoretic dimension counts, curvature components) in exact
rational arithmetic, with independent numeric and linear-algebra oracles.
"""

__version__ = "0.1.0"
