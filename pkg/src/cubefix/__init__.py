"""Exact combinatorics of CAT(0) cube complexes through their median-graph 1-skeleta."""

from .actions import (AffineAut, Budget, Elliptic, GroupAction, Hyperbolic, PermutationAut,
                      ProductAut, Undecided, classify, fix_set, orbit)
from .complex import (Cube, FiniteComplex, LatticeComplex, ProductComplex, ball, cubes,
                      geodesic, interval, lattice_box, median, verify_median_graph)
from .hyperplanes import (Hyperplane, crosses, find_disjoint_triple, hyperplane_of,
                          hyperplanes_between, separates, side)
from .theorem_a import FixedPoint, HyperbolicWitness, fixed_point_or_witness

__version__ = "0.1.0"
