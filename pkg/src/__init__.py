"""
PolyForge - exact-arithmetic polytope toolkit.
Constructions, face lattices, excess degree, decomposability and
feasibility of vertex/edge counts.
"""

__version__ = "1.0.0"
__author__ = "PolyForge Team"
