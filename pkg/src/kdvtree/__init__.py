"""Linearized KdV on a fixed 7-bond metric tree.

Layer-potential solver (Airy fundamental solutions, fractional-calculus
localization, 15-unknown Volterra march) cross-validated against an
implicit finite-difference oracle, with well-posedness gates and energy
diagnostics.
"""

__version__ = "0.1.0"
