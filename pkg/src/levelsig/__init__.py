"""Supersingular isogeny signatures with torsion level structures.

Quaternion ideal arithmetic for B_{p,oo}, constrained KLPT norm-equation
solvers, a brute-force toy-curve oracle for the (level-structured) Deuring
correspondence, the identification/signature protocol, and the lattice
statistics harness.
"""

__version__ = "0.1.0"
