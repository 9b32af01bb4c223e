"""Exact limits of Weierstrass points on curves with two components.

The package works with explicit rational and odd-degree hyperelliptic models
over the rationals and keeps every quantity exact.  Submodules:

``invariants``   integer bookkeeping for a profile (g1, g2, delta)
``curvemodel``   component models, local expansions, Riemann-Roch spaces
``nodalglue``    glued sheaves on the nodal curve and smoothability tests
``lattice``      Smith normal form and multiplicative lattice systems
``ramification`` Wronskians, divisors of functions, limit divisors
``grassmann``    node evaluations, Pluecker vectors, torus orbits
``chains``       semi-stable chain models and twist bookkeeping
"""

from wplimits.invariants import GenusProfile, compute_profile

__all__ = ["GenusProfile", "compute_profile"]
__version__ = "0.1.0"
