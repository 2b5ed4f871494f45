"""Galerkin boundary elements for 2-d sound-soft Helmholtz scattering.

Subpackages and modules
-----------------------
specfun          Bessel/Hankel/Airy functions and uniform asymptotics.
circle_spectral  Exact Fourier-multiplier symbols of the boundary operators on the unit circle.
curves, kernels  Boundary parametrisations and layer-potential kernels.
bem              Boundary-element spaces, assembly, solve and projections.
scattering       Incident fields, boundary solves, field reconstruction.
harness, cli     Wavenumber sweeps, verification suite and command line.
"""

__version__ = "0.1.0"
