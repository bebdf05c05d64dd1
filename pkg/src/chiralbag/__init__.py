"""Boundary heat-kernel coefficients for Dirac operators with chiral bag
boundary conditions: closed-form universal constants, direct spectral
verification on the disc/ball, and per-mode cylinder kernel checks."""

from .coefficients import (a1_eta_ball, ball_heat_coefficients,
                           eta_constants, universal_constants)

__all__ = ["universal_constants", "eta_constants",
           "ball_heat_coefficients", "a1_eta_ball"]

__version__ = "0.1.0"
