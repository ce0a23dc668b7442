"""Diffusion, evolution and fragility metrics for scripted GUI test suites
in Android git repositories."""

__version__ = "0.1.0"
