"""Numerical construction of pulsating travelling fronts in periodic KPP media."""

__version__ = "0.1.0"
