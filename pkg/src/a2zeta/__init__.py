"""Representation zeta functions of principal congruence subgroups of
SL3 and SU3 over local rings, computed and cross-checked by several routes."""

__version__ = "0.1.0"
