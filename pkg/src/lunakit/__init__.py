"""Spherical systems, wonderful varieties and the normality of spherical nilpotent orbit closures."""
from __future__ import annotations

__version__ = "0.1.0"
