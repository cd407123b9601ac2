"""Exact computer algebra for Frobenius liftability and F-singularities in characteristic p."""

from __future__ import annotations

__version__ = "0.1.0"
