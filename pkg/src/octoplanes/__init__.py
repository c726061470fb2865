"""Exact composition algebras, Albert algebras, Veronese planes and Lie certificates."""

from __future__ import annotations

__version__ = "0.1.0"
