"""HTTP service wrapping the core numerics."""

from .app import create_app

__all__ = ["create_app"]
