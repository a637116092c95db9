"""Explicit bounds for unramified Brauer groups and genus sizes of curves over Q."""

__version__ = "0.1.0"
