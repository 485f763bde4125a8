"""Certified finite quotients separating elements of linear groups over localized polynomial rings."""

__version__ = "0.1.0"
