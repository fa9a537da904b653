"""Necklace-generated nerves of enriched categories, computed exactly."""

__version__ = "0.1.0"
