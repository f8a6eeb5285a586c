"""Exact construction and certification of faithful linear representations
of right-angled Artin groups, free-by-cyclic groups and braid groups."""

__version__ = "0.1.0"
