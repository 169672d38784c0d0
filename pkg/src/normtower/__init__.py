"""Combinatorial skeleton of the equivariant norm: double cosets, G-sets,
coinduction decompositions, orbit posets, tower and fracture planning."""

__version__ = "0.1.0"
