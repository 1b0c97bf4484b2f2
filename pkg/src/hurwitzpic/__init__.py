"""Integral Picard groups of low-degree Hurwitz stacks, computed exactly."""
__version__ = "0.1.0"
