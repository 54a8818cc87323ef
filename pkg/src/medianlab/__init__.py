"""Finite models of median algebras, coarse medians, cocycle induction and
random-walk drift on groups acting on graphs."""

__version__ = "0.1.0"
