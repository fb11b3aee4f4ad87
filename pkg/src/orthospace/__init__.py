"""Exact tools for orthogonality spaces: rays in K^3 over Q and Q(w), Greechie diagrams, finite OMLs."""

__version__ = "0.1.0"
