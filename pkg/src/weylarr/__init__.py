"""Root systems, Weyl arrangements and their codimension-two restrictions."""

__version__ = "0.1.0"
