"""Sign signatures of Weyl group representations, exact throughout."""

__version__ = "0.1.0"

__all__ = ["__version__"]
