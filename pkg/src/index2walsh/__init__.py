"""Closed-form Walsh spectra of Tr(x^((q-1)/l^2)) in the index-2 case."""

from .params import KClass, Params, validate_instance

__version__ = "0.1.0"

__all__ = ["KClass", "Params", "validate_instance", "__version__"]
