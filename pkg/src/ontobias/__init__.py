"""Bias audit toolchain for OWL ontologies."""

__version__ = "0.1.0"
