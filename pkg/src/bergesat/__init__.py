"""Berge-F saturation: constructions, containment, completion and tight-path reduction."""

__version__ = "0.1.0"
