"""Prescribed arc graphs of compact surfaces: arcs, unicorns, witnesses, audits."""

__version__ = "0.1.0"
