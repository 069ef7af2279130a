"""Stateful security protocol analyser."""

__version__ = "0.1.0"
