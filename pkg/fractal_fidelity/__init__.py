"""Fractal fidelity toolkit for the quantum sawtooth map"""

__version__ = "1.0.0"
