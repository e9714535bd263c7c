"""Fidelity series, fractal-dimension estimation and phase-space tomography"""
