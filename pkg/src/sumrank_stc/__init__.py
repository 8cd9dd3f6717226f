"""Multiblock space-time codes from sum-rank metric codes, with exact sequential ML decoding.

Modules:
    galois   finite fields F_{p^m} and F_p linear algebra
    sumrank  sum-rank weights, distances and bounds
    lrs      linearized Reed-Solomon codes
    lattice  Gaussian/Eisenstein/PSK constellations and circle enumeration
    stcode   SRA/SRB space-time encoders and rate descriptors
    channel  Rayleigh block fading with per-trial seeding
    decoder  exhaustive and stack (best-first) ML decoders
    cli      command-line harness
"""
from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
