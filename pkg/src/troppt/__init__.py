"""troppt: exact combinatorics of logarithmic stable-pairs spaces on toric
surfaces.

Subpackages cover the lattice/cone/fan kernel, secondary fans and tropical
curves, the fan of the logarithmic linear system, Minkowski-weight
intersection theory, and Euler-Satake characteristics."""

__version__ = "0.1.0"
