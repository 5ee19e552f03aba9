"""
hvsim: hidden-variables CHSH simulation toolkit.

Runs Bell's d=2 dispersion-free model, the d=4 local non-contextual CHSH
evaluator and the factored separable model next to an exact two-qubit
quantum oracle, and checks numerically that the same CHSH operator receives
the bound 2*sqrt(2) or 2 depending on how the hidden-variables formula is
applied.
"""

__version__ = "0.1.0"
