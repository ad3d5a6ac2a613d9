"""Simulation of public-key encryption with publicly-verifiable deletion.

Subpackages: ``qstate`` (sparse and dense quantum states), ``primitives``
(one-way functions, PKE, commitments, state generators), ``pvd`` (the
compiler and its algorithms) and ``harness`` (security experiments).
"""
__version__ = "0.1.0"
