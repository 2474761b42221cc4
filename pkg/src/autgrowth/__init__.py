"""Automorphic growth: orbit enumeration and orbit invariants for several group families.

Modules:
    words              free group words, cyclic words and canonical rotations
    growth             growth tables, ball enumeration, orbit partitions
    free_abelian       Z^r under GL_r(Z)
    heisenberg         the integral Heisenberg group and its automorphic sandwich
    virtually_abelian  presentation data, sign dichotomy, Klein bottle, Z^r by C_2^r
    free_group         Whitehead minimization and the exponent-word family
    thompson           tree pairs, revealing pairs, decoration maps, T and V invariants
    vgen               explicit words over a fixed generating pair of V
    transducer         initial transducers and their algebra
    cli                command line entry point
"""
from __future__ import annotations

__version__ = "0.1.0"
