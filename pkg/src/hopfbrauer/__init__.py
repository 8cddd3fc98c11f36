"""Exact computations with Hopf algebras in braided categories of modules.

Structures are given by their structure maps over Q or a prime field, axioms
are checked by evaluating string diagrams, and Galois objects over braided
Hopf algebras are constructed, compared and classified.
"""

from .exact import FieldSpec, Matrix

__all__ = ["FieldSpec", "Matrix"]
__version__ = "0.1.0"
