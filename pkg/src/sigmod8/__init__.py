"""Exact computation of signature-mod-8 invariants.

Arf and Brown-Kervaire invariants of quadratic enhancements over Z2,
van der Blij / Morita identities for integral forms, boundary linking
forms, algebraic Pontryagin squares for symmetric complexes, and
Wall-non-additivity signatures of surface-bundle monodromy data.
"""

__version__ = "0.1.0"
