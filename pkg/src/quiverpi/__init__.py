"""quiverpi: polynomial identities of block-upper-triangular matrix algebras.

Noncommutative polynomials over exact scalars, full quivers realized as
concrete matrix algebras, identity testing by exhaustive evaluation, the
multi-stage hiking procedure, and characteristic-coefficient machinery.
"""

__version__ = "0.1.0"
