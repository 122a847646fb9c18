"""torsionfields: fields generated by elliptic-curve torsion points.

Finite-field models (torsion bases, Weil pairings, Frobenius matrices,
generator-set theorems), exact classification of the 3- and 4-torsion fields
of rational curves, and a reduction-mod-many-primes degree oracle.
"""

__version__ = "0.1.0"
