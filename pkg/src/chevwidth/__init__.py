"""chevwidth: explicit commutator decompositions in Chevalley groups.

Over a commutative ring of stable rank 1 every element of the elementary
Chevalley group E(Phi, R) is a product of a few commutators; this package
constructs such factorizations explicitly and checks them in a faithful
matrix representation.
"""

__version__ = "0.1.0"
