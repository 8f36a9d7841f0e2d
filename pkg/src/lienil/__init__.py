"""Exact-arithmetic engine for Lie nilpotency identities of Grassmann
tensor products, multilinear T-ideal inclusions, symmetric-group module
decompositions of proper multilinear quotients, and codimension-sequence
lower bounds."""

__version__ = "0.1.0"
