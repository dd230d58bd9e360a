"""Massey products, boundary cohomology bookkeeping and PL embeddings for
highly connected non-formal manifolds."""

__version__ = "0.1.0"
