"""Braid words, braided Seifert surfaces, plumbing, and link-invariant oracles."""

__version__ = "0.1.0"
