"""Legendrian link invariants over finite fields: Chekanov-Eliashberg DGAs of
plat fronts, augmentation counts, normal rulings, and the cardinality of the
augmentation category."""

__version__ = "0.1.0"
