"""Absolute (permutable) primes: digit filters, compositeness certificates and searches."""

__version__ = "0.1.0"
