"""Executable law checking for uncertainty monads on finite domains.

Functions are tables over enumerated domains, distributions carry exact
rationals, and every pointwise-equality statement in the catalog becomes
a finite, decidable scan with least-counterexample reporting.
"""

__version__ = "0.1.0"
