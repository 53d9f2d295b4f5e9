"""Exception hierarchy shared across the package.

Three failure families are distinguished so callers (and the CLI exit-code
mapping) can react differently:

* ``DomainError`` -- an argument is outside the mathematical domain of an
  operation (composite modulus, coordinate outside the unit cube, zero
  denominator, ...).
* ``AdmissibilityError`` -- a structural divisibility requirement fails,
  e.g. the subgroup construction needs ``2d | n - 1``.
* ``SizeLimitError`` -- a deliberately guarded brute-force path was asked
  to run at a size it refuses.
"""

__all__ = ["DomainError", "AdmissibilityError", "SizeLimitError"]


class DomainError(ValueError):
    """An argument lies outside an operation's mathematical domain."""


class AdmissibilityError(ValueError):
    """A divisibility / admissibility precondition does not hold."""


class SizeLimitError(RuntimeError):
    """A guarded brute-force computation exceeds its size cap."""
