"""Exception types shared across the library.

Three failure classes are distinguished so that callers (and the CLI) can
map them to distinct exit behaviour:

* ``DomainError``   -- the inputs are physically meaningless (negative mass,
  energy above a reflection-only barrier, ...).
* ``RegimeError``   -- the inputs are valid but outside the validity regime
  of the requested closed form (e.g. a far-field formula evaluated too close
  to the classical turning point).
* ``ConvergenceError`` -- an iterative numerical procedure (quadrature,
  numerical differentiation, grid refinement) failed its own accuracy check.
"""


class DomainError(ValueError):
    """Raised when an argument lies outside the physical domain."""


class RegimeError(ValueError):
    """Raised when an argument is valid but outside a formula's regime."""


class ConvergenceError(RuntimeError):
    """Raised when a numerical procedure cannot meet its accuracy target."""
