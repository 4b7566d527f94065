"""Exception hierarchy.

Input problems derive from :class:`InputError` (also a ``ValueError``),
numerical or feasibility failures from :class:`NumericError`.  The CLI maps
the two families onto exit codes 2 and 3.
"""

from __future__ import annotations


class MarkovCyclesError(Exception):
    """Base class for every error raised by this package."""


class InputError(MarkovCyclesError, ValueError):
    """An argument violates a precondition."""


class NumericError(MarkovCyclesError, ArithmeticError):
    """A computation could not produce a meaningful result."""


class NotSquare(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class TooSmall(InputError):
    pass


class NonPositiveRate(InputError):
    def __init__(self, i: int, j: int, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"rate q[{i},{j}] = {value} must be > 0")


class NegativeRate(InputError):
    def __init__(self, i: int, j: int, value):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"rate q[{i},{j}] = {value} must be >= 0")


class BadEdge(InputError):
    pass


class BadIndex(InputError):
    pass


class BadStep(InputError):
    pass


class BadPower(InputError):
    pass


class NotHamiltonian(InputError):
    pass


class NotInSpace(InputError):
    """Matrix is not antisymmetric with zero row sums."""


class BadHorizon(InputError):
    pass


class EmptyTrajectory(InputError):
    pass


class ParseError(InputError):
    pass


class SingularSystem(NumericError):
    pass


class ReconstructionResidual(NumericError):
    pass


class ReversibleRing(NumericError):
    """The ring 1 -> 2 -> ... -> N -> 1 satisfies Kolmogorov's criterion."""


class ZeroDenominator(NumericError):
    pass


class NonPositive(NumericError):
    def __init__(self, n: int, value):
        self.n, self.value = n, value
        super().__init__(f"pi[{n}] = {value} is not positive")


class Infeasible(NumericError):
    pass
