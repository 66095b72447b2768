class K3BrauerError(Exception):
    """Root of every exception raised by this library."""


class InvalidInput(K3BrauerError, ValueError):
    """
    An operation was called outside of its domain.

    Raised for things like ``b = 0`` in :math:`\\Lambda_{b,c}`, a
    character that vanishes identically, or an odd lattice handed to
    the F2 machinery.

    """


class DegenerateLattice(InvalidInput):
    """The Gram matrix is singular, so there is no discriminant form."""


class Inconclusive(K3BrauerError):
    """
    A bounded search ran out of room before deciding.

    :param str message: human readable description.
    :param int bound: the bound that was hit.

    This is not a negative answer.  Raising the bound may turn it
    into a definite one.

    """

    def __init__(self, message, bound=None):
        super(Inconclusive, self).__init__(message)
        self.bound = bound


class InvariantViolation(K3BrauerError, AssertionError):
    """An identity that holds by construction did not hold."""
