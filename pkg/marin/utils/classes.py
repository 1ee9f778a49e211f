"""
Auxiliary classes for MARIN
"""

class WordSyntaxError(ValueError):

    """ Raised when a word does not match the letter or block grammar. """


class DimensionError(ValueError):

    """ Raised when matrices of incompatible sizes are combined. """


class ConvergenceError(RuntimeError):

    """ Raised when the Jacobi eigensolver does not converge
        within the maximum number of sweeps. """

    def __init__(self, sweeps, off_norm):
        """ Initialize the error.

        Args:
            sweeps (int): number of sweeps performed.
            off_norm (float): residual off-diagonal Frobenius mass.
        """

        super().__init__('Jacobi eigensolver did not converge after {:d} sweeps '
                         '(off-diagonal mass {:.3e})'.format(sweeps, off_norm))
        self.sweeps = sweeps
        self.off_norm = off_norm


class BudgetError(RuntimeError):

    """ Raised when a full enumeration would exceed its budget. """
