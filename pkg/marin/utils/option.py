"""
Optional imports and default settings for MARIN
"""

class OptionalImports:

    """ Static container to keep track of optional
        libraries and their imports """

    numba = False


class Defaults:

    """ Static container for library-wide default parameters.
        Operations take these as keyword defaults, change them
        here to affect a whole session. """

    """ Words. """

    max_word_length = 64

    """ Eigensolver. """

    jacobi_tol = 1e-14
    jacobi_max_sweeps = 100
    psd_tol = 1e-10

    """ Verification thresholds. """

    violation_tol = 1e-8
    noise_tol = 1e-10
    eigenspace_tol = 1e-8
    commutator_threshold = 1e-8

    """ Search and certification. """

    seed = 1
    restarts = 64
    max_iters = 3000
    certify_k = 3
    certify_k_max = 6

    """ Parallelism. """

    threads = 1
