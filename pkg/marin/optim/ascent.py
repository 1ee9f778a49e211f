"""
Finite-difference gradient ascent for MARIN
"""

import logging
DEBUG_R = 15

import numpy as np


def _central_gradient(fun, x, h):
    """ Central-difference gradient.

    Args:
        fun (function): objective function of a 1d array.
        x (ndarray): evaluation point.
        h (float): difference step.

    Returns:
        (ndarray): the gradient estimate.
    """

    grad = np.empty_like(x)
    for i in range(x.shape[0]):
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        grad[i] = (fun(xp) - fun(xm)) / (2 * h)
    return grad


def _finite_diff_ascent(fun, x0, h=1e-6, step=0.1, shrink=0.5, maxiter=3000,
                        min_step=1e-12, armijo=1e-4):
    """ Maximize a function by gradient ascent with central differences
        and backtracking line search.

    Args:
        fun (function): objective function, takes a 1d array and
            returns a single float value.
        x0 (ndarray): starting point.
        h (float): finite-difference step (default 1e-6).
        step (float): initial line search step (default 0.1).
        shrink (float): backtracking factor (default 0.5).
        maxiter (int): maximum number of iterations (default 3000).
        min_step (float): stop when the accepted step falls below this value
            (default 1e-12).
        armijo (float): sufficient increase constant (default 1e-4).

    Returns:
        (tuple (ndarray, float, int, int)): best point, its value,
            number of iterations and number of restarts (always 0).
    """

    x = np.asarray(x0, dtype=np.float64).copy()
    fx = fun(x)
    t = step
    iters = 0

    while iters < maxiter:

        iters += 1
        grad = _central_gradient(fun, x, h)
        gnorm2 = float(grad @ grad)
        if gnorm2 == 0.0:
            break

        """ Backtrack until sufficient increase. """

        while t >= min_step:
            xn = x + t * grad
            fn = fun(xn)
            if fn >= fx + armijo * t * gnorm2:
                break
            t *= shrink

        if t < min_step:
            logging.log(DEBUG_R, 'Line search stalled at {:.6e}'.format(fx))
            break

        x, fx = xn, fn
        t = min(2 * t, step)

    return x, float(fx), iters, 0


if __name__ == "__main__":

    pass
