"""
Nelder-Mead simplex minimization for MARIN

Based on
Nelder, J.A.; Mead, R. (1965). "A simplex method for function minimization".
The Computer Journal. 7 (4): 308-313. doi:10.1093/comjnl/7.4.308.
"""

import logging
DEBUG_R = 15

import numpy as np


def _initial_simplex(x0, step):
    """ Build a simplex around a starting point, one axis step per vertex.

    Args:
        x0 (ndarray): starting point.
        step (float): edge length along each axis.

    Returns:
        (ndarray): (N+1) x N array of vertices.
    """

    n = x0.shape[0]
    simplex = np.tile(x0, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += step
    return simplex


def _nelder_mead(loss_fun, x0, step=0.1, maxiter=3000, xtol=1e-10, ftol=1e-14,
                 reflection=1.0, expansion=2.0, contraction=0.5, shrink=0.5,
                 max_restarts=5):
    """ Nelder-Mead minimization with restarts on simplex collapse.
        When the simplex shrinks below tolerance it is rebuilt around the
        best vertex with the initial step, until a restart fails to improve
        the best value or the iterations are exhausted.

    Args:
        loss_fun (function): objective function, takes a 1d array and
            returns a single float value.
        x0 (ndarray): starting point.
        step (float): initial simplex edge length (default 0.1).
        maxiter (int): maximum number of iterations (default 3000).
        xtol (float): simplex diameter below which it is considered collapsed
            (default 1e-10).
        ftol (float): spread of vertex values below which the simplex is
            considered collapsed (default 1e-14).
        reflection (float): reflection coefficient (default 1).
        expansion (float): expansion coefficient (default 2).
        contraction (float): contraction coefficient (default 0.5).
        shrink (float): shrink coefficient (default 0.5).
        max_restarts (int): maximum number of restarts (default 5).

    Returns:
        (tuple (ndarray, float, int, int)): best point, its value,
            number of iterations and number of restarts.
    """

    x0 = np.asarray(x0, dtype=np.float64)
    simplex = _initial_simplex(x0, step)
    fvals = np.array([loss_fun(x) for x in simplex])

    iters = 0
    restarts = 0
    last_restart_value = np.inf

    while iters < maxiter:

        order = np.argsort(fvals, kind='stable')
        simplex, fvals = simplex[order], fvals[order]

        """ Check for collapse. """

        diameter = np.max(np.abs(simplex[1:] - simplex[0]))
        spread = fvals[-1] - fvals[0]
        if diameter <= xtol * (1 + np.max(np.abs(simplex[0]))) or spread <= ftol * (1 + abs(fvals[0])):
            if restarts >= max_restarts or fvals[0] >= last_restart_value - ftol * (1 + abs(fvals[0])):
                break
            logging.log(DEBUG_R, 'Simplex collapsed at {:.6e}, restarting'.format(fvals[0]))
            last_restart_value = fvals[0]
            simplex = _initial_simplex(simplex[0].copy(), step)
            fvals = np.array([fvals[0]] + [loss_fun(x) for x in simplex[1:]])
            restarts += 1
            continue

        iters += 1
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]

        """ Reflect. """

        xr = centroid + reflection * (centroid - worst)
        fr = loss_fun(xr)

        if fr < fvals[0]:

            """ Expand. """

            xe = centroid + expansion * (xr - centroid)
            fe = loss_fun(xe)
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
            continue

        if fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
            continue

        """ Contract, outside if the reflection improved on the worst vertex. """

        if fr < fvals[-1]:
            xc = centroid + contraction * (xr - centroid)
        else:
            xc = centroid + contraction * (worst - centroid)
        fc = loss_fun(xc)
        if fc < min(fr, fvals[-1]):
            simplex[-1], fvals[-1] = xc, fc
            continue

        """ Shrink towards the best vertex. """

        for i in range(1, simplex.shape[0]):
            simplex[i] = simplex[0] + shrink * (simplex[i] - simplex[0])
            fvals[i] = loss_fun(simplex[i])

    best = int(np.argmin(fvals))
    return simplex[best].copy(), float(fvals[best]), iters, restarts


if __name__ == "__main__":

    pass
