"""
Tree-structured Parzen Estimators optimization for MARIN
"""

import logging
DEBUG_R = 15

from math import inf
import operator

import numpy as np

import optuna
from optuna.samplers import TPESampler

optuna.logging.set_verbosity(optuna.logging.WARNING)


class Objective:

    """ Objective function class for Optuna, one bounded
        float parameter per entry of the search vector. """

    def __init__(self, size, bound, obj_func):
        """ Initialize the objective object.

        Args:
            size (int): number of parameters.
            bound (float): parameters are searched in [-bound, bound].
            obj_func (function): objective function; takes a 1d array and
                returns a single float value to be maximized.
        """

        self.size = size
        self.bound = bound
        self.obj_func = obj_func
        self.best_x = None
        self._x = None

    def __call__(self, trial):
        """ Runs a single instance of the objective function evaluation.

        Args:
            trial (optuna.Trial): the current trial.

        Returns:
            score (float): the objective function result on the current trial.
        """

        self._x = np.array([trial.suggest_float('x{:d}'.format(i), -self.bound, self.bound)
                            for i in range(self.size)])
        score = self.obj_func(self._x)

        logging.log(DEBUG_R, 'Score: {:.6e}'.format(score))

        return score

    def callback(self, study, trial):
        """ Stores the best point.

        Args:
            study (optuna.Study): the study to interrupt.
            trial (optuna.Trial): the current trial.
        """

        if study.best_trial.number == trial.number:
            self.best_x = self._x


class EarlyStoppingCallback:

    """ Early stopping callback for Optuna. """

    def __init__(self, patience=50, tolerance=1e-10, direction='maximize'):
        """ Initialize early stopping.

        Args:
            patience (int): number of rounds to wait after reaching the plateau
                before stopping the study (default 50).
            tolerance (float): solution improvement tolerance (default 1e-10).
            direction (str): direction of the optimization, it can be
                either 'minimize' or 'maximize' in accordance
                to Optuna's format (default 'maximize').
        """

        self.patience = patience
        self._iter = 0

        if direction == 'minimize':
            self._operator = operator.lt
            self.tolerance = -tolerance
            self._score = inf
        elif direction == 'maximize':
            self._operator = operator.gt
            self.tolerance = tolerance
            self._score = -inf
        else:
            raise ValueError('Invalid direction: {}'.format(direction))

    def __call__(self, study, trial):
        """ Checks if the study needs to be stopped or can continue.

        Args:
            study (optuna.Study): the study to interrupt.
            trial (optuna.Trial): the current trial.
        """

        if self._operator(study.best_value, self._score + self.tolerance):
            self._iter = 0
            self._score = study.best_value
        else:
            self._iter += 1

        if self._iter >= self.patience:
            study.stop()


def _optuna_tpe(obj_func, size, bound=3.0, n_candidates=500,
                patience=50, tol=1e-10, seed=None):
    """ Tree-structured Parzen Estimators maximization with Optuna.

    Args:
        obj_func (function): objective function; takes a 1d array and
            returns a single float value.
        size (int): number of parameters.
        bound (float): parameters are searched in [-bound, bound] (default 3).
        n_candidates (int): maximum number of trials (default 500).
        patience (int): number of rounds to wait after reaching the plateau
            before stopping the study (default 50).
        tol (float): solution improvement tolerance (default 1e-10).
        seed (int): seed for the sampler (default None).

    Returns:
        (tuple (ndarray, float, int, int)): best point, its value,
            number of trials and number of restarts (always 0).
    """

    """ Set Objective function. """

    objective = Objective(size, bound, obj_func)

    """ Set Early stopping. """

    early_stopping = EarlyStoppingCallback(patience=patience, tolerance=tol,
                                           direction='maximize')

    """ Run Optuna study. """

    study = optuna.create_study(sampler=TPESampler(seed=seed), direction='maximize')
    study.optimize(objective, n_trials=n_candidates,
                   callbacks=[objective.callback, early_stopping])

    if len(study.trials) < n_candidates:
        logging.log(DEBUG_R, 'Plateau reached after {:d} trials'.format(len(study.trials)))
    else:
        logging.log(DEBUG_R, 'Exhausted all {:d} trials'.format(n_candidates))

    return objective.best_x, float(study.best_value), len(study.trials), 0


if __name__ == "__main__":

    pass
