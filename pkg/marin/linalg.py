"""
Small dense symmetric linear algebra for MARIN

Jacobi eigendecomposition, spectral norms, PSD sampling,
fractional powers and evaluation of matrix words.
"""

import hashlib
from math import sqrt

import logging
DEBUG_R = 15

import numpy as np

from marin.utils.classes import ConvergenceError, DimensionError
from marin.utils.option import OptionalImports, Defaults
import marin.utils.functions as functions

""" Search for optional libraries.  """

try:
    import numba
    OptionalImports.numba = True
except ImportError:
    pass


def _jacobi_sweeps(a, v, tol, max_sweeps):
    """ Cyclic Jacobi rotations, in place.

    Args:
        a (ndarray): symmetric matrix, overwritten, ends up (nearly) diagonal.
        v (ndarray): accumulated rotations, should start as the identity.
        tol (float): absolute threshold on the off-diagonal Frobenius mass.
        max_sweeps (int): maximum number of sweeps.

    Returns:
        (int, float): number of sweeps performed and final off-diagonal mass.
    """

    n = a.shape[0]
    sweep = 0
    while True:
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        off = sqrt(2.0 * off)
        if off <= tol or sweep >= max_sweeps:
            return sweep, off

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c

                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for r in range(n):
                    if r != p and r != q:
                        arp = a[r, p]
                        arq = a[r, q]
                        a[r, p] = c * arp - s * arq
                        a[p, r] = a[r, p]
                        a[r, q] = s * arp + c * arq
                        a[q, r] = a[r, q]
                for r in range(n):
                    vrp = v[r, p]
                    vrq = v[r, q]
                    v[r, p] = c * vrp - s * vrq
                    v[r, q] = s * vrp + c * vrq
        sweep += 1


if OptionalImports.numba:
    _jacobi_kernel = numba.njit(cache=False)(_jacobi_sweeps)
else:
    _jacobi_kernel = _jacobi_sweeps


def _as_array(M):
    """ Return the float64 array behind a matrix-like object.

    Args:
        M (SymMatrix or array-like): input matrix.

    Returns:
        (ndarray): the matrix entries.
    """

    if isinstance(M, SymMatrix):
        return M.entries
    arr = np.asarray(M, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError('Expected a square matrix, got shape {}'.format(arr.shape))
    return arr


def _check_same_dim(*matrices):
    """ Raise DimensionError unless all matrices share the same size. """

    dims = set(_as_array(M).shape[0] for M in matrices)
    if len(dims) > 1:
        raise DimensionError('Matrices of different sizes: {}'.format(sorted(dims)))


def _eigh(arr, tol=None, max_sweeps=None):
    """ Jacobi eigendecomposition of a symmetric array.

    Args:
        arr (ndarray): symmetric matrix.
        tol (float): relative convergence tolerance on the off-diagonal mass,
            if None use Defaults.jacobi_tol (default None).
        max_sweeps (int): maximum number of sweeps, if None use
            Defaults.jacobi_max_sweeps (default None).

    Returns:
        (ndarray, ndarray): eigenvalues sorted descending and eigenvectors as columns.
    """

    if tol is None:
        tol = Defaults.jacobi_tol
    if max_sweeps is None:
        max_sweeps = Defaults.jacobi_max_sweeps

    a = np.array(arr, dtype=np.float64, order='C', copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.float64)

    fnorm = float(np.sqrt(np.sum(a * a)))
    if fnorm == 0.0 or n == 1:
        return np.diag(a).copy(), v

    sweeps, off = _jacobi_kernel(a, v, tol * fnorm, max_sweeps)
    if off > tol * fnorm:
        logging.log(DEBUG_R, 'Jacobi stopped at {:d} sweeps on a {:d}x{:d} matrix'.format(sweeps, n, n))
        raise ConvergenceError(sweeps, off)

    w = np.diag(a).copy()
    order = np.argsort(-w, kind='stable')
    return w[order], v[:, order]


class EigenDecomposition:

    """ Eigenvalues (descending) and orthonormal eigenvectors (columns)
        of a symmetric matrix. """

    __slots__ = ('eigenvalues', 'eigenvectors')

    def __init__(self, eigenvalues, eigenvectors):
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors

    @property
    def lambda_max(self):
        return float(self.eigenvalues[0])

    @property
    def lambda_min(self):
        return float(self.eigenvalues[-1])

    def reconstruct(self):
        """ Rebuild Q diag(w) Q^T.

        Returns:
            (ndarray): the reconstructed matrix.
        """

        q = self.eigenvectors
        return (q * self.eigenvalues) @ q.T

    def top_eigenspace(self, rtol=None):
        """ Orthonormal basis of the eigenspace of the largest eigenvalue,
            eigenvalues within rtol * |lambda_max| of the top one are included.

        Args:
            rtol (float): relative tolerance, if None use
                Defaults.eigenspace_tol (default None).

        Returns:
            (ndarray): basis vectors as columns.
        """

        if rtol is None:
            rtol = Defaults.eigenspace_tol
        lam = self.eigenvalues[0]
        keep = self.eigenvalues >= lam - rtol * abs(lam)
        return self.eigenvectors[:, keep]


class SymMatrix:

    """ Dense real symmetric matrix, symmetrized on construction
        by averaging with its transpose. The entries are read-only. """

    __slots__ = ('_entries', '_psd')

    def __init__(self, entries):
        """ Initialize the matrix.

        Args:
            entries (array-like): N x N real values.
        """

        arr = np.array(entries, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise DimensionError('Expected a non-empty square matrix, got shape {}'.format(arr.shape))
        arr = (arr + arr.T) / 2.0
        arr.flags.writeable = False
        self._entries = arr
        self._psd = None

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))

    @property
    def entries(self):
        return self._entries

    @property
    def dim(self):
        return self._entries.shape[0]

    @property
    def psd_certified(self):
        """ (bool): True if all eigenvalues are above -Defaults.psd_tol
            times the spectral norm. Computed once, on first access. """

        if self._psd is None:
            w, _ = _eigh(self._entries)
            scale = max(abs(w[0]), abs(w[-1]))
            self._psd = bool(w[-1] >= -Defaults.psd_tol * scale)
        return self._psd

    def scaled(self, factor):
        return SymMatrix(self._entries * factor)

    def perturb_identity(self, eps):
        """ Id + eps * M.

        Args:
            eps (float): perturbation size.

        Returns:
            (SymMatrix): the perturbed identity.
        """

        return SymMatrix(np.eye(self.dim) + eps * self._entries)

    def to_dict(self):
        return {'dim': int(self.dim),
                'entries': [float(x) for x in self._entries.ravel()]}

    @classmethod
    def from_dict(cls, data):
        """ Build a matrix from its JSON form, warning on asymmetric input.

        Args:
            data (dict): {"dim": N, "entries": row-major list of N^2 numbers}.

        Returns:
            (SymMatrix): the symmetrized matrix.
        """

        dim = int(data['dim'])
        entries = np.asarray(data['entries'], dtype=np.float64)
        if entries.size != dim * dim:
            raise DimensionError('Expected {:d} entries, found {:d}'.format(dim * dim, entries.size))
        entries = entries.reshape(dim, dim)
        asym = float(np.max(np.abs(entries - entries.T))) if dim > 1 else 0.0
        if asym > 1e-9:
            functions.warn('Input matrix is not symmetric (max deviation {:.3e}), '
                           'averaging with its transpose.'.format(asym))
        return cls(entries)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._entries
        return self._entries.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __hash__(self):
        return hash(self._entries.tobytes())

    def __repr__(self):
        return 'SymMatrix(dim={:d})'.format(self.dim)

    def __getstate__(self):
        return {'entries': self._entries.tolist(), 'psd': self._psd}

    def __setstate__(self, state):
        arr = np.asarray(state['entries'], dtype=np.float64)
        arr.flags.writeable = False
        self._entries = arr
        self._psd = state['psd']


def eigen_sym(M):
    """ Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Args:
        M (SymMatrix or array-like): symmetric input.

    Returns:
        (EigenDecomposition): eigenvalues sorted descending with their eigenvectors.
    """

    w, v = _eigh(_as_array(M))
    return EigenDecomposition(w, v)


def _fix_sign(vec):
    """ Flip a vector so that its largest-magnitude entry is positive. """

    i = int(np.argmax(np.abs(vec)))
    return -vec if vec[i] < 0 else vec


def spectral_norm(M):
    """ Spectral norm sqrt(lambda_max(M^T M)) of any real square matrix,
        together with a maximizing unit vector.

    Args:
        M (array-like): real square matrix, possibly nonsymmetric.

    Returns:
        (float, ndarray): the norm and the top eigenvector of M^T M.
    """

    arr = _as_array(M)
    gram = arr.T @ arr
    w, v = _eigh((gram + gram.T) / 2.0)
    return sqrt(max(float(w[0]), 0.0)), _fix_sign(v[:, 0])


def matrix_power(M, k):
    """ Integer matrix power by repeated squaring.

    Args:
        M (array-like): square matrix.
        k (int): nonnegative exponent.

    Returns:
        (ndarray): M^k.
    """

    arr = _as_array(M)
    if k < 0:
        raise ValueError('Negative matrix power: {:d}'.format(k))
    result = np.eye(arr.shape[0])
    base = arr
    first = True
    while k > 0:
        if k & 1:
            result = base.copy() if first else result @ base
            first = False
        k >>= 1
        if k:
            base = base @ base
    return result


def eval_word(word, A, B):
    """ Evaluate W(A, B) = A^{m_1} B^{n_1} ... A^{m_s} B^{n_s}.

    Args:
        word (Word): the word.
        A (SymMatrix or array-like): first matrix.
        B (SymMatrix or array-like): second matrix.

    Returns:
        (ndarray): the (generally nonsymmetric) product.
    """

    _check_same_dim(A, B)
    a, b = _as_array(A), _as_array(B)
    powers = {}

    def _power(letter, mat, k):
        if (letter, k) not in powers:
            powers[(letter, k)] = matrix_power(mat, k)
        return powers[(letter, k)]

    result = None
    for letter, count in word.runs:
        factor = _power(letter, a if letter == 'A' else b, count)
        result = factor.copy() if result is None else result @ factor
    return result


def rng_for(seed, index=None):
    """ Random numbers generator for a run seed and an optional substream index.
        Substream i of seed s is seeded by SeedSequence([s, i]).

    Args:
        seed (int): run seed.
        index (int): substream (instance or restart) index (default None).

    Returns:
        (numpy.random.Generator): PCG64 generator.
    """

    entropy = int(seed) if index is None else [int(seed), int(index)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def sample_psd(dim, rng_seed, normalize=True, rank=None):
    """ Random PSD matrix G G^T from a Gaussian N x r factor.

    Args:
        dim (int): matrix size.
        rng_seed (int or numpy.random.Generator): seed or generator.
        normalize (bool): if True, rescale to unit spectral norm (default True).
        rank (int): number of columns r of the factor, r < dim gives
            rank-deficient samples, if None use dim (default None).

    Returns:
        (SymMatrix): the sample.
    """

    if dim < 1:
        raise ValueError('Matrix size must be positive.')
    rank = dim if rank is None else int(rank)
    if not 1 <= rank <= dim:
        raise ValueError('Factor rank must be between 1 and {:d}'.format(dim))

    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else rng_for(rng_seed)
    g = rng.standard_normal((dim, rank))
    m = g @ g.T
    m = (m + m.T) / 2.0
    if normalize:
        w, _ = _eigh(m)
        if w[0] > 0:
            m = m / w[0]
    return SymMatrix(m)


def frac_power(M, p):
    """ Fractional power of a PSD matrix, Q diag(w^p) Q^T with eigenvalues
        below Defaults.psd_tol times the largest one clamped at zero.

    Args:
        M (SymMatrix): PSD matrix.
        p (float): nonnegative exponent.

    Returns:
        (SymMatrix): M^p.
    """

    if p < 0:
        raise ValueError('Negative exponent {} not allowed for PSD powers.'.format(p))
    if p == 1:
        return M if isinstance(M, SymMatrix) else SymMatrix(M)
    w, v = _eigh(_as_array(M))
    # clamp rounding noise on null directions
    w = np.where(w > Defaults.psd_tol * max(w[0], 0.0), w, 0.0)
    return SymMatrix((v * w**p) @ v.T)


def commutator(A, B):
    """ AB - BA, skew-symmetric for symmetric A, B. """

    _check_same_dim(A, B)
    a, b = _as_array(A), _as_array(B)
    return a @ b - b @ a


def commutator_min_sv(A, B):
    """ Smallest singular value of AB - BA. For symmetric A, B the commutator
        is skew-symmetric, hence exactly singular in odd dimension, where
        0 is returned without computation.

    Args:
        A (SymMatrix): first matrix.
        B (SymMatrix): second matrix.

    Returns:
        (float): sigma_min(AB - BA).
    """

    c = commutator(A, B)
    if c.shape[0] % 2 == 1:
        return 0.0
    gram = c.T @ c
    w, _ = _eigh((gram + gram.T) / 2.0)
    return sqrt(max(float(w[-1]), 0.0))


def matrix_digest(*matrices):
    """ Content hash of a sequence of matrices.

    Args:
        matrices (SymMatrix or array-like): matrices to hash, order matters.

    Returns:
        (str): hex sha256 digest.
    """

    h = hashlib.sha256()
    for M in matrices:
        arr = np.ascontiguousarray(_as_array(M), dtype=np.float64)
        h.update(str(arr.shape).encode())
        h.update(arr.tobytes())
    return h.hexdigest()


def save_matrix(M, path):
    """ Save a matrix as JSON {"dim": N, "entries": row-major values}.

    Args:
        M (SymMatrix): matrix to save.
        path (string): output file.
    """

    functions.write_json(M.to_dict(), path)


def load_matrix(path):
    """ Load a matrix from JSON, symmetrizing it.

    Args:
        path (string): input file.

    Returns:
        (SymMatrix): the loaded matrix.
    """

    return SymMatrix.from_dict(functions.read_json(path))


if __name__ == "__main__":

    pass
