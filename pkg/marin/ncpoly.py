"""
Noncommutative polynomial expansions for MARIN

Exact expansion of products (1 + eps A)^{m_1} (1 + eps B)^{n_1} ... as
polynomials in two noncommuting symmetric symbols A and B, truncated by total
degree (the power of eps), and the bookkeeping needed to compare the squared
norms of a word and of its ordered counterpart order by order.
"""

import itertools
from math import comb
from fractions import Fraction
from collections import namedtuple, Counter

import numpy as np

from marin.matword import ordered
from marin.linalg import _as_array, _check_same_dim


class NcPolynomial:

    """ Polynomial in two noncommuting symbols with exact integer
        (or rational) coefficients, truncated at a total degree.
        Monomials are letter strings over {A, B}, the empty string
        being the identity. """

    __slots__ = ('_terms', '_order')

    def __init__(self, terms=None, order=0):
        """ Initialize the polynomial, zero coefficients and monomials
            above the truncation order are dropped.

        Args:
            terms (dict): monomial (str) -> coefficient (int or Fraction).
            order (int): truncation order d (default 0).
        """

        if order < 0:
            raise ValueError('Truncation order must be nonnegative.')
        self._order = int(order)
        self._terms = {}
        for mono, coeff in (terms or {}).items():
            if mono.strip('AB') != '':
                raise ValueError('Invalid monomial {!r}'.format(mono))
            if coeff != 0 and len(mono) <= self._order:
                self._terms[mono] = coeff

    @classmethod
    def identity(cls, order=0):
        return cls({'': 1}, order)

    @classmethod
    def monomial(cls, letters, coeff=1, order=None):
        return cls({letters: coeff}, len(letters) if order is None else order)

    @property
    def order(self):
        return self._order

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def is_zero(self):
        return len(self._terms) == 0

    def coeff(self, mono):
        """ Coefficient of a monomial, 0 if absent. """

        return self._terms.get(mono, 0)

    def monomials(self):
        """ Monomials sorted by degree and then lexicographically. """

        return sorted(self._terms, key=lambda x: (len(x), x))

    def degree_part(self, k):
        """ Homogeneous component of degree k. """

        return NcPolynomial({m: c for m, c in self._terms.items() if len(m) == k}, self._order)

    def with_order(self, order):
        return NcPolynomial(self._terms, order)

    def transpose(self):
        """ Formal transpose: each monomial is reversed
            (valid for symmetric symbols). """

        return NcPolynomial({m[::-1]: c for m, c in self._terms.items()}, self._order)

    def _combine(self, other, sign):
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + sign * c
        return NcPolynomial(terms, max(self._order, other._order))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return NcPolynomial({m: -c for m, c in self._terms.items()}, self._order)

    def __mul__(self, other):
        if isinstance(other, NcPolynomial):
            return multiply(self, other, min(self._order, other._order))
        if isinstance(other, (int, Fraction)):
            return NcPolynomial({m: other * c for m, c in self._terms.items()}, self._order)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, NcPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __iter__(self):
        for m in self.monomials():
            yield m, self._terms[m]

    def __len__(self):
        return len(self._terms)

    def __repr__(self):
        return 'NcPolynomial({!r}, order={:d})'.format(format_poly(self), self._order)

    def __str__(self):
        return format_poly(self)

    def to_json(self):
        """ JSON form, big integers encoded as strings. """

        return [{'monomial': m, 'coeff': str(c)} for m, c in self]

    @classmethod
    def from_json(cls, data, order):
        terms = {}
        for item in data:
            coeff = Fraction(item['coeff'])
            terms[item['monomial']] = int(coeff) if coeff.denominator == 1 else coeff
        return cls(terms, order)


def format_poly(poly):
    """ Text form sorted by (degree, letters), e.g. '1*AA + 3*AB + 1*BA + 1*BB'.

    Args:
        poly (NcPolynomial): polynomial to print.

    Returns:
        (str): text form, '0' for the zero polynomial.
    """

    out = ''
    for i, (mono, coeff) in enumerate(poly):
        name = mono if mono else '1'
        if i == 0:
            out = '{}*{}'.format(coeff, name)
        elif coeff < 0:
            out += ' - {}*{}'.format(-coeff, name)
        else:
            out += ' + {}*{}'.format(coeff, name)
    return out if out else '0'


def multiply(left, right, order=None):
    """ Product of two polynomials, truncated at the given order.

    Args:
        left (NcPolynomial): left factor.
        right (NcPolynomial): right factor.
        order (int): truncation order, if None the sum of both orders (default None).

    Returns:
        (NcPolynomial): the truncated product.
    """

    if order is None:
        order = left.order + right.order
    terms = {}
    for ml, cl in left.terms.items():
        for mr, cr in right.terms.items():
            if len(ml) + len(mr) <= order:
                key = ml + mr
                terms[key] = terms.get(key, 0) + cl * cr
    return NcPolynomial(terms, order)


def expand_word(word, order):
    """ Degree-<=d truncation of prod_i (1 + eps A)^{m_i} (1 + eps B)^{n_i},
        the power of eps being the monomial degree. The coefficient of a
        monomial counts the ways to pick its letters, in order, from the
        letters of the word.

    Args:
        word (Word): the word.
        order (int): truncation order d.

    Returns:
        (NcPolynomial): the expansion.
    """

    if order < 0:
        raise ValueError('Truncation order must be nonnegative.')

    terms = {'': 1}
    for letter, count in word.runs:
        new = {}
        for mono, coeff in terms.items():
            for j in range(0, min(count, order - len(mono)) + 1):
                key = mono + letter * j
                new[key] = new.get(key, 0) + coeff * comb(count, j)
        terms = new
    return NcPolynomial(terms, order)


def brute_force_coeffs(word, order):
    """ Same as expand_word, by enumerating position subsets.

    Args:
        word (Word): the word.
        order (int): truncation order d.

    Returns:
        (NcPolynomial): the expansion.
    """

    letters = word.letters
    counts = Counter()
    for k in range(0, order + 1):
        for positions in itertools.combinations(range(len(letters)), k):
            counts[''.join(letters[p] for p in positions)] += 1
    return NcPolynomial(dict(counts), order)


Coefficients = namedtuple('Coefficients',
                          ['a1', 'a2', 'a3', 'a4', 'a5', 'a6',
                           'a7', 'a8', 'a9', 'a10', 'a11', 'a12'])

""" Monomials read by extract_coeffs, in the order of a1 ... a12. """

COEFF_MONOMIALS = ('AA', 'AB', 'BA', 'BB',
                   'AAA', 'AAB', 'ABA', 'BAA', 'ABB', 'BAB', 'BBA', 'BBB')


def extract_coeffs(word):
    """ Combinatorial coefficients a1 ... a12 of the second and third order
        terms X2 = a1 AA + a2 AB + a3 BA + a4 BB and
        X3 = a5 AAA + a6 AAB + a7 ABA + a8 BAA + a9 ABB + a10 BAB + a11 BBA + a12 BBB.

    Args:
        word (Word): the word.

    Returns:
        (Coefficients): named tuple a1 ... a12.
    """

    poly = expand_word(word, 3)
    return Coefficients(*[poly.coeff(m) for m in COEFF_MONOMIALS])


BilinearTerm = namedtuple('BilinearTerm', ['coeff', 'left', 'right'])
BilinearTerm.__doc__ = """ coeff * <P u, Q u> with P = left, Q = right. """


def squared_norm_expansion(word, order=3):
    """ Expansion of ||X_eps u||^2 by powers of eps, X_eps being the word
        evaluated at (Id + eps A, Id + eps B). Each order is a list of
        bilinear terms:
            0: <u, u>
            1: 2<X1 u, u>
            2: 2<X2 u, u> + <X1 u, X1 u>
            3: 2<X3 u, u> + 2<X2 u, X1 u>

    Args:
        word (Word): the word.
        order (int): highest order, at most 3 (default 3).

    Returns:
        (dict): order -> list of BilinearTerm.
    """

    if order > 3:
        raise ValueError('Squared norm expansions are only available up to third order.')
    if order < 0:
        raise ValueError('Truncation order must be nonnegative.')

    poly = expand_word(word, order)
    x = [poly.degree_part(k).with_order(k) for k in range(order + 1)]
    one = NcPolynomial.identity(0)

    layout = {0: [BilinearTerm(1, one, one)],
              1: [BilinearTerm(2, x[min(1, order)], one)],
              2: [BilinearTerm(2, x[min(2, order)], one),
                  BilinearTerm(1, x[min(1, order)], x[min(1, order)])],
              3: [BilinearTerm(2, x[min(3, order)], one),
                  BilinearTerm(2, x[min(2, order)], x[min(1, order)])]}

    return {k: layout[k] for k in range(order + 1)}


def quadratic_form(terms):
    """ Single polynomial M with <M u, u> equal to a sum of bilinear terms,
        using <P u, Q u> = <Q^T P u, u>.

    Args:
        terms (list of BilinearTerm): the terms.

    Returns:
        (NcPolynomial): the quadratic form polynomial.
    """

    total = NcPolynomial({}, 0)
    for term in terms:
        prod = multiply(term.right.transpose(), term.left)
        total = total + term.coeff * prod
    return total


def canonical_form(poly):
    """ Merge every monomial with its reversal. Since <M u, u> = <M^T u, u>
        for symmetric symbols, two quadratic forms agree for all symmetric
        A, B and vectors u when their canonical forms are equal.

    Args:
        poly (NcPolynomial): quadratic form polynomial.

    Returns:
        (NcPolynomial): canonical representative.
    """

    terms = {}
    for mono, coeff in poly.terms.items():
        key = min(mono, mono[::-1])
        terms[key] = terms.get(key, 0) + coeff
    return NcPolynomial(terms, poly.order)


def order_difference(word, order):
    """ Quadratic form of ||Z_eps u||^2 - ||X_eps u||^2 at one power of eps,
        Z_eps being the ordered word and X_eps the word itself.

    Args:
        word (Word): the word.
        order (int): power of eps, between 0 and 3.

    Returns:
        (NcPolynomial): raw (not canonicalized) difference.
    """

    z = squared_norm_expansion(ordered(word), order)[order]
    x = squared_norm_expansion(word, order)[order]
    return quadratic_form(z) - quadratic_form(x)


def cancels_to_order(word, order=2):
    """ Exact check that the squared norm expansions of a word and of its
        ordered counterpart agree up to the given power of eps.

    Args:
        word (Word): the word.
        order (int): highest power of eps to check (default 2).

    Returns:
        (bool): True if every difference canonicalizes to zero.
    """

    return all(canonical_form(order_difference(word, k)).is_zero
               for k in range(order + 1))


def third_order_polynomial(word):
    """ Canonical ε^3 difference ||Z_eps u||^2 - ||X_eps u||^2.

    Args:
        word (Word): the word.

    Returns:
        (NcPolynomial): canonical third order polynomial.
    """

    return canonical_form(order_difference(word, 3))


def _monomial_matrix(mono, a, b, cache):
    """ Matrix product of a monomial, memoized on prefixes. """

    if mono in cache:
        return cache[mono]
    if mono == '':
        res = np.eye(a.shape[0])
    else:
        prefix = _monomial_matrix(mono[:-1], a, b, cache)
        res = prefix @ (a if mono[-1] == 'A' else b)
    cache[mono] = res
    return res


def substitute(poly, A, B):
    """ Evaluate a polynomial at matrices A, B.

    Args:
        poly (NcPolynomial): the polynomial.
        A (SymMatrix or array-like): value of A.
        B (SymMatrix or array-like): value of B.

    Returns:
        (ndarray): sum of coefficient times monomial product.
    """

    _check_same_dim(A, B)
    a, b = _as_array(A), _as_array(B)
    cache = {}
    result = np.zeros_like(a)
    for mono, coeff in poly:
        result = result + float(coeff) * _monomial_matrix(mono, a, b, cache)
    return result


def evaluate_quadratic(poly, A, B, u):
    """ <M u, u> for the polynomial M evaluated at A, B.

    Args:
        poly (NcPolynomial): quadratic form polynomial.
        A (SymMatrix or array-like): value of A.
        B (SymMatrix or array-like): value of B.
        u (ndarray): vector.

    Returns:
        (float): the quadratic form.
    """

    u = np.asarray(u, dtype=np.float64)
    return float(u @ (substitute(poly, A, B) @ u))


def evaluate_bilinear(terms, A, B, u):
    """ Sum of coeff * <P u, Q u> over bilinear terms, evaluated directly.

    Args:
        terms (list of BilinearTerm): the terms.
        A (SymMatrix or array-like): value of A.
        B (SymMatrix or array-like): value of B.
        u (ndarray): vector.

    Returns:
        (float): the value.
    """

    u = np.asarray(u, dtype=np.float64)
    total = 0.0
    for term in terms:
        pu = substitute(term.left, A, B) @ u
        qu = substitute(term.right, A, B) @ u
        total += float(term.coeff) * float(pu @ qu)
    return total


if __name__ == "__main__":

    pass
