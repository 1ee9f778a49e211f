"""
Matrix words for MARIN

A word is a product A^{m_1} B^{n_1} ... A^{m_s} B^{n_s} of powers of two
matrices, stored as its tuple of exponent blocks (m_1, n_1), ..., (m_s, n_s).
"""

import re
import itertools

from marin.utils.classes import WordSyntaxError
from marin.utils.option import Defaults

_LETTERS = re.compile(r'[AB]+')
_BLOCK = re.compile(r'([AB])\^([0-9]+)')


def _merge_runs(runs):
    """ Merge adjacent runs of the same letter and drop empty ones.

    Args:
        runs (iterable of (str, int)): letter runs.

    Returns:
        (list of (str, int)): merged runs.
    """

    merged = []
    for letter, count in runs:
        if count < 0:
            raise ValueError('Negative exponent in word: {:d}'.format(count))
        if count == 0:
            continue
        if merged and merged[-1][0] == letter:
            merged[-1] = (letter, merged[-1][1] + count)
        else:
            merged.append((letter, count))
    return merged


def _runs_to_blocks(runs):
    """ Convert merged letter runs into canonical (m_i, n_i) blocks.

    Args:
        runs (list of (str, int)): merged, alternating letter runs.

    Returns:
        (tuple of (int, int)): canonical blocks.
    """

    blocks = []
    i = 0
    while i < len(runs):
        letter, count = runs[i]
        if letter == 'B':
            # only possible for the very first run: m_1 = 0
            blocks.append((0, count))
            i += 1
            continue
        nxt = runs[i + 1][1] if i + 1 < len(runs) else 0
        blocks.append((count, nxt))
        i += 2
    return tuple(blocks)


class Word:

    """ Immutable matrix word in canonical block form. """

    __slots__ = ('_blocks',)

    def __init__(self, blocks):
        """ Build a word from exponent blocks, canonicalizing them:
            zero exponents are dropped and adjacent runs of the same
            letter merged, so only m_1 and n_s may be zero.

        Args:
            blocks (iterable of (int, int)): exponent pairs (m_i, n_i).
        """

        runs = []
        for m, n in blocks:
            runs.append(('A', int(m)))
            runs.append(('B', int(n)))
        runs = _merge_runs(runs)
        if len(runs) == 0:
            raise ValueError('A word must contain at least one letter.')
        object.__setattr__(self, '_blocks', _runs_to_blocks(runs))

    def __setattr__(self, name, value):
        raise AttributeError('Word is immutable')

    @classmethod
    def from_letters(cls, letters):
        """ Build a word from a letter string such as 'AABAB'.

        Args:
            letters (str): string over the alphabet {A, B}.

        Returns:
            (Word): the canonical word.
        """

        if not letters or _LETTERS.fullmatch(letters) is None:
            raise WordSyntaxError('Invalid letter string: {!r}'.format(letters))
        runs = [(k, len(list(g))) for k, g in itertools.groupby(letters)]
        return cls.from_runs(runs)

    @classmethod
    def from_runs(cls, runs):
        """ Build a word from letter runs [('A', 2), ('B', 1), ...].

        Args:
            runs (iterable of (str, int)): letter runs.

        Returns:
            (Word): the canonical word.
        """

        runs = _merge_runs(runs)
        if len(runs) == 0:
            raise ValueError('A word must contain at least one letter.')
        word = cls.__new__(cls)
        object.__setattr__(word, '_blocks', _runs_to_blocks(runs))
        return word

    @property
    def blocks(self):
        return self._blocks

    @property
    def total_m(self):
        return sum(b[0] for b in self._blocks)

    @property
    def total_n(self):
        return sum(b[1] for b in self._blocks)

    @property
    def runs(self):
        """ (list of (str, int)): alternating letter runs. """

        return _merge_runs(itertools.chain.from_iterable(
            (('A', m), ('B', n)) for m, n in self._blocks))

    @property
    def letters(self):
        """ (str): the word spelled out letter by letter. """

        return ''.join(letter * count for letter, count in self.runs)

    @property
    def is_palindrome(self):
        runs = self.runs
        return runs == runs[::-1]

    def __len__(self):
        return self.total_m + self.total_n

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self._blocks == other._blocks

    def __hash__(self):
        return hash(self._blocks)

    def __lt__(self, other):
        return (len(self), self.letters) < (len(other), other.letters)

    def __repr__(self):
        return 'Word({!r})'.format(format_word(self))

    def __str__(self):
        return format_word(self)

    def __reduce__(self):
        return (Word, (self._blocks,))


def format_word(word):
    """ Print a word in the canonical block grammar, e.g. 'A^2 B^1 A^1 B^2'.

    Args:
        word (Word): the word to print.

    Returns:
        (str): block form of the word.
    """

    return ' '.join('{}^{:d}'.format(letter, count) for letter, count in word.runs)


def parse_word(text, max_length=None):
    """ Parse a word from either the letter grammar ('AABABB')
        or the block grammar ('A^2 B^1 A^1 B^2').
        Adjacent equal letters or blocks are merged.

    Args:
        text (str): the word text.
        max_length (int): maximum number of letters allowed, if None use
            Defaults.max_word_length (default None).

    Returns:
        (Word): the canonical word.
    """

    if max_length is None:
        max_length = Defaults.max_word_length

    if text is None or text.strip() == '':
        raise WordSyntaxError('Empty word.')

    text = text.strip()

    if _LETTERS.fullmatch(text) is not None:
        word = Word.from_letters(text)

    else:
        runs = []
        for token in text.split(' '):
            if token == '':
                raise WordSyntaxError('Blocks must be separated by single spaces in {!r}'.format(text))
            match = _BLOCK.fullmatch(token)
            if match is None:
                raise WordSyntaxError('Invalid token {!r} in word {!r}'.format(token, text))
            count = int(match.group(2))
            if count < 1:
                raise WordSyntaxError('Exponents must be at least 1, found {!r}'.format(token))
            runs.append((match.group(1), count))
        word = Word.from_runs(runs)

    if len(word) > max_length:
        raise WordSyntaxError('Word length {:d} exceeds the maximum of {:d}'.format(
            len(word), max_length))

    return word


def ordered(word):
    """ The ordered counterpart A^m B^n of a word.

    Args:
        word (Word): input word.

    Returns:
        (Word): single-block word [(total_m, total_n)].
    """

    return Word([(word.total_m, word.total_n)])


def is_ordered(word):
    """ Check whether all A's precede all B's.

    Args:
        word (Word): input word.

    Returns:
        (bool): True if the word has a single block.
    """

    return len(word.blocks) == 1


def transpose_word(word):
    """ Reverse a word. For symmetric A, B the transpose of W(A, B)
        is the reversed word evaluated at A, B.

    Args:
        word (Word): input word.

    Returns:
        (Word): the reversed word.
    """

    return Word.from_runs(word.runs[::-1])


def gram_cycle(word):
    """ Letter runs of W^T W read as a cyclic sequence, rotated so that it
        starts with A and ends with B.

    Args:
        word (Word): word with both letters present.

    Returns:
        (list of (str, int)): alternating runs A, B, ..., A, B.
    """

    if word.total_m == 0 or word.total_n == 0:
        raise ValueError('A cyclic A/B sequence needs both letters in the word.')

    runs = word.runs
    cycle = _merge_runs(runs[::-1] + runs)
    if cycle[0][0] == 'B':
        cycle = _merge_runs(cycle[1:] + cycle[:1])
    if cycle[-1][0] == 'A':
        cycle = [('A', cycle[0][1] + cycle[-1][1])] + cycle[1:-1]
    return cycle


def concat(first, second):
    """ Concatenate two words.

    Args:
        first (Word): left factor.
        second (Word): right factor.

    Returns:
        (Word): the canonical product word.
    """

    return Word.from_runs(first.runs + second.runs)


def enumerate_words(max_length, min_length=1):
    """ Enumerate every canonical word within a length range,
        sorted by length and then lexicographically.

    Args:
        max_length (int): maximum number of letters.
        min_length (int): minimum number of letters (default 1).

    Returns:
        (list of Word): all words, there are 2^L of length L.
    """

    words = []
    for length in range(max(1, min_length), max_length + 1):
        for letters in itertools.product('AB', repeat=length):
            words.append(Word.from_letters(''.join(letters)))
    return words


def random_word(rng, max_length, min_length=1):
    """ Draw a random word: uniform length, then uniform letters.

    Args:
        rng (numpy.random.Generator): random numbers generator.
        max_length (int): maximum number of letters.
        min_length (int): minimum number of letters (default 1).

    Returns:
        (Word): the random word.
    """

    length = int(rng.integers(min_length, max_length + 1))
    letters = ''.join('AB'[int(x)] for x in rng.integers(0, 2, size=length))
    return Word.from_letters(letters)


if __name__ == "__main__":

    pass
