"""
Combinatorial Objects Module

This module defines the objects everything else works on:
- SetPartition: a set partition of [n] in block representation
- Permutation: a permutation of [n] in one-line notation
- RgfWord: a restricted growth function, the canonical form of a set partition
- RunDecomposition: the maximal increasing runs of a permutation

It also computes every statistic and class predicate used by the bijections,
counting and generation modules. Positions are 1-based in every public result.
"""

import logging
from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass
from itertools import chain, combinations

# Configure logger
logger = logging.getLogger(__name__)


class CombinatoricsError(ValueError):
    """Base class for domain errors raised by the engines"""


class InvalidObjectError(CombinatoricsError):
    """An object, or an argument to an operation, is outside its domain"""


class SizeLimitError(CombinatoricsError):
    """A size guard was exceeded before starting allocation-heavy work"""


def _int_tuple(values, what):
    try:
        result = tuple(values)
    except TypeError:
        raise InvalidObjectError(f"{what} must be a sequence of integers, got {values!r}")
    for value in result:
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidObjectError(f"{what} contains a non-integer entry {value!r}")
    return result


def _strictly_increasing(values):
    return all(a < b for a, b in zip(values, values[1:]))


@dataclass(frozen=True)
class SetPartition:
    """Set partition of [n] in block representation

    Blocks are strictly increasing and ordered by increasing minima. The
    constructor rejects anything else; use from_blocks() to normalize.
    """
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(_int_tuple(block, "block") for block in self.blocks)
        object.__setattr__(self, "blocks", blocks)

        if not blocks:
            raise InvalidObjectError("a set partition needs at least one block")
        for block in blocks:
            if not block:
                raise InvalidObjectError(f"empty block in {blocks!r}")
            if not _strictly_increasing(block):
                raise InvalidObjectError(f"block {list(block)} is not strictly increasing")

        n = sum(len(block) for block in blocks)
        elements = set(chain.from_iterable(blocks))
        if elements != set(range(1, n + 1)):
            raise InvalidObjectError(
                f"blocks {[list(b) for b in blocks]} do not partition [1..{n}]"
            )
        if not _strictly_increasing([block[0] for block in blocks]):
            raise InvalidObjectError("block minima must increase from block to block")

    @classmethod
    def from_blocks(cls, blocks):
        """Build a partition from blocks given in any order"""
        ordered = sorted((sorted(block) for block in blocks), key=lambda block: block[0] if block else 0)
        return cls(tuple(tuple(block) for block in ordered))

    @property
    def n(self):
        return sum(len(block) for block in self.blocks)

    @property
    def k(self):
        """Number of blocks"""
        return len(self.blocks)

    def __str__(self):
        return "/".join(",".join(str(x) for x in block) for block in self.blocks)


@dataclass(frozen=True)
class Permutation:
    """Permutation of [n] as its one-line word"""
    word: tuple

    def __post_init__(self):
        word = _int_tuple(self.word, "permutation")
        object.__setattr__(self, "word", word)
        if not word:
            raise InvalidObjectError("a permutation needs at least one letter")
        if sorted(word) != list(range(1, len(word) + 1)):
            raise InvalidObjectError(f"{list(word)} is not a permutation of [1..{len(word)}]")

    @property
    def n(self):
        return len(self.word)

    def __str__(self):
        return ",".join(str(x) for x in self.word)


@dataclass(frozen=True)
class RgfWord:
    """Restricted growth function f_1...f_n

    f_1 = 1 and each f_i is at most one more than the maximum of the prefix.
    """
    letters: tuple

    def __post_init__(self):
        letters = _int_tuple(self.letters, "restricted growth function")
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise InvalidObjectError("a restricted growth function needs at least one letter")
        if letters[0] != 1:
            raise InvalidObjectError(f"{list(letters)} does not start with 1")
        top = 1
        for position, letter in enumerate(letters[1:], start=2):
            if letter < 1 or letter > top + 1:
                raise InvalidObjectError(
                    f"letter {letter} at position {position} of {list(letters)} "
                    f"exceeds 1 + prefix maximum {top}"
                )
            top = max(top, letter)

    @property
    def n(self):
        return len(self.letters)

    @property
    def k(self):
        """Number of distinct letters (blocks of the encoded partition)"""
        return max(self.letters)

    def __str__(self):
        return ",".join(str(x) for x in self.letters)


@dataclass(frozen=True)
class RunDecomposition:
    """Maximal increasing runs of a permutation, left to right"""
    runs: tuple
    source: Permutation

    def __post_init__(self):
        runs = tuple(tuple(run) for run in self.runs)
        object.__setattr__(self, "runs", runs)
        if tuple(chain.from_iterable(runs)) != self.source.word:
            raise InvalidObjectError("runs do not concatenate to the source permutation")
        for run in runs:
            if not run or not _strictly_increasing(run):
                raise InvalidObjectError(f"run {list(run)} is not increasing")
        for left, right in zip(runs, runs[1:]):
            if left[-1] < right[0]:
                raise InvalidObjectError(f"runs {list(left)} and {list(right)} are not maximal")

    @property
    def k(self):
        return len(self.runs)

    @property
    def minima(self):
        return tuple(run[0] for run in self.runs)


# ---------------------------------------------------------------------------
# Encodings between partitions, words and permutations
# ---------------------------------------------------------------------------

def canonical_form(p):
    """
    Canonical form of a set partition

    Args:
        p: SetPartition

    Returns:
        RgfWord: letter j is the (1-based) index of the block containing j
    """
    letters = [0] * p.n
    for index, block in enumerate(p.blocks, start=1):
        for element in block:
            letters[element - 1] = index
    return RgfWord(tuple(letters))


def partition_from_rgf(f):
    """
    Set partition encoded by a restricted growth function

    Args:
        f: RgfWord

    Returns:
        SetPartition: inverse of canonical_form
    """
    blocks = [[] for _ in range(f.k)]
    for position, letter in enumerate(f.letters, start=1):
        blocks[letter - 1].append(position)
    return SetPartition(tuple(tuple(block) for block in blocks))


def flatten(p):
    """Concatenate the blocks of a partition into a permutation"""
    return Permutation(tuple(chain.from_iterable(p.blocks)))


# ---------------------------------------------------------------------------
# Permutation statistics
# ---------------------------------------------------------------------------

def descents(pi):
    """Positions i (1-based) with pi_i > pi_{i+1}"""
    word = pi.word
    return tuple(i for i in range(1, len(word)) if word[i - 1] > word[i])


def run_decomposition(pi):
    """
    Split a permutation into its maximal increasing runs

    Args:
        pi: Permutation

    Returns:
        RunDecomposition: one run per descent plus one
    """
    runs = []
    current = [pi.word[0]]
    for letter in pi.word[1:]:
        if letter < current[-1]:
            runs.append(tuple(current))
            current = []
        current.append(letter)
    runs.append(tuple(current))
    return RunDecomposition(tuple(runs), pi)


def run_count(pi):
    return 1 + len(descents(pi))


def is_run_sorted(pi):
    """True iff the run minima increase from left to right"""
    return _strictly_increasing(run_decomposition(pi).minima)


def rlmin_set(pi):
    """
    Right-to-left minima of a permutation

    Returns the letters (values, not positions) smaller than everything to
    their right. The last letter is always included.
    """
    minima = set()
    smallest = None
    for letter in reversed(pi.word):
        if smallest is None or letter < smallest:
            minima.add(letter)
            smallest = letter
    return frozenset(minima)


def rlmin_count(pi):
    return len(rlmin_set(pi))


# ---------------------------------------------------------------------------
# Word statistics
# ---------------------------------------------------------------------------

def strict_maxima(word):
    """1-based positions of strict left-to-right maxima of any integer word"""
    positions = set()
    top = None
    for position, letter in enumerate(word, start=1):
        if top is None or letter > top:
            positions.add(position)
            top = letter
    return frozenset(positions)


def weak_maxima(word):
    """1-based positions of weak left-to-right maxima of any integer word"""
    positions = set()
    top = None
    for position, letter in enumerate(word, start=1):
        if top is None or letter >= top:
            positions.add(position)
            top = letter
    return frozenset(positions)


def lrmax_positions(f):
    """Positions of the strict left-to-right maxima of an RGF"""
    return strict_maxima(f.letters)


def lwmp_positions(f):
    """Positions of the weak left-to-right maxima of an RGF"""
    return weak_maxima(f.letters)


def unique_letters(f):
    """Letters occurring exactly once in the whole word (singleton blocks)"""
    counts = Counter(f.letters)
    return frozenset(letter for letter, count in counts.items() if count == 1)


# ---------------------------------------------------------------------------
# Class predicates
# ---------------------------------------------------------------------------

def is_merging_free(p):
    """True iff max(B_i) > min(B_{i+1}) for every pair of adjacent blocks"""
    return all(left[-1] > right[0] for left, right in zip(p.blocks, p.blocks[1:]))


def is_in_T(f):
    """
    Membership in T_n, the canonical forms of merging-free partitions

    Every strict left-to-right maximum letter s > 1 needs an occurrence of
    s - 1 somewhere to its right.
    """
    last = {}
    for position, letter in enumerate(f.letters, start=1):
        last[letter] = position
    for position in lrmax_positions(f):
        letter = f.letters[position - 1]
        if letter > 1 and last[letter - 1] < position:
            return False
    return True


def is_separated(p):
    """True iff no block holds two consecutive integers"""
    return all(b - a > 1 for block in p.blocks for a, b in zip(block, block[1:]))


def avoids_212(f):
    """True iff there are no a < b < c with f_a = f_c > f_b"""
    letters = f.letters
    first, last = {}, {}
    for index, letter in enumerate(letters):
        first.setdefault(letter, index)
        last[letter] = index
    for letter, start in first.items():
        inner = letters[start + 1:last[letter]]
        if inner and min(inner) < letter:
            return False
    return True


def has_crossing_pair(p):
    """
    Direct crossing test: a < x < b < y with a, b in one block and x, y in another
    """
    for outer in p.blocks:
        for inner in p.blocks:
            if inner is outer:
                continue
            for a, b in combinations(outer, 2):
                between = bisect_right(inner, a) < bisect_left(inner, b)
                beyond = inner[-1] > b
                if between and beyond:
                    return True
    return False


def is_noncrossing(p, verify=False):
    """
    Non-crossing test via 212-avoidance of the canonical form

    Args:
        p: SetPartition
        verify: also run the direct four-index test and require agreement

    Returns:
        bool: True iff no two blocks cross
    """
    result = avoids_212(canonical_form(p))
    if verify:
        direct = not has_crossing_pair(p)
        if direct != result:
            raise AssertionError(
                f"212-avoidance ({result}) and pairwise crossing test ({direct}) disagree on {p}"
            )
    return result


def is_weakly_unimodal(f):
    """True iff f weakly increases up to some peak and weakly decreases after it"""
    letters = f.letters
    index = 1
    while index < len(letters) and letters[index - 1] <= letters[index]:
        index += 1
    while index < len(letters) and letters[index - 1] >= letters[index]:
        index += 1
    return index == len(letters)
