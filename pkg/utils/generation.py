"""
Generation Module

Exhaustive generation of run-sorted permutations by number of runs with the
two-row dynamic program, plus brute-force enumerations over restricted growth
functions that serve as oracles for every class:
- generate_rsp: DP over rows n-1 and n-2 (function_one / function_two)
- oracle_rsp: flatten every set partition and bucket by runs
- generate_rsp_by_rlmin: right-to-left minima insertion, bucketed by rlmin
- generate_set_partitions / generate_T / generate_separated
- generate_noncrossing_rgfs: 212-avoiding RGFs, pruned while growing; feeds generate_ncmf
"""

import logging
from dataclasses import dataclass

from utils.bijections import Insertion, bijection_trace, rlmin_insert
from utils.core import (
    InvalidObjectError,
    Permutation,
    RgfWord,
    flatten,
    is_in_T,
    is_merging_free,
    is_separated,
    partition_from_rgf,
    rlmin_count,
    rlmin_set,
    run_count,
)
from utils.counting import ceil_half
from utils.limits import ENUMERATION_MAX_N, ORACLE_MAX_N, check_limit

# Configure logger
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RspFamily:
    """
    Run-sorted permutations of [n] bucketed by number of runs

    by_runs[k-1] holds the permutations with k runs, for k = 1..ceil(n/2).
    """
    n: int
    by_runs: tuple

    def __post_init__(self):
        cells = tuple(tuple(cell) for cell in self.by_runs)
        object.__setattr__(self, "by_runs", cells)
        if len(cells) > ceil_half(self.n):
            raise InvalidObjectError(f"RSP({self.n}) has no permutations with more than {ceil_half(self.n)} runs")

    def cell(self, k):
        """Permutations with k runs; empty beyond ceil(n/2)"""
        if 1 <= k <= len(self.by_runs):
            return self.by_runs[k - 1]
        return ()

    def cell_sizes(self, kmax=None):
        kmax = len(self.by_runs) if kmax is None else kmax
        return [len(self.cell(k)) for k in range(1, kmax + 1)]

    @property
    def total(self):
        return sum(len(cell) for cell in self.by_runs)

    def permutations(self):
        return [pi for cell in self.by_runs for pi in cell]


@dataclass(frozen=True)
class RlminFamily:
    """Run-sorted permutations of [n] bucketed by right-to-left minima (r = 1..n)"""
    n: int
    by_rlmin: tuple

    def cell(self, r):
        if 1 <= r <= len(self.by_rlmin):
            return self.by_rlmin[r - 1]
        return ()

    def cell_sizes(self):
        return [len(cell) for cell in self.by_rlmin]


def _require_size(n):
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidObjectError(f"n must be a positive integer, got {n!r}")


# ---------------------------------------------------------------------------
# Dynamic programming generation
# ---------------------------------------------------------------------------

def function_one(cell, n):
    """
    Insert n into every run of every permutation of [n-1]

    For each input, n goes after each descent top first and is finally
    appended, so the run count is unchanged.
    """
    output = []
    for pi in cell:
        if pi.n != n - 1:
            raise InvalidObjectError(f"{pi} is not a permutation of [{n - 1}]")
        word = list(pi.word)
        for t in range(len(word) - 1):
            if word[t] > word[t + 1]:
                output.append(Permutation(tuple(word[:t + 1] + [n] + word[t + 1:])))
        output.append(Permutation(tuple(word + [n])))
    return output


def size_inc_by_two(pi, p):
    """
    Grow a run-sorted permutation of [n-2] into one of [n] with one more run

    Scan from the right for the last letter <= p after shifting the letters
    above p, then insert n and p + 1 behind it. Agrees with psi(p, pi).
    """
    _require_size(p)
    if p > pi.n:
        raise InvalidObjectError(f"p={p} is outside [1, {pi.n}]")
    word = [x + 1 if x > p else x for x in pi.word]
    pos = len(word) - 1
    while word[pos] > p:
        pos -= 1
    word.insert(pos + 1, len(word) + 2)
    word.insert(pos + 2, p + 1)
    return Permutation(tuple(word))


def function_two(cell):
    """Apply size_inc_by_two to every (pi, p), p = 1..length(pi)"""
    output = []
    for pi in cell:
        for p in range(1, pi.n + 1):
            output.append(size_inc_by_two(pi, p))
    return output


def _row_cell(row, k):
    if 1 <= k <= len(row):
        return row[k - 1]
    return []


def generate_rsp(n):
    """
    All run-sorted permutations of [n], bucketed by number of runs

    Keeps only the previous two rows; cell k of row n is
    function_one(row[n-1][k], n) followed by function_two(row[n-2][k-1]).

    Args:
        n: Size, n >= 1

    Returns:
        RspFamily: cells k = 1..ceil(n/2)
    """
    _require_size(n)
    row_before_last = [[Permutation((1,))]]
    last_row = [[Permutation((1, 2))]]
    if n == 1:
        return RspFamily(1, row_before_last)
    if n == 2:
        return RspFamily(2, last_row)

    for size in range(3, n + 1):
        current_row = []
        for k in range(1, ceil_half(size) + 1):
            cell = function_one(_row_cell(last_row, k), size)
            cell.extend(function_two(_row_cell(row_before_last, k - 1)))
            current_row.append(cell)
        logger.debug(f"Row {size}: cell sizes {[len(cell) for cell in current_row]}")
        row_before_last, last_row = last_row, current_row

    return RspFamily(n, last_row)


# ---------------------------------------------------------------------------
# Brute-force enumeration over restricted growth functions
# ---------------------------------------------------------------------------

def generate_rgfs(n):
    """
    Yield every restricted growth function of length n in lexicographic order
    """
    _require_size(n)
    check_limit("n", n, ENUMERATION_MAX_N)
    word = [1]

    def extend(top):
        if len(word) == n:
            yield RgfWord(tuple(word))
            return
        for letter in range(1, top + 2):
            word.append(letter)
            yield from extend(max(top, letter))
            word.pop()

    yield from extend(1)


def oracle_rsp(n):
    """
    Brute-force RSP(n): flatten every set partition, deduplicate, bucket by runs

    Cells are sorted lexicographically.
    """
    _require_size(n)
    check_limit("n", n, ORACLE_MAX_N)
    seen = {flatten(partition_from_rgf(f)) for f in generate_rgfs(n)}
    cells = [[] for _ in range(ceil_half(n))]
    for pi in seen:
        cells[run_count(pi) - 1].append(pi)
    return RspFamily(n, [sorted(cell, key=lambda pi: pi.word) for cell in cells])


def generate_set_partitions(n):
    """All set partitions of [n]"""
    return [partition_from_rgf(f) for f in generate_rgfs(n)]


def generate_T(n):
    """Canonical forms of the merging-free partitions of [n]"""
    return [f for f in generate_rgfs(n) if is_in_T(f)]


def generate_merging_free(n):
    """Merging-free partitions of [n], filtered on blocks rather than on canonical forms"""
    return [p for p in generate_set_partitions(n) if is_merging_free(p)]


def generate_separated(n):
    """Partitions of [n] with no two consecutive integers in a block"""
    return [p for p in generate_set_partitions(n) if is_separated(p)]


def generate_noncrossing_rgfs(n):
    """
    Yield the 212-avoiding RGFs of length n in lexicographic order

    These are the canonical forms of the non-crossing partitions of [n]. A
    repeated letter c may be appended only if no letter after its last
    occurrence exceeds c, so the search never visits a crossing prefix.
    """
    _require_size(n)
    check_limit("n", n, ENUMERATION_MAX_N)
    word = [1]
    last = {1: 0}

    def extend(top):
        if len(word) == n:
            yield RgfWord(tuple(word))
            return
        for letter in range(1, top + 2):
            if letter <= top and max(word[last[letter] + 1:], default=0) > letter:
                continue
            previous = last.get(letter)
            last[letter] = len(word)
            word.append(letter)
            yield from extend(max(top, letter))
            word.pop()
            if previous is None:
                del last[letter]
            else:
                last[letter] = previous

    yield from extend(1)


def generate_ncmf(n):
    """Non-crossing merging-free partitions of [n], in lexicographic RGF order"""
    partitions = [partition_from_rgf(f) for f in generate_noncrossing_rgfs(n) if is_in_T(f)]
    logger.debug(f"{len(partitions)} non-crossing merging-free partitions of [{n}]")
    return partitions


PARTITION_CLASSES = {
    "all": generate_set_partitions,
    "merging-free": generate_merging_free,
    "separated": generate_separated,
    "noncrossing-mf": generate_ncmf,
}


def generate_partitions(n, partition_class="all"):
    """Dispatch to the enumeration of a named partition class"""
    try:
        generator = PARTITION_CLASSES[partition_class]
    except KeyError:
        raise InvalidObjectError(f"unknown partition class {partition_class!r}")
    return generator(n)


def generate_rsp_by_rlmin(n):
    """
    All run-sorted permutations of [n], bucketed by right-to-left minima

    Grows RSP(1) = {1} one letter at a time: append n, or insert n before each
    right-to-left minimum other than 1.

    Returns:
        RlminFamily: cells r = 1..n
    """
    _require_size(n)
    level = [Permutation((1,))]
    for _ in range(2, n + 1):
        grown = []
        for pi in level:
            grown.append(rlmin_insert(pi, Insertion.END))
            for value in sorted(rlmin_set(pi) - {1}):
                grown.append(rlmin_insert(pi, value))
        level = grown

    cells = [[] for _ in range(n)]
    for pi in level:
        cells[rlmin_count(pi) - 1].append(pi)
    return RlminFamily(n, tuple(tuple(cell) for cell in cells))


def zero_u_rgfs(n):
    """RGFs of length n whose alpha correction vector u vanishes"""
    return [f for f in generate_rgfs(n) if not any(bijection_trace(f).u)]
