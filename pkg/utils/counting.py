"""
Counting Module

Integer sequences and triangles computed from their recurrences with Python's
arbitrary-precision integers:
- r_{n,k}: run-sorted permutations of [n] with k runs
- h_{n,r}: run-sorted permutations of [n] with r right-to-left minima
- a_{n,k,r}: joint distribution of runs and right-to-left minima (two recurrences)
- l_n: RGFs whose u-vector vanishes
- Bell numbers b_n and Stirling numbers of the second kind S(n,k)
- coefficients of the non-crossing merging-free block polynomial
- the Dobinski-type estimate of r_n
"""

import logging
from dataclasses import dataclass, field
from math import comb
from types import MappingProxyType

import mpmath

from utils.core import InvalidObjectError
from utils.limits import DOBINSKI_DPS

# Configure logger
logger = logging.getLogger(__name__)

TABLE_KINDS = ("r", "h", "a", "l", "bell", "stirling2", "ncmf")


def ceil_half(n):
    return (n + 1) // 2


@dataclass(frozen=True)
class CountTable:
    """
    Immutable table of counts

    Values are keyed by index tuples: (n,), (n, k), (n, r) or (n, k, r).
    Entries outside the stored support read as 0.
    """
    kind: str
    dims: tuple
    values: dict = field(repr=False)

    def __post_init__(self):
        if self.kind not in TABLE_KINDS:
            raise InvalidObjectError(f"unknown table kind {self.kind!r}")
        for index, value in self.values.items():
            if len(index) != len(self.dims):
                raise InvalidObjectError(f"index {index} does not match dims {self.dims}")
            if value < 0:
                raise InvalidObjectError(f"negative count {value} at {index}")
        object.__setattr__(self, "values", MappingProxyType(dict(self.values)))

    @property
    def nmax(self):
        return self.dims[0]

    def __getitem__(self, index):
        if not isinstance(index, tuple):
            index = (index,)
        return self.values.get(index, 0)

    def row(self, n, start, stop):
        """Entries (n, j) for start <= j <= stop of a two-dimensional table"""
        return [self[n, j] for j in range(start, stop + 1)]

    def to_jsonable(self):
        return {
            "kind": self.kind,
            "dims": list(self.dims),
            "values": [[list(index), value] for index, value in sorted(self.values.items())],
        }


def _require_nmax(nmax, low=0):
    if isinstance(nmax, bool) or not isinstance(nmax, int) or nmax < low:
        raise InvalidObjectError(f"nmax must be an integer >= {low}, got {nmax!r}")


def r_table(nmax):
    """
    Run-sorted permutations of [n] by number of runs

    r_{n,k} = k r_{n-1,k} + (n-2) r_{n-2,k-1} for n >= 2, k >= 1, with
    r_{0,0} = 1, r_{1,0} = 0, r_{1,1} = 1. Only k <= ceil(n/2) can be nonzero.
    """
    _require_nmax(nmax)
    values = {(0, 0): 1}
    if nmax >= 1:
        values[1, 0] = 0
        values[1, 1] = 1
    for n in range(2, nmax + 1):
        for k in range(1, ceil_half(n) + 1):
            values[n, k] = k * values.get((n - 1, k), 0) + (n - 2) * values.get((n - 2, k - 1), 0)
    logger.info(f"Built r-table up to n={nmax}")
    return CountTable("r", (nmax, ceil_half(nmax)), values)


def rsp_totals(nmax):
    """r_n = sum_k r_{n,k} for 0 <= n <= nmax"""
    table = r_table(nmax)
    return [sum(table[n, k] for k in range(0, ceil_half(n) + 1)) for n in range(nmax + 1)]


def h_table(nmax):
    """
    Run-sorted permutations of [n] by number of right-to-left minima

    h_{n,r} = h_{n-1,r-1} + (r-1) h_{n-1,r}, h_{1,1} = 1.
    """
    _require_nmax(nmax, low=1)
    values = {(1, 1): 1}
    for n in range(2, nmax + 1):
        for r in range(1, n + 1):
            values[n, r] = values.get((n - 1, r - 1), 0) + (r - 1) * values.get((n - 1, r), 0)
    logger.info(f"Built h-table up to n={nmax}")
    return CountTable("h", (nmax, nmax), values)


def a_table(nmax):
    """
    Joint distribution of runs and right-to-left minima

    a_{n,k,r} = a_{n-1,k,r-1} + (k-1) a_{n-1,k,r} + (n-2) a_{n-2,k-1,r-1}
    for n >= 2, with a_{0,0,0} = 1 and a_{1,1,1} = 1.
    """
    _require_nmax(nmax)
    values = {(0, 0, 0): 1}
    if nmax >= 1:
        values[1, 1, 1] = 1
    for n in range(2, nmax + 1):
        for k in range(1, ceil_half(n) + 1):
            for r in range(1, n + 1):
                value = (
                    values.get((n - 1, k, r - 1), 0)
                    + (k - 1) * values.get((n - 1, k, r), 0)
                    + (n - 2) * values.get((n - 2, k - 1, r - 1), 0)
                )
                if value:
                    values[n, k, r] = value
    logger.info(f"Built a-table up to n={nmax}")
    return CountTable("a", (nmax, ceil_half(nmax), nmax), values)


def a_table_binomial(nmax):
    """
    Joint distribution from the binomial-sum recurrence

    a_{m,k,r} = a_{m-1,k,r-1} + sum_{i=1}^{m-2} C(m-2, i) a_{m-1-i,k-1,r-1}
    for m >= 2: either 1 and 2 share a run, or the first run holds 1 and i
    further letters taken from 3..m.
    """
    _require_nmax(nmax)
    values = {(0, 0, 0): 1}
    if nmax >= 1:
        values[1, 1, 1] = 1
    for m in range(2, nmax + 1):
        n = m - 2
        for k in range(1, ceil_half(m) + 1):
            for r in range(1, m + 1):
                value = values.get((m - 1, k, r - 1), 0)
                value += sum(
                    comb(n, i) * values.get((m - 1 - i, k - 1, r - 1), 0)
                    for i in range(1, n + 1)
                )
                if value:
                    values[m, k, r] = value
    logger.info(f"Built binomial a-table up to n={nmax}")
    return CountTable("a", (nmax, ceil_half(nmax), nmax), values)


def l_sequence(nmax):
    """
    l_n = sum_{k=1}^{n-1} C(n-1, k) l_{n-k-1}, l_0 = l_1 = 1

    Counts partitions of [n] whose blocks have size at least two, except the
    last block which may be a singleton.
    """
    _require_nmax(nmax)
    values = [1, 1][:nmax + 1]
    for n in range(2, nmax + 1):
        values.append(sum(comb(n - 1, k) * values[n - k - 1] for k in range(1, n)))
    return CountTable("l", (nmax,), {(n,): value for n, value in enumerate(values)})


def stirling2(nmax):
    """Stirling numbers of the second kind, S(n,k) = S(n-1,k-1) + k S(n-1,k)"""
    _require_nmax(nmax)
    values = {(0, 0): 1}
    for n in range(1, nmax + 1):
        values[n, 0] = 0
        for k in range(1, n + 1):
            values[n, k] = values.get((n - 1, k - 1), 0) + k * values.get((n - 1, k), 0)
    return CountTable("stirling2", (nmax, nmax), values)


def bell(nmax):
    """Bell numbers b_n = sum_k S(n,k)"""
    triangle = stirling2(nmax)
    values = {(n,): sum(triangle[n, k] for k in range(n + 1)) for n in range(nmax + 1)}
    return CountTable("bell", (nmax,), values)


def ncmf_polynomial(n):
    """
    Non-crossing merging-free partitions of [n] by number of blocks

    Returns:
        list: entry t-1 is C(n-1, 2(t-1)), the number with t blocks,
            for 1 <= t <= floor((n+1)/2)
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidObjectError(f"n must be a positive integer, got {n!r}")
    return [comb(n - 1, 2 * (t - 1)) for t in range(1, (n + 1) // 2 + 1)]


def ncmf_table(nmax):
    """ncmf_polynomial(n) for 1 <= n <= nmax as an (n, t) table"""
    _require_nmax(nmax)
    values = {}
    for n in range(1, nmax + 1):
        for t, value in enumerate(ncmf_polynomial(n), start=1):
            values[n, t] = value
    return CountTable("ncmf", (nmax, ceil_half(nmax)), values)


def dobinski_estimate(n, terms, dps=DOBINSKI_DPS):
    """
    Partial Dobinski-type sum for the number of run-sorted permutations of [n]

    Args:
        n: Size, n >= 1
        terms: Number of summands m = 0..terms-1
        dps: Working precision in decimal digits

    Returns:
        mpmath.mpf: (1/e) * sum m^(n-1)/m!
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidObjectError(f"n must be a positive integer, got {n!r}")
    if isinstance(terms, bool) or not isinstance(terms, int) or terms < 1:
        raise InvalidObjectError(f"terms must be a positive integer, got {terms!r}")
    with mpmath.workdps(dps):
        total = mpmath.fsum(mpmath.mpf(m ** (n - 1)) / mpmath.factorial(m) for m in range(terms))
        return total / mpmath.e


# Table names accepted by the front ends
COUNT_TABLES = {
    "r": r_table,
    "h": h_table,
    "a": a_table,
    "l": l_sequence,
    "bell": bell,
    "stirling": stirling2,
    "ncmf": ncmf_table,
}
