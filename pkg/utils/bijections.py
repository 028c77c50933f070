"""
Bijections Module

Constructive bijections between set partitions, canonical forms and run-sorted
permutations, each with its inverse:
- prop0: SP(n) -> RSP(n+1) (block minima moved to the block ends)
- alpha / beta: RGF(n) <-> T_{n+1}
- phi / psi: insertion maps behind the run recurrence r_{n,k}
- canonical_extend: the second run-recurrence construction on canonical forms
- rlmin_insert: insertion behind the right-to-left minima recurrence h_{n,r}
- theta: separated partitions -> run-sorted permutations
"""

import enum
import logging
from dataclasses import dataclass
from itertools import chain

from utils.core import (
    InvalidObjectError,
    Permutation,
    RgfWord,
    SetPartition,
    is_in_T,
    is_run_sorted,
    is_separated,
    lrmax_positions,
    rlmin_set,
    run_count,
    run_decomposition,
    unique_letters,
)

# Configure logger
logger = logging.getLogger(__name__)


class Insertion(enum.Enum):
    """Non-value target of rlmin_insert"""
    END = "end"


@dataclass(frozen=True)
class BijectionTrace:
    """
    Correction vectors of alpha and beta

    u and delta are computed on f (f' = f - u + delta); v and delta_prime on
    g = alpha(f) (g' = g + v - delta_prime).
    """
    u: tuple
    delta: tuple
    v: tuple
    delta_prime: tuple

    def __post_init__(self):
        lengths = {len(self.u), len(self.delta), len(self.v), len(self.delta_prime)}
        if len(lengths) != 1:
            raise InvalidObjectError(f"trace vectors have different lengths {sorted(lengths)}")
        if any(x < 0 for x in chain(self.u, self.v)):
            raise InvalidObjectError("u and v must be non-negative")
        if any(x not in (0, 1) for x in chain(self.delta, self.delta_prime)):
            raise InvalidObjectError("delta and delta_prime must be 0/1 vectors")


def _require_run_sorted(pi, operation):
    if not is_run_sorted(pi):
        raise InvalidObjectError(f"{operation} needs a run-sorted permutation, got {pi}")


def _require_in_range(name, value, low, high):
    if not low <= value <= high:
        raise InvalidObjectError(f"{name}={value} is outside [{low}, {high}]")


# ---------------------------------------------------------------------------
# Set partitions of [n] <-> run-sorted permutations of [n+1]
# ---------------------------------------------------------------------------

def prop0_forward(p):
    """
    Map a set partition of [n] to a run-sorted permutation of [n+1]

    Moves each block minimum to the end of its block, drops the separators,
    adds 1 to every integer and prepends 1.
    """
    word = [1]
    for block in p.blocks:
        rotated = block[1:] + block[:1]
        word.extend(x + 1 for x in rotated)
    return Permutation(tuple(word))


def prop0_inverse(pi):
    """
    Map a run-sorted permutation of [n+1] back to a set partition of [n]

    Puts a slash after each right-to-left minimum, deletes 1, decreases every
    integer by 1 and sorts each block.
    """
    _require_run_sorted(pi, "prop0_inverse")
    if pi.n < 2:
        raise InvalidObjectError("prop0_inverse needs a permutation of size at least 2")

    minima = rlmin_set(pi)
    segments = []
    current = []
    for letter in pi.word:
        current.append(letter)
        if letter in minima:
            segments.append(current)
            current = []

    # first segment is the lone letter 1
    blocks = [[x - 1 for x in segment] for segment in segments[1:]]
    return SetPartition.from_blocks(blocks)


# ---------------------------------------------------------------------------
# RGF(n) <-> T_{n+1}
# ---------------------------------------------------------------------------

def _alpha_vectors(f):
    letters = f.letters
    unique = unique_letters(f)
    maxima = lrmax_positions(f)
    unique_maxima = []
    u = []
    delta = []
    for position, letter in enumerate(letters, start=1):
        u.append(sum(1 for smaller in unique_maxima if smaller < letter))
        is_max = position in maxima
        delta.append(1 if is_max and letter not in unique else 0)
        if is_max and letter in unique:
            unique_maxima.append(letter)
    return tuple(u), tuple(delta)


def _beta_vectors(g):
    # statistics are read on the whole word 1.g; vectors are indexed by g
    word = g.letters
    v = []
    delta_prime = []
    non_strict = []
    top = word[0]
    for letter in word[1:]:
        v.append(sum(1 for earlier in non_strict if earlier <= letter))
        delta_prime.append(1 if letter > top else 0)
        if letter == top:
            non_strict.append(letter)
        top = max(top, letter)
    return tuple(v), tuple(delta_prime)


def alpha(f):
    """
    Map an RGF of length n to a canonical form in T_{n+1}

    Args:
        f: RgfWord

    Returns:
        RgfWord: 1 followed by f - u + delta
    """
    u, delta = _alpha_vectors(f)
    shifted = tuple(x - a + b for x, a, b in zip(f.letters, u, delta))
    return RgfWord((1,) + shifted)


def beta(g):
    """
    Inverse of alpha

    Args:
        g: RgfWord in T_{n+1}, n >= 1

    Returns:
        RgfWord: g without its leading 1, corrected by + v - delta_prime
    """
    if g.n < 2:
        raise InvalidObjectError(f"beta needs a word of length at least 2, got {g}")
    if not is_in_T(g):
        raise InvalidObjectError(f"{g} is not the canonical form of a merging-free partition")
    v, delta_prime = _beta_vectors(g)
    restored = tuple(x + a - b for x, a, b in zip(g.letters[1:], v, delta_prime))
    return RgfWord(restored)


def bijection_trace(f):
    """Correction vectors of alpha on f and of beta on alpha(f)"""
    u, delta = _alpha_vectors(f)
    v, delta_prime = _beta_vectors(alpha(f))
    return BijectionTrace(u, delta, v, delta_prime)


# ---------------------------------------------------------------------------
# Run recurrence: RSP(n,k) = phi([k] x RSP(n-1,k)) + psi([n-2] x RSP(n-2,k-1))
# ---------------------------------------------------------------------------

def remove_max(pi):
    """Delete the letter n from a permutation of [n], n >= 2"""
    if pi.n < 2:
        raise InvalidObjectError("cannot remove the only letter of a permutation")
    return Permutation(tuple(x for x in pi.word if x != pi.n))


def rsp_split(pi):
    """
    Which half of the run-recurrence split a run-sorted permutation is in

    Returns:
        int: 1 if deleting n keeps the number of runs, 2 if it decreases it
    """
    _require_run_sorted(pi, "rsp_split")
    return 1 if run_count(remove_max(pi)) == run_count(pi) else 2


def phi(i, sigma):
    """Insert n = sigma.n + 1 at the end of the i-th run of sigma"""
    _require_run_sorted(sigma, "phi")
    runs = run_decomposition(sigma).runs
    _require_in_range("i", i, 1, len(runs))
    n = sigma.n + 1
    runs = list(runs)
    runs[i - 1] = runs[i - 1] + (n,)
    return Permutation(tuple(chain.from_iterable(runs)))


def phi_inverse(pi):
    """
    Inverse of phi on RSP1(n,k)

    Returns:
        tuple: (i, sigma) with phi(i, sigma) == pi
    """
    if rsp_split(pi) != 1:
        raise InvalidObjectError(f"{pi} is not in the image of phi")
    n = pi.n
    for index, run in enumerate(run_decomposition(pi).runs, start=1):
        if run[-1] == n:
            return index, remove_max(pi)
    raise InvalidObjectError(f"{n} does not end a run of {pi}")


def psi(i, pi):
    """
    Grow a run-sorted permutation of [n-2] into RSP2(n,k)

    Increases every integer greater than i by 1 and inserts the subword
    n, i+1 right after the rightmost of the integers 1..i.

    Args:
        i: Integer in [1, n-2]
        pi: Run-sorted Permutation of [n-2]

    Returns:
        Permutation: run-sorted, one run more than pi
    """
    _require_run_sorted(pi, "psi")
    _require_in_range("i", i, 1, pi.n)
    n = pi.n + 2
    word = [x + 1 if x > i else x for x in pi.word]
    anchor = max(index for index, x in enumerate(word) if x <= i)
    word[anchor + 1:anchor + 1] = [n, i + 1]
    return Permutation(tuple(word))


def psi_inverse(pi_prime):
    """
    Inverse of psi

    Args:
        pi_prime: Permutation in RSP2(n,k)

    Returns:
        tuple: (i, pi) where i = j - 1 for the letter j following n
    """
    _require_run_sorted(pi_prime, "psi_inverse")
    word = pi_prime.word
    n = len(word)
    if n < 3:
        raise InvalidObjectError(f"{pi_prime} is too short to be in the image of psi")
    index = word.index(n)
    if index == n - 1:
        raise InvalidObjectError(f"{n} is in last position of {pi_prime}")
    if word[index - 1] > word[index + 1]:
        raise InvalidObjectError(f"removing {n} from {pi_prime} does not decrease the run count")

    j = word[index + 1]
    rest = word[:index] + word[index + 2:]
    return j - 1, Permutation(tuple(x - 1 if x > j else x for x in rest))


def canonical_extend(i, f):
    """
    Second run-recurrence construction on canonical forms

    With m = max(f_1..f_i): increase every f_j >= m with j > i by 1, insert
    m + 1 at position i + 1 and append m.

    Args:
        i: Integer in [1, n-2]
        f: RgfWord in T_{n-2}

    Returns:
        RgfWord: word in T_n with one more distinct letter than f
    """
    if not is_in_T(f):
        raise InvalidObjectError(f"{f} is not the canonical form of a merging-free partition")
    _require_in_range("i", i, 1, f.n)
    m = max(f.letters[:i])
    head = f.letters[:i]
    tail = tuple(x + 1 if x >= m else x for x in f.letters[i:])
    return RgfWord(head + (m + 1,) + tail + (m,))


# ---------------------------------------------------------------------------
# Right-to-left minima recurrence
# ---------------------------------------------------------------------------

def rlmin_insert(pi, target):
    """
    Insert n = pi.n + 1 into a run-sorted permutation

    Args:
        pi: Run-sorted Permutation of [n-1]
        target: Insertion.END to append n, or a right-to-left minimum value
            other than 1 to insert n just before it

    Returns:
        Permutation: run-sorted permutation of [n]
    """
    _require_run_sorted(pi, "rlmin_insert")
    n = pi.n + 1
    if target is Insertion.END:
        return Permutation(pi.word + (n,))
    if isinstance(target, bool) or not isinstance(target, int):
        raise InvalidObjectError(f"insertion target must be END or an integer, got {target!r}")
    if target == 1 or target not in rlmin_set(pi):
        raise InvalidObjectError(f"{target} is not a right-to-left minimum other than 1 of {pi}")
    index = pi.word.index(target)
    return Permutation(pi.word[:index] + (n,) + pi.word[index:])


# ---------------------------------------------------------------------------
# Separated partitions <-> run-sorted permutations
# ---------------------------------------------------------------------------

def _move(blocks, where, element, source, destination):
    blocks[source].remove(element)
    blocks[destination].append(element)
    blocks[destination].sort()
    where[element] = destination


def theta(p):
    """
    Map a separated partition with k blocks to a run-sorted permutation with
    k right-to-left minima

    For i = 2..k, each non-minimum b of B_i whose predecessor b - 1 sits in an
    earlier block moves to B_{i-1}; the result is flattened.
    """
    if not is_separated(p):
        raise InvalidObjectError(f"{p} is not a separated partition")
    blocks = [list(block) for block in p.blocks]
    where = {x: index for index, block in enumerate(blocks) for x in block}

    for index in range(1, len(blocks)):
        for element in blocks[index][1:]:
            if where[element - 1] < index:
                _move(blocks, where, element, index, index - 1)

    return Permutation(tuple(chain.from_iterable(blocks)))


def theta_inverse(pi):
    """
    Inverse of theta

    Cuts pi before each right-to-left minimum, then for i = k..1 moves each
    non-minimum b of B_i (increasing order) whose predecessor b - 1 sits in
    B_j with j <= i to B_{i+1}.
    """
    _require_run_sorted(pi, "theta_inverse")
    minima = rlmin_set(pi)
    blocks = []
    for letter in pi.word:
        if letter in minima:
            blocks.append([])
        blocks[-1].append(letter)
    where = {x: index for index, block in enumerate(blocks) for x in block}

    for index in range(len(blocks) - 1, -1, -1):
        for element in sorted(blocks[index])[1:]:
            if where[element - 1] <= index:
                _move(blocks, where, element, index, index + 1)

    return SetPartition.from_blocks(blocks)


# name -> (input kind, map, takes an index argument)
BIJECTIONS = {
    "prop0": ("partition", prop0_forward, False),
    "prop0-inv": ("permutation", prop0_inverse, False),
    "alpha": ("rgf", alpha, False),
    "beta": ("rgf", beta, False),
    "phi": ("permutation", phi, True),
    "phi-inv": ("permutation", phi_inverse, False),
    "psi": ("permutation", psi, True),
    "psi-inv": ("permutation", psi_inverse, False),
    "theta": ("partition", theta, False),
    "theta-inv": ("permutation", theta_inverse, False),
    "extend": ("rgf", canonical_extend, True),
    "rlmin-insert": ("permutation", rlmin_insert, False),
}


def apply_bijection(name, obj, i=None, target=None):
    """
    Apply a named bijection to a parsed object

    Args:
        name: Key of BIJECTIONS
        obj: Parsed input of the bijection's input kind
        i: Index argument of phi, psi and extend
        target: rlmin-insert target (Insertion.END or a value)

    Returns:
        The image; phi-inv and psi-inv return an (i, permutation) pair
    """
    try:
        _, function, takes_index = BIJECTIONS[name]
    except KeyError:
        raise InvalidObjectError(f"unknown bijection {name!r}")
    if takes_index:
        if i is None:
            raise InvalidObjectError(f"{name} needs an index i")
        return function(i, obj)
    if name == "rlmin-insert":
        if target is None:
            raise InvalidObjectError("rlmin-insert needs a target")
        return function(obj, target)
    return function(obj)
