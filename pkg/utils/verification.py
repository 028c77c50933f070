"""
Verification Module

This module runs the structural properties, bijection round trips, counting
identities, generation oracles and generating-function checks as named
suites. Exhaustive checks run up to min(nmax, their own bound); pure
counting identities run at fixed bounds independent of nmax.
"""

import logging
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial

from utils.bijections import (
    alpha,
    beta,
    canonical_extend,
    phi,
    phi_inverse,
    prop0_forward,
    prop0_inverse,
    psi,
    psi_inverse,
    rsp_split,
    theta,
    theta_inverse,
)
from utils.core import (
    CombinatoricsError,
    InvalidObjectError,
    RgfWord,
    canonical_form,
    flatten,
    is_in_T,
    is_merging_free,
    is_noncrossing,
    is_run_sorted,
    is_weakly_unimodal,
    lrmax_positions,
    lwmp_positions,
    partition_from_rgf,
    rlmin_count,
    rlmin_set,
    run_count,
    weak_maxima,
)
from utils.counting import (
    a_table,
    a_table_binomial,
    bell,
    ceil_half,
    dobinski_estimate,
    h_table,
    l_sequence,
    ncmf_polynomial,
    r_table,
    rsp_totals,
    stirling2,
)
from utils.generation import (
    generate_merging_free,
    generate_ncmf,
    generate_rgfs,
    generate_rsp,
    generate_rsp_by_rlmin,
    generate_separated,
    generate_set_partitions,
    generate_T,
    oracle_rsp,
    zero_u_rgfs,
)
from utils.limits import VERIFY_MAX_N, check_limit
from utils.series import TruncatedSeries3, bell_egf_check, egf_rhs, egf_runs_rhs, specialize_z_one

# Configure logger
logger = logging.getLogger(__name__)

SUITE_ORDER = ("core", "bijections", "counts", "generation", "egf")
SUITES = {name: [] for name in SUITE_ORDER}


class CheckFailed(Exception):
    """A property did not hold; the message names the first counterexample"""


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_jsonable(self):
        return {
            "suite": self.suite,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
        }


def check(suite):
    """Register a property check under a suite"""
    def register(function):
        SUITES[suite].append(function)
        return function
    return register


def expect(condition, message):
    if not condition:
        raise CheckFailed(message)


# Enumerations are shared between checks; every object is immutable.

@cache
def _partitions(n):
    return tuple(generate_set_partitions(n))


@cache
def _rgfs(n):
    return tuple(generate_rgfs(n))


@cache
def _T(n):
    return tuple(generate_T(n))


@cache
def _rsp(n):
    return generate_rsp(n)


@cache
def _oracle(n):
    return oracle_rsp(n)


def _sizes(nmax, bound, start=1):
    return range(start, min(nmax, bound) + 1)


# ---------------------------------------------------------------------------
# core
# ---------------------------------------------------------------------------

@check("core")
def rgf_round_trip(nmax):
    for n in _sizes(nmax, 10):
        for p in _partitions(n):
            expect(partition_from_rgf(canonical_form(p)) == p, f"round trip fails on {p}")


@check("core")
def flatten_is_run_sorted(nmax):
    for n in _sizes(nmax, 9):
        for p in _partitions(n):
            pi = flatten(p)
            expect(is_run_sorted(pi), f"flatten({p}) = {pi} is not run-sorted")
            expect(run_count(pi) <= p.k, f"flatten({p}) has more runs than blocks")
            expect(
                (run_count(pi) == p.k) == is_merging_free(p),
                f"run count of flatten({p}) disagrees with merging-freeness",
            )


@check("core")
def strict_maxima_are_weak(nmax):
    for n in _sizes(nmax, 9):
        for f in _rgfs(n):
            expect(lrmax_positions(f) <= lwmp_positions(f), f"strict maxima of {f} are not weak maxima")


@check("core")
def rlmin_equals_weak_maxima(nmax):
    for n in _sizes(nmax, 10):
        for p in _partitions(n):
            if not is_merging_free(p):
                continue
            f = canonical_form(p)
            expect(
                rlmin_set(flatten(p)) == lwmp_positions(f),
                f"right-to-left minima of flatten({p}) differ from weak maxima of {f}",
            )


@check("core")
def noncrossing_iff_unimodal(nmax):
    for n in _sizes(nmax, 10):
        for f in _T(n):
            p = partition_from_rgf(f)
            expect(
                is_noncrossing(p, verify=True) == is_weakly_unimodal(f),
                f"non-crossing and weak unimodality disagree on {f}",
            )


@check("core")
def run_bounds(nmax):
    for n in _sizes(nmax, 12):
        for pi in _rsp(n).permutations():
            expect(run_count(pi) <= ceil_half(n), f"{pi} has more than ceil(n/2) runs")
            expect(run_count(pi) <= rlmin_count(pi), f"{pi} has more runs than right-to-left minima")


# ---------------------------------------------------------------------------
# bijections
# ---------------------------------------------------------------------------

@check("bijections")
def prop0_round_trip(nmax):
    for n in _sizes(nmax, 9):
        images = set()
        for p in _partitions(n):
            pi = prop0_forward(p)
            expect(prop0_inverse(pi) == p, f"prop0 round trip fails on {p}")
            images.add(pi)
        expect(images == set(_oracle(n + 1).permutations()), f"prop0 image differs from RSP({n + 1})")


@check("bijections")
def alpha_beta_round_trip(nmax):
    for n in _sizes(nmax, 9):
        images = set()
        for f in _rgfs(n):
            g = alpha(f)
            expect(beta(g) == f, f"beta(alpha({f})) = {beta(g)}")
            expect(
                lrmax_positions(f) == weak_maxima(g.letters[1:]),
                f"strict maxima of {f} differ from weak maxima of {g} without its leading 1",
            )
            images.add(g)
        if n <= 8:
            expect(images == set(_T(n + 1)), f"alpha image differs from T_{n + 1}")
        for g in _T(n + 1):
            expect(alpha(beta(g)) == g, f"alpha(beta({g})) = {alpha(beta(g))}")


@check("bijections")
def run_recurrence_split(nmax):
    for n in _sizes(nmax, 9, start=2):
        family = _rsp(n)
        for k in range(1, ceil_half(n) + 1):
            first = Counter(phi(i, sigma) for sigma in _rsp(n - 1).cell(k) for i in range(1, k + 1))
            second = Counter()
            if n >= 3:
                second = Counter(
                    psi(i, pi) for pi in _rsp(n - 2).cell(k - 1) for i in range(1, n - 1)
                )
            expect(not set(first) & set(second), f"phi and psi images overlap in RSP({n},{k})")
            expect(
                first + second == Counter(family.cell(k)),
                f"phi and psi images do not partition RSP({n},{k})",
            )
            for pi in first:
                expect(rsp_split(pi) == 1, f"{pi} from phi is not in RSP1")
                i, sigma = phi_inverse(pi)
                expect(phi(i, sigma) == pi, f"phi_inverse fails on {pi}")
            for pi in second:
                expect(rsp_split(pi) == 2, f"{pi} from psi is not in RSP2")
                i, smaller = psi_inverse(pi)
                expect(psi(i, smaller) == pi, f"psi_inverse fails on {pi}")


@check("bijections")
def theta_round_trip(nmax):
    for n in _sizes(nmax, 9):
        for p in generate_separated(n):
            pi = theta(p)
            expect(is_run_sorted(pi), f"theta({p}) = {pi} is not run-sorted")
            expect(rlmin_count(pi) == p.k, f"theta({p}) has {rlmin_count(pi)} right-to-left minima")
            expect(theta_inverse(pi) == p, f"theta_inverse(theta({p})) = {theta_inverse(pi)}")


@check("bijections")
def canonical_extension(nmax):
    for n in _sizes(nmax, 9, start=3):
        for f in _T(n - 2):
            for i in range(1, n - 1):
                g = canonical_extend(i, f)
                expect(is_in_T(g), f"canonical_extend({i}, {f}) = {g} is not in T_{n}")
                expect(g.k == f.k + 1, f"canonical_extend({i}, {f}) does not add a block")
                truncated = RgfWord(g.letters[:-1])
                expect(not is_in_T(truncated), f"{truncated} unexpectedly lies in T_{n - 1}")


@check("bijections")
def extension_matches_psi(nmax):
    for n in _sizes(nmax, 8, start=3):
        extended = Counter()
        inserted = Counter()
        for f in _T(n - 2):
            pi = flatten(partition_from_rgf(f))
            for i in range(1, n - 1):
                extended[flatten(partition_from_rgf(canonical_extend(i, f)))] += 1
                inserted[psi(i, pi)] += 1
        expect(extended == inserted, f"canonical_extend and psi disagree at n={n}")


# ---------------------------------------------------------------------------
# counts
# ---------------------------------------------------------------------------

@check("counts")
def rsp_totals_are_bell(nmax):
    totals = rsp_totals(20)
    bells = bell(19)
    for n in range(2, 21):
        expect(totals[n] == bells[n - 1], f"r_{n} = {totals[n]} but b_{n - 1} = {bells[n - 1]}")


@check("counts")
def rlmin_table_is_shifted_stirling(nmax):
    h = h_table(20)
    s = stirling2(19)
    for n in range(1, 21):
        for r in range(1, n + 1):
            expect(h[n, r] == s[n - 1, r - 1], f"h_{n},{r} = {h[n, r]} but S({n - 1},{r - 1}) = {s[n - 1, r - 1]}")


@check("counts")
def joint_recurrences_agree(nmax):
    table = a_table(15)
    expect(table == a_table_binomial(15), "the two joint recurrences disagree")
    r = r_table(15)
    h = h_table(15)
    for n in range(1, 16):
        for k in range(1, ceil_half(n) + 1):
            total = sum(table[n, k, j] for j in range(1, n + 1))
            expect(total == r[n, k], f"sum over r of a_{n},{k},r is {total}, expected {r[n, k]}")
        for j in range(1, n + 1):
            total = sum(table[n, k, j] for k in range(1, ceil_half(n) + 1))
            expect(total == h[n, j], f"sum over k of a_{n},k,{j} is {total}, expected {h[n, j]}")
        for k in range(1, ceil_half(n) + 1):
            for j in range(1, k):
                expect(table[n, k, j] == 0, f"a_{n},{k},{j} is nonzero with r < k")


@check("counts")
def ncmf_totals(nmax):
    for n in range(2, 31):
        total = sum(ncmf_polynomial(n))
        expect(total == 2 ** (n - 2), f"non-crossing merging-free total at n={n} is {total}")


@check("counts")
def dobinski_converges(nmax):
    totals = rsp_totals(10)
    for n in range(1, 11):
        estimate = dobinski_estimate(n, 60)
        expect(abs(estimate - totals[n]) < 1e-6, f"Dobinski estimate {estimate} far from r_{n} = {totals[n]}")


def _blocks_big_enough(p):
    return all(len(block) >= 2 for block in p.blocks[:-1])


@check("counts")
def tables_match_enumeration(nmax):
    bound = min(nmax, 10)
    r = r_table(bound)
    h = h_table(bound)
    a = a_table(bound)
    l = l_sequence(bound)
    bells = bell(bound)
    for n in range(1, bound + 1):
        family = _rsp(n)
        for k in range(1, ceil_half(n) + 1):
            expect(len(family.cell(k)) == r[n, k], f"RSP({n},{k}) has {len(family.cell(k))} elements")
        joint = Counter((run_count(pi), rlmin_count(pi)) for pi in family.permutations())
        for (k, j), count in joint.items():
            expect(count == a[n, k, j], f"a_{n},{k},{j} = {a[n, k, j]} but enumeration gives {count}")
        expect(sum(joint.values()) == sum(a.values[key] for key in a.values if key[0] == n), f"a-table mass at n={n}")
        by_rlmin = Counter(rlmin_count(pi) for pi in family.permutations())
        for j in range(1, n + 1):
            expect(by_rlmin[j] == h[n, j], f"h_{n},{j} = {h[n, j]} but enumeration gives {by_rlmin[j]}")
        expect(len(_partitions(n)) == bells[n], f"b_{n} = {bells[n]} but enumeration gives {len(_partitions(n))}")
        expect(len(zero_u_rgfs(n)) == l[n], f"l_{n} = {l[n]} but {len(zero_u_rgfs(n))} RGFs have u = 0")
        big_blocks = sum(1 for p in _partitions(n) if _blocks_big_enough(p))
        expect(big_blocks == l[n], f"l_{n} = {l[n]} but {big_blocks} partitions meet the block-size condition")


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

@check("generation")
def dp_matches_table(nmax):
    bound = min(nmax, 12)
    r = r_table(bound)
    for n in range(1, bound + 1):
        family = _rsp(n)
        for k in range(1, ceil_half(n) + 1):
            cell = family.cell(k)
            expect(len(cell) == r[n, k], f"DP cell ({n},{k}) has {len(cell)} elements, expected {r[n, k]}")
            expect(len(set(cell)) == len(cell), f"DP cell ({n},{k}) has duplicates")
            for pi in cell:
                expect(is_run_sorted(pi) and run_count(pi) == k, f"{pi} does not belong in cell {k}")


@check("generation")
def dp_matches_oracle(nmax):
    for n in _sizes(nmax, 10):
        dp = _rsp(n)
        oracle = _oracle(n)
        for k in range(1, ceil_half(n) + 1):
            expect(Counter(dp.cell(k)) == Counter(oracle.cell(k)), f"DP and oracle differ at ({n},{k})")


@check("generation")
def rlmin_buckets(nmax):
    for n in _sizes(nmax, 11):
        family = generate_rsp_by_rlmin(n)
        h = h_table(n)
        expect(family.cell_sizes() == h.row(n, 1, n), f"rlmin bucket sizes at n={n} differ from h-table")
        everything = [pi for r in range(1, n + 1) for pi in family.cell(r)]
        expect(Counter(everything) == Counter(_oracle(n).permutations()), f"rlmin generation misses RSP({n})")


@check("generation")
def ncmf_enumeration(nmax):
    for n in _sizes(nmax, 12, start=2):
        partitions = generate_ncmf(n)
        expect(len(partitions) == 2 ** (n - 2), f"{len(partitions)} non-crossing merging-free partitions of [{n}]")
        histogram = Counter(p.k for p in partitions)
        expected = ncmf_polynomial(n)
        for t, count in enumerate(expected, start=1):
            expect(histogram[t] == count, f"{histogram[t]} non-crossing merging-free partitions of [{n}] with {t} blocks")


@check("generation")
def flatten_restricted_is_bijective(nmax):
    for n in _sizes(nmax, 10):
        images = [flatten(p) for p in generate_merging_free(n)]
        expect(len(set(images)) == len(images), f"flatten is not injective on merging-free partitions of [{n}]")
        expect(set(images) == set(_rsp(n).permutations()), f"flatten image differs from RSP({n})")
        expect(len(_T(n)) == len(images), f"|T_{n}| differs from the number of merging-free partitions")


@check("generation")
def class_sizes(nmax):
    bound = min(nmax, 10)
    bells = bell(bound)
    s = stirling2(bound)
    for n in range(2, bound + 1):
        separated = generate_separated(n)
        expect(len(separated) == bells[n - 1], f"{len(separated)} separated partitions of [{n}]")
        by_blocks = Counter(p.k for p in separated)
        for k, count in by_blocks.items():
            expect(count == s[n - 1, k - 1], f"{count} separated partitions of [{n}] with {k} blocks")


# ---------------------------------------------------------------------------
# egf
# ---------------------------------------------------------------------------

def _egf_bounds(nmax):
    nx = max(min(nmax, 10) - 1, 1)
    return nx, ceil_half(nx + 1), nx + 1


@check("egf")
def egf_matches_joint_table(nmax):
    nx, ny, nz = _egf_bounds(nmax)
    series = egf_rhs(nx, ny, nz)
    table = a_table(nx + 1)
    for m in range(nx + 1):
        for k in range(ny + 1):
            for r in range(nz + 1):
                value = series.egf_coeff(m, k, r)
                expect(value == table[m + 1, k, r], f"EGF gives {value} for a_{m + 1},{k},{r}, table has {table[m + 1, k, r]}")


@check("egf")
def egf_integrates_to_joint_table(nmax):
    nx, ny, nz = _egf_bounds(nmax)
    antiderivative = egf_rhs(nx, ny, nz).integrate_x()
    table = a_table(nx)
    for n in range(1, nx + 1):
        for k in range(ny + 1):
            for r in range(nz + 1):
                expect(antiderivative.egf_coeff(n, k, r) == table[n, k, r], f"integrated EGF differs at ({n},{k},{r})")


@check("egf")
def z_specialization(nmax):
    nx, ny, nz = _egf_bounds(nmax)
    specialized = specialize_z_one(egf_rhs(nx, ny, nz))
    runs = egf_runs_rhs(nx, ny)
    expect(specialized == runs, "z = 1 specialization differs from the run-only closed form")
    r = r_table(nx + 1)
    for m in range(nx + 1):
        for k in range(ny + 1):
            expect(runs.egf_coeff(m, k, 0) == r[m + 1, k], f"run-only EGF differs from r_{m + 1},{k}")


@check("egf")
def bell_specialization(nmax):
    nx = max(min(nmax, 10) - 1, 1)
    coefficients = bell_egf_check(nx)
    bells = bell(nx)
    totals = rsp_totals(nx + 1)
    for m, value in enumerate(coefficients):
        expect(value == bells[m], f"exp(e^x - 1) gives {value} for b_{m}")
        expect(value == totals[m + 1], f"exp(e^x - 1) gives {value}, r_{m + 1} = {totals[m + 1]}")


@check("egf")
def exp_inverse(nmax):
    bounds = (3, 2, 2)
    x = TruncatedSeries3.monomial(bounds, 1, 0, 0)
    y = TruncatedSeries3.monomial(bounds, 0, 1, 0)
    z = TruncatedSeries3.monomial(bounds, 0, 0, 1)
    for s in (x, x + y.scale(Fraction(1, 2)) - 3 * x * z, y * z - x * x + z.scale(Fraction(2, 3))):
        product = s.exp() * (-s).exp()
        expect(product == TruncatedSeries3.one(bounds), f"exp(s) exp(-s) != 1 for {s.terms()}")
    e = x.exp()
    expect(
        all(e.coeff(i, 0, 0) == Fraction(1, factorial(i)) for i in range(4)),
        "exp(x) coefficients are not 1/i!",
    )


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

def run_suite(suite, nmax):
    """
    Run one suite (or "all") with exhaustive checks capped at nmax

    Args:
        suite: One of core, bijections, counts, generation, egf, all
        nmax: Exhaustive bound, 1 <= nmax <= VERIFY_MAX_N

    Returns:
        list: CheckResult per property, in registration order
    """
    if suite != "all" and suite not in SUITES:
        raise InvalidObjectError(f"unknown suite {suite!r}")
    if isinstance(nmax, bool) or not isinstance(nmax, int) or nmax < 1:
        raise InvalidObjectError(f"nmax must be a positive integer, got {nmax!r}")
    check_limit("nmax", nmax, VERIFY_MAX_N)

    names = SUITE_ORDER if suite == "all" else (suite,)
    results = []
    for name in names:
        for function in SUITES[name]:
            started = time.perf_counter()
            passed, detail = True, ""
            try:
                function(nmax)
            except (CheckFailed, CombinatoricsError, AssertionError) as e:
                passed, detail = False, str(e)
            result = CheckResult(name, function.__name__, passed, detail, time.perf_counter() - started)
            if result.passed:
                logger.info(f"{name}/{result.name} passed in {result.seconds:.2f}s")
            else:
                logger.error(f"{name}/{result.name} failed: {result.detail}")
            results.append(result)
    return results
