"""
Series Module

This module expands the closed-form exponential generating function of the
joint run / right-to-left minima distribution as an exact truncated power
series in three variables.

A TruncatedSeries3 keeps every coefficient of x^i y^j z^l with i <= Nx,
j <= Ny, l <= Nz as a Fraction; products drop everything outside that box.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial
from numbers import Rational

from utils.core import InvalidObjectError
from utils.limits import SERIES_MAX_BOUND, check_limit

# Configure logger
logger = logging.getLogger(__name__)


def _check_bounds(bounds):
    bounds = tuple(bounds)
    if len(bounds) != 3:
        raise InvalidObjectError(f"series bounds need three entries, got {bounds!r}")
    for bound in bounds:
        if isinstance(bound, bool) or not isinstance(bound, int) or bound < 0:
            raise InvalidObjectError(f"series bounds must be non-negative integers, got {bounds!r}")
    return bounds


def _size(bounds):
    nx, ny, nz = bounds
    return (nx + 1) * (ny + 1) * (nz + 1)


@dataclass(frozen=True)
class TruncatedSeries3:
    """
    Exact power series in x, y, z truncated per variable

    coeffs is the dense row-major coefficient box, index (i, j, l) at
    (i * (Ny + 1) + j) * (Nz + 1) + l.
    """
    bounds: tuple
    coeffs: tuple

    def __post_init__(self):
        bounds = _check_bounds(self.bounds)
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != _size(bounds):
            raise InvalidObjectError(
                f"{len(coeffs)} coefficients do not fill a box with bounds {bounds}"
            )
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "coeffs", coeffs)

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, bounds):
        return cls(bounds, (Fraction(0),) * _size(_check_bounds(bounds)))

    @classmethod
    def from_terms(cls, bounds, terms):
        """
        Build a series from a {(i, j, l): coefficient} mapping

        Terms outside the bounds are dropped.
        """
        bounds = _check_bounds(bounds)
        coeffs = [Fraction(0)] * _size(bounds)
        for (i, j, l), value in terms.items():
            if min(i, j, l) < 0:
                raise InvalidObjectError(f"negative exponent in term {(i, j, l)}")
            if i <= bounds[0] and j <= bounds[1] and l <= bounds[2]:
                coeffs[cls._offset(bounds, i, j, l)] += Fraction(value)
        return cls(bounds, tuple(coeffs))

    @classmethod
    def one(cls, bounds):
        return cls.from_terms(bounds, {(0, 0, 0): 1})

    @classmethod
    def monomial(cls, bounds, i, j, l, coefficient=1):
        return cls.from_terms(bounds, {(i, j, l): coefficient})

    @staticmethod
    def _offset(bounds, i, j, l):
        _, ny, nz = bounds
        return (i * (ny + 1) + j) * (nz + 1) + l

    # -- access -------------------------------------------------------------

    def coeff(self, i, j, l):
        """Coefficient of x^i y^j z^l; 0 outside the box"""
        nx, ny, nz = self.bounds
        if 0 <= i <= nx and 0 <= j <= ny and 0 <= l <= nz:
            return self.coeffs[self._offset(self.bounds, i, j, l)]
        return Fraction(0)

    def egf_coeff(self, i, j, l):
        """Coefficient of x^i y^j z^l multiplied by i!"""
        return self.coeff(i, j, l) * factorial(i)

    def terms(self):
        """Nonzero coefficients as {(i, j, l): Fraction}"""
        nx, ny, nz = self.bounds
        return {
            index: value
            for index, value in zip(product(range(nx + 1), range(ny + 1), range(nz + 1)), self.coeffs)
            if value
        }

    def is_zero(self):
        return not any(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries3):
            if other.bounds != self.bounds:
                raise InvalidObjectError(f"bound mismatch: {self.bounds} vs {other.bounds}")
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return TruncatedSeries3.from_terms(self.bounds, {(0, 0, 0): other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TruncatedSeries3(self.bounds, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries3(self.bounds, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        factor = Fraction(factor)
        return TruncatedSeries3(self.bounds, tuple(c * factor for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented

        nx, ny, nz = self.bounds
        left = self.terms()
        right = other.terms()
        coeffs = [Fraction(0)] * len(self.coeffs)
        for (i1, j1, l1), a in left.items():
            for (i2, j2, l2), b in right.items():
                i, j, l = i1 + i2, j1 + j2, l1 + l2
                if i <= nx and j <= ny and l <= nz:
                    coeffs[self._offset(self.bounds, i, j, l)] += a * b
        return TruncatedSeries3(self.bounds, tuple(coeffs))

    __rmul__ = __mul__

    def exp(self):
        """
        exp(s) = sum_{m=0}^{M} s^m / m! with M = Nx + Ny + Nz

        Raises:
            InvalidObjectError: if the constant term is nonzero
        """
        if self.coeffs[0]:
            raise InvalidObjectError(f"exp needs a zero constant term, got {self.coeffs[0]}")
        result = TruncatedSeries3.one(self.bounds)
        term = result
        for m in range(1, sum(self.bounds) + 1):
            term = (term * self).scale(Fraction(1, m))
            if term.is_zero():
                break
            result = result + term
        return result

    def integrate_x(self):
        """Antiderivative in x with zero constant of integration, truncated at Nx"""
        nx, _, _ = self.bounds
        terms = {
            (i + 1, j, l): value / (i + 1)
            for (i, j, l), value in self.terms().items()
            if i + 1 <= nx
        }
        return TruncatedSeries3.from_terms(self.bounds, terms)

    def to_jsonable(self):
        return {
            "bounds": list(self.bounds),
            "terms": [[i, j, l, str(value)] for (i, j, l), value in sorted(self.terms().items())],
        }


def series_add(a, b):
    return a + b


def series_mul(a, b):
    """Cauchy product truncated to the shared bounds"""
    return a * b


def series_scale(s, factor):
    return s.scale(factor)


def series_exp(s):
    return s.exp()


def _exp_x(bounds):
    """e^x truncated at x^Nx"""
    return TruncatedSeries3.from_terms(bounds, {(i, 0, 0): Fraction(1, factorial(i)) for i in range(bounds[0] + 1)})


def _require_bound(name, value, low):
    if isinstance(value, bool) or not isinstance(value, int) or value < low:
        raise InvalidObjectError(f"{name} must be an integer >= {low}, got {value!r}")
    check_limit(name, value, SERIES_MAX_BOUND)


def egf_rhs(nx, ny, nz):
    """
    Expand yz * exp(xz + yz(e^x - x - 1))

    This is the x-derivative of the trivariate generating function, so
    egf_coeff(m, k, r) equals a_{m+1,k,r}.

    Args:
        nx, ny, nz: Truncation bounds (each at least 1)

    Returns:
        TruncatedSeries3
    """
    _require_bound("nx", nx, 1)
    _require_bound("ny", ny, 1)
    _require_bound("nz", nz, 1)
    bounds = (nx, ny, nz)

    x = TruncatedSeries3.monomial(bounds, 1, 0, 0)
    y = TruncatedSeries3.monomial(bounds, 0, 1, 0)
    z = TruncatedSeries3.monomial(bounds, 0, 0, 1)
    argument = x * z + y * z * (_exp_x(bounds) - x - 1)
    logger.debug(f"Expanding EGF right-hand side with bounds {bounds}")
    return y * z * argument.exp()


def egf_runs_rhs(nx, ny):
    """
    Expand y * exp(x + y(-x - 1) + y e^x), the run-only specialization

    egf_coeff(m, k, 0) equals r_{m+1,k}.
    """
    _require_bound("nx", nx, 1)
    _require_bound("ny", ny, 1)
    bounds = (nx, ny, 0)

    x = TruncatedSeries3.monomial(bounds, 1, 0, 0)
    y = TruncatedSeries3.monomial(bounds, 0, 1, 0)
    argument = x + y * (-x - 1) + y * _exp_x(bounds)
    return y * argument.exp()


def specialize_z_one(s):
    """
    Set z = 1, summing over the z exponent

    Exact only when Nz is large enough that no coefficient was truncated in z.
    """
    nx, ny, nz = s.bounds
    terms = {}
    for (i, j, _), value in s.terms().items():
        terms[i, j, 0] = terms.get((i, j, 0), Fraction(0)) + value
    return TruncatedSeries3.from_terms((nx, ny, 0), terms)


def bell_egf_check(nx):
    """
    Coefficients of exp(e^x - 1) scaled by m!, for m = 0..nx

    Returns:
        list: the Bell numbers b_0..b_nx as Fractions
    """
    _require_bound("nx", nx, 1)
    bounds = (nx, 0, 0)
    series = (_exp_x(bounds) - 1).exp()
    return [series.egf_coeff(m, 0, 0) for m in range(nx + 1)]
