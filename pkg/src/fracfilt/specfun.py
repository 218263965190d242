"""Scalar special functions tuned for the fractional filter formulas.

Everything in this module is written for the parameter ranges that actually
occur in the kernel and filter expressions: moderate polynomial orders, real
parameters, hypergeometric arguments on or near the unit interval, and purely
imaginary confluent arguments of moderate modulus.  The routines favour
predictable failure over silent inaccuracy: each one raises a specific
exception from :mod:`fracfilt.errors` when asked to leave its supported
region, instead of returning a number that merely looks plausible.

All functions are scalar.  Vectorization, where needed, happens at the call
sites with ``numpy`` loops over frequency or spatial grids; the per-point
cost is dominated by short series with explicit stopping rules.
"""

from __future__ import annotations

import cmath
import enum
import math

from .errors import ConvergenceError, DomainError, PoleError, ValidationError

# Stopping rule shared by all open-ended series in this module: a term must
# fall below SERIES_RTOL relative to the running sum SERIES_CONFIRM times in
# a row before the sum is accepted, and no series may run past
# SERIES_MAX_TERMS without raising ConvergenceError.
SERIES_RTOL = 1e-16
SERIES_CONFIRM = 3
SERIES_MAX_TERMS = 10000

# Beyond this modulus the alternating Kummer series loses all significant
# digits in double precision (partial sums grow like e^{|z|} before they
# cancel), so kummer_m refuses rather than degrade quietly.
KUMMER_MAX_ABS = 50.0

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def _nonpositive_int(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def gamma(x: float) -> float:
    """Gamma function on the real line.

    Lanczos approximation with g = 7 and nine coefficients, reflected onto
    x >= 0.5 through the sine formula.  Relative error stays a few units in
    the fifteenth digit over the ranges used by the filter code.

    Raises PoleError at the poles (x = 0, -1, -2, ...).
    """
    if _nonpositive_int(x):
        raise PoleError(f"gamma pole at x = {x:g}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return SQRT_TWO_PI * t ** (x + 0.5) * math.exp(-t) * acc


def rgamma(x: float) -> float:
    """Reciprocal gamma 1/Gamma(x); exactly zero at the poles of Gamma."""
    if _nonpositive_int(x):
        return 0.0
    return 1.0 / gamma(x)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1."""
    if k < 0:
        raise ValidationError(f"pochhammer index must be >= 0, got {k}")
    acc = 1.0
    for i in range(k):
        acc *= a + i
    return acc


class CutSide(enum.Enum):
    """Side of the negative real axis on which a power is evaluated."""

    PLUS_I0 = "+i0"
    MINUS_I0 = "-i0"


def complex_power(z: complex, nu: float, side: CutSide | None = None) -> complex:
    """z**nu on the branch -pi < arg z < pi, explicit about the cut.

    For z strictly on the negative real axis the principal value is
    ambiguous, and relying on the sign of a floating zero imaginary part is
    exactly the kind of silent convention slip this function exists to
    prevent.  The caller must then pass ``side``:

        (z + i0)^nu = e^{+i pi nu} (-z)^nu
        (z - i0)^nu = e^{-i pi nu} (-z)^nu

    Off the cut ``side`` is ignored.  z = 0 maps to 0 for nu > 0 and 1 for
    nu = 0; DomainError for nu < 0.
    """
    z = complex(z)
    if z == 0:
        if nu > 0.0:
            return 0j
        if nu == 0.0:
            return 1.0 + 0j
        raise DomainError("0**nu diverges for nu < 0")
    if z.imag == 0.0 and z.real < 0.0:
        if side is None:
            raise ValidationError(
                "z lies on the branch cut; pass side=CutSide.PLUS_I0 or "
                "side=CutSide.MINUS_I0 to pick a boundary value"
            )
        sign = 1.0 if side is CutSide.PLUS_I0 else -1.0
        return (-z.real) ** nu * cmath.exp(sign * 1j * math.pi * nu)
    return cmath.exp(nu * cmath.log(z))


def _terminating_index(*tops: float) -> int | None:
    """Smallest m with some top parameter equal to -m, if one exists."""
    best = None
    for p in tops:
        if _nonpositive_int(p) and -p <= SERIES_MAX_TERMS:
            m = int(-p)
            if best is None or m < best:
                best = m
    return best


def _check_bottom(c: float, m: int, name: str) -> None:
    # (c)_k appears in denominators for k = 1..m; a nonpositive integer c
    # with -c < m puts a zero there before the sum terminates.
    if _nonpositive_int(c) and -c < m:
        raise PoleError(
            f"{name} undefined: bottom parameter {c:g} hits a pole before "
            f"the series terminates at index {m}"
        )


def _gauss_series(a: float, b: float, c: float, z, kmax: int | None):
    total = 1.0
    term = 1.0
    below = 0
    limit = SERIES_MAX_TERMS if kmax is None else kmax
    for k in range(limit):
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        if kmax is None:
            if abs(term) < SERIES_RTOL * abs(total):
                below += 1
                if below >= SERIES_CONFIRM:
                    return total
            else:
                below = 0
    if kmax is None:
        raise ConvergenceError(
            f"2F1 series did not settle within {SERIES_MAX_TERMS} terms "
            f"(a={a:g}, b={b:g}, c={c:g}, |z|={abs(z):g})"
        )
    return total


def hyp2f1(a: float, b: float, c: float, z):
    """Gauss hypergeometric 2F1(a, b; c; z) for real parameters.

    Dispatch, in order:

    * a or b a nonpositive integer: exact terminating sum, any z (real or
      complex).  The bottom parameter may itself be a nonpositive integer
      as long as its pole sits beyond the termination index.
    * |z| <= 0.95: direct series (complex z allowed).
    * real z < -0.5: Pfaff map z -> z/(z-1) onto (0, 1), then recurse.
    * real 0.95 < z < 1: connection formula in powers of 1 - z.  Needs
      c - a - b away from the integers; the logarithmic cases are not
      implemented and raise ConvergenceError.
    * z = 1: Gauss summation, requires c - a - b > 0.

    Anything else (real z > 1 sits on the branch cut, large non-real z) is
    outside the supported region and raises DomainError.
    """
    m = _terminating_index(a, b)
    if m is not None:
        _check_bottom(c, m, "2F1")
        return _gauss_series(a, b, c, z, kmax=m)
    if _nonpositive_int(c):
        raise PoleError(f"2F1 undefined for bottom parameter c = {c:g}")

    if isinstance(z, complex) and z.imag != 0.0:
        if abs(z) <= 0.95:
            return _gauss_series(a, b, c, z, kmax=None)
        raise DomainError(
            f"2F1 supports non-real arguments only for |z| <= 0.95, got |z| = {abs(z):g}"
        )

    x = z.real if isinstance(z, complex) else float(z)
    if x < -0.5:
        # Pfaff: 2F1(a, b; c; x) = (1-x)^(-a) 2F1(a, c-b; c; x/(x-1)),
        # and x/(x-1) lands in (1/3, 1) where the other branches apply.
        return (1.0 - x) ** (-a) * hyp2f1(a, c - b, c, x / (x - 1.0))
    if abs(x) <= 0.95:
        return _gauss_series(a, b, c, x, kmax=None)
    if x < 1.0:
        return _connection_near_one(a, b, c, x)
    if x == 1.0:
        if c - a - b <= 0.0:
            raise DomainError(
                f"2F1 diverges at z = 1 for c - a - b = {c - a - b:g} <= 0"
            )
        return gamma(c) * gamma(c - a - b) * rgamma(c - a) * rgamma(c - b)
    raise DomainError(f"2F1 argument z = {x:g} lies on the branch cut [1, inf)")


def _connection_near_one(a: float, b: float, c: float, x: float):
    s = c - a - b
    if abs(s - round(s)) < 1e-8:
        raise ConvergenceError(
            f"2F1 near z = 1 needs non-integer c - a - b, got {s:g} "
            "(logarithmic case not implemented)"
        )
    w = 1.0 - x
    first = (
        gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b)
        * _gauss_series(a, b, 1.0 - s, w, kmax=None)
    )
    second = (
        gamma(c) * gamma(-s) * rgamma(a) * rgamma(b)
        * w ** s
        * _gauss_series(c - a, c - b, 1.0 + s, w, kmax=None)
    )
    return first + second


def hyp3f2_unit(a1: float, a2: float, a3: float, b1: float, b2: float,
                terms: int = SERIES_MAX_TERMS):
    """Terminating 3F2(a1, a2, a3; b1, b2; 1).

    One of the top parameters must be a nonpositive integer -m with
    m <= terms, otherwise ConvergenceError.  A bottom parameter whose pole
    lands before the termination index raises DomainError; the filter
    weight formulas are arranged so this cannot happen for valid orders.
    """
    m = _terminating_index(a1, a2, a3)
    if m is None or m > terms:
        raise ConvergenceError(
            f"3F2 top parameters ({a1:g}, {a2:g}, {a3:g}) give no "
            f"termination within {terms} terms"
        )
    for b in (b1, b2):
        if _nonpositive_int(b) and -b < m:
            raise DomainError(
                f"3F2 bottom parameter {b:g} vanishes before the series "
                f"terminates at index {m}"
            )
    total = 1.0
    term = 1.0
    for k in range(m):
        term *= (a1 + k) * (a2 + k) * (a3 + k) / ((b1 + k) * (b2 + k) * (k + 1))
        total += term
    return total


def kummer_m(a: float, c: float, z):
    """Confluent hypergeometric M(a, c; z) for real parameters.

    Terminating cases (a a nonpositive integer) are summed exactly for any
    z.  Otherwise the direct series is used for Re z >= 0 and the Kummer
    transformation M(a, c; z) = e^z M(c-a, c; -z) for Re z < 0, which keeps
    every term of the inner series positive-real-argument and well behaved.

    Arguments with |z| > KUMMER_MAX_ABS raise DomainError: the partial sums
    of the series reach about e^{|z|} before cancelling down to the answer,
    so double precision has lost the result long before that point.  Near
    the cap expect absolute accuracy around e^{|z|} * 1e-16 rather than
    relative accuracy.
    """
    if abs(z) > KUMMER_MAX_ABS:
        raise DomainError(
            f"kummer_m supports |z| <= {KUMMER_MAX_ABS:g}; got |z| = {abs(z):g} "
            "(series cancellation exhausts double precision)"
        )
    m = _terminating_index(a)
    if m is not None:
        _check_bottom(c, m, "M")
        return _kummer_series(a, c, z, kmax=m)
    if _nonpositive_int(c):
        raise PoleError(f"M undefined for bottom parameter c = {c:g}")
    re = z.real if isinstance(z, complex) else float(z)
    if re < 0.0:
        ez = cmath.exp(z) if isinstance(z, complex) else math.exp(z)
        return ez * kummer_m(c - a, c, -z)
    return _kummer_series(a, c, z, kmax=None)


def _kummer_series(a: float, c: float, z, kmax: int | None):
    total = 1.0
    term = 1.0
    below = 0
    limit = SERIES_MAX_TERMS if kmax is None else kmax
    for k in range(limit):
        term = term * (a + k) / ((c + k) * (k + 1)) * z
        total += term
        if kmax is None:
            if abs(term) < SERIES_RTOL * abs(total):
                below += 1
                if below >= SERIES_CONFIRM:
                    return total
            else:
                below = 0
    if kmax is None:
        raise ConvergenceError(
            f"Kummer series did not settle within {SERIES_MAX_TERMS} terms "
            f"(a={a:g}, c={c:g}, |z|={abs(z):g})"
        )
    return total


def _double_factorial_odd(n: int) -> float:
    """(2n+1)!! as a float."""
    acc = 1.0
    for k in range(1, n + 1):
        acc *= 2 * k + 1
    return acc


def _jn_series(n: int, x: float) -> float:
    # j_n(x) = x^n sum_k (-x^2/2)^k / (k! (2n+2k+1)!!); a handful of terms
    # suffice for |x| <= 1 and there is no cancellation to worry about.
    u = -0.5 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, 40):
        term *= u / (k * (2 * n + 2 * k + 1))
        total += term
        if abs(term) < SERIES_RTOL * abs(total):
            break
    return x ** n / _double_factorial_odd(n) * total


_JN_SERIES_CUTOFF = 1.0


def spherical_jn(n: int, x: float) -> float:
    """Spherical Bessel function of the first kind, j_n(x), real x, n >= 0.

    Closed trigonometric forms for n <= 3, upward recurrence for x > n,
    Miller's downward recurrence otherwise.  Small arguments switch to the
    power series: the trig forms subtract O(x^{-n-1}) quantities to produce
    an O(x^n) result and shed digits fast below |x| = 1.
    """
    if n < 0:
        raise ValidationError(f"spherical_jn order must be >= 0, got {n}")
    if x < 0.0:
        s = -1.0 if n % 2 else 1.0
        return s * spherical_jn(n, -x)
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x < _JN_SERIES_CUTOFF:
        return _jn_series(n, x)
    if n == 0:
        return math.sin(x) / x
    if n == 1:
        return math.sin(x) / (x * x) - math.cos(x) / x
    if n == 2:
        return (3.0 / (x * x) - 1.0) * math.sin(x) / x - 3.0 * math.cos(x) / (x * x)
    if n == 3:
        return ((15.0 / x ** 3 - 6.0 / x) * math.sin(x)
                - (15.0 / (x * x) - 1.0) * math.cos(x)) / x
    if x > n:
        jm, j = spherical_jn(2, x), spherical_jn(3, x)
        for k in range(3, n):
            jm, j = j, (2 * k + 1) / x * j - jm
        return j
    return _jn_downward(n, x)


def _jn_downward(n: int, x: float) -> float:
    # Miller's algorithm: seed the recurrence well above n with arbitrary
    # tiny values, run it downward (the stable direction for n > x), then
    # scale the whole sequence so the n = 0 entry matches sin(x)/x.
    start = n + 20 + int(x)
    jp = 0.0
    j = 1e-30
    out = 0.0
    for k in range(start, 0, -1):
        jm = (2 * k + 1) / x * j - jp
        jp, j = j, jm
        if k - 1 == n:
            out = j
        # renormalize on the fly so the sequence cannot overflow
        if abs(j) > 1e250:
            j *= 1e-250
            jp *= 1e-250
            out *= 1e-250
    return out * (math.sin(x) / x) / j


def spherical_jn_ratio(n: int, x: float) -> float:
    """j_n(x) / x^n, continued through x = 0 with value 1/(2n+1)!!.

    The transfer function of the n-th order smoothed differentiator is
    proportional to this ratio; evaluating it directly keeps the low
    frequency end of a sweep exact instead of dividing two underflowing
    quantities.
    """
    if n < 0:
        raise ValidationError(f"spherical_jn_ratio order must be >= 0, got {n}")
    ax = abs(x)
    if ax < _JN_SERIES_CUTOFF:
        u = -0.5 * x * x
        term = 1.0
        total = 1.0
        for k in range(1, 40):
            term *= u / (k * (2 * n + 2 * k + 1))
            total += term
            if abs(term) < SERIES_RTOL * abs(total):
                break
        return total / _double_factorial_odd(n)
    return spherical_jn(n, x) / x ** n
