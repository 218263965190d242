"""Reference fractional operators.

These are the oracles the rest of the package is checked against: exact
power-law actions of the fractional integral, a direct quadrature for the
integral definition, and the fractional backward difference with
binomial-type coefficients.  They are deliberately plain; nothing here is
tuned for speed beyond what correctness requires.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import ConvergenceError, PoleError, ValidationError
from .specfun import gamma

# rl_integral_numeric refuses to return a value whose quadrature error
# estimate exceeds this relative level.
RL_QUAD_RTOL = 1e-8


@dataclass(frozen=True)
class FractionalOrder:
    """Bookkeeping for a differentiation order nu = n - mu.

    n is the smallest integer strictly greater than nu, so mu = n - nu is
    always in (0, 1].  An exact integer order deliberately takes the
    fractional route with n = nu + 1: differentiating once more than nu and
    integrating the excess is how every identity in this package treats
    integer orders, and keeping that path exercised is the point.
    """

    nu: float

    def __post_init__(self) -> None:
        if not self.nu > 0.0:
            raise ValidationError(f"order must be positive, got nu = {self.nu:g}")

    @property
    def n(self) -> int:
        return int(math.floor(self.nu)) + 1

    @property
    def mu(self) -> float:
        return self.n - self.nu


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Uniformly sampled function values f(x0 + k*delta), k = 0..len-1.

    causal=True declares f identically zero before x0, which is what makes
    backward fractional sums finite; with causal=False the available
    history is exactly the stored samples and nothing more is assumed.
    """

    x0: float
    delta: float
    samples: np.ndarray
    causal: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=float))
        if not self.delta > 0.0:
            raise ValidationError(f"sample step must be positive, got {self.delta:g}")
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise ValidationError("samples must be a non-empty one-dimensional array")

    def __len__(self) -> int:
        return int(self.samples.size)

    def position(self, index: int) -> float:
        return self.x0 + index * self.delta


def _nonpositive_int(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _gamma_ratio(top: float, bottom: float) -> float:
    """Gamma(top)/Gamma(bottom) with pole bookkeeping.

    A pole in the denominator alone kills the ratio (returns 0); poles in
    both arguments leave the finite limit (-1)^(bottom-top) *
    Gamma(1-bottom)/Gamma(1-top); a pole in the numerator alone is a real
    singularity and raises PoleError.
    """
    top_pole = _nonpositive_int(top)
    bottom_pole = _nonpositive_int(bottom)
    if top_pole and bottom_pole:
        k = round(bottom - top)
        sign = -1.0 if k % 2 else 1.0
        return sign * gamma(1.0 - bottom) / gamma(1.0 - top)
    if top_pole:
        raise PoleError(f"gamma ratio G({top:g})/G({bottom:g}) is singular")
    if bottom_pole:
        return 0.0
    return gamma(top) / gamma(bottom)


def rl_power(alpha: float, mu: float, x: float, extended: bool = False) -> float:
    """Fractional integral of order mu acting on the power x**alpha.

    Returns Gamma(alpha+1)/Gamma(alpha+mu+1) * x**(alpha+mu); negative mu
    is the fractional derivative of order -mu.  The classical coefficient
    requires alpha > -1; extended=True switches to the analytic
    continuation Gamma(-alpha-mu)/Gamma(-alpha) * x**(alpha+mu) that
    covers exponents alpha <= -1 (the decaying-power regime).
    """
    if not x > 0.0:
        raise ValidationError(f"power actions need x > 0, got x = {x:g}")
    if extended:
        coeff = _gamma_ratio(-alpha - mu, -alpha)
    else:
        coeff = _gamma_ratio(alpha + 1.0, alpha + mu + 1.0)
    return coeff * x ** (alpha + mu)


def weyl_power(alpha: float, mu: float, x: float) -> float:
    """Upper-limit fractional integral of order mu acting on x**alpha.

    Returns Gamma(-alpha-mu)/Gamma(-alpha) * x**(alpha+mu), finite for the
    decaying powers (alpha + mu < 0) where the integral from above
    converges.  The ratio weyl_power/rl_power equals
    sin(pi*alpha)/sin(pi*(alpha+mu)) wherever both make sense.
    """
    if not x > 0.0:
        raise ValidationError(f"power actions need x > 0, got x = {x:g}")
    return _gamma_ratio(-alpha - mu, -alpha) * x ** (alpha + mu)


def rl_integral_numeric(f, mu: float, x: float, lower: float) -> float:
    """(1/Gamma(mu)) * integral of f(y) (x-y)^(mu-1) over [lower, x].

    The endpoint singularity of the weight is removed by substituting
    y = x - t^(1/mu), which turns weight times Jacobian into a constant;
    an ordinary adaptive quadrature then handles the smooth remainder.
    """
    if not mu > 0.0:
        raise ValidationError(f"integral order must be positive, got mu = {mu:g}")
    if x < lower:
        raise ValidationError(f"upper limit {x:g} below lower limit {lower:g}")
    if x == lower:
        return 0.0
    span = (x - lower) ** mu
    inv_mu = 1.0 / mu

    def regular(t: float) -> float:
        return f(x - t ** inv_mu)

    value, err = integrate.quad(regular, 0.0, span, limit=200)
    norm = mu * gamma(mu)
    value /= norm
    err /= norm
    if err > RL_QUAD_RTOL * max(abs(value), 1e-30) and err > 1e-13:
        raise ConvergenceError(
            f"quadrature error estimate {err:.2e} exceeds the relative "
            f"target {RL_QUAD_RTOL:g} (value {value:.6e})"
        )
    return value


def gl_coefficients(nu: float, count: int) -> np.ndarray:
    """First `count` backward-difference coefficients (-nu)_k / k!.

    Computed by the recurrence c_0 = 1, c_k = c_{k-1} (k-1-nu)/k, which is
    stable, overflow-free, and terminates exactly at integer nu.
    """
    if count < 1:
        raise ValidationError(f"need at least one coefficient, got count = {count}")
    c = np.empty(count)
    c[0] = 1.0
    for k in range(1, count):
        c[k] = c[k - 1] * (k - 1.0 - nu) / k
    return c


def gl_difference(signal: SampledSignal, nu: float, at_index: int, terms: int) -> float:
    """Scaled fractional backward difference at one sample.

    delta^(-nu) * sum_{k=0}^{terms-1} [(-nu)_k / k!] f(x - k delta).
    Negative nu turns the difference into the fractional summation.  For a
    causal signal the sum is silently capped at the available history
    (everything earlier is zero by definition); for a non-causal signal a
    window reaching past the first sample is an error, never a guess.
    """
    if terms < 1:
        raise ValidationError(f"terms must be >= 1, got {terms}")
    if not 0 <= at_index < len(signal):
        raise ValidationError(
            f"index {at_index} outside the signal (length {len(signal)})"
        )
    if signal.causal:
        terms = min(terms, at_index + 1)
    elif terms - 1 > at_index:
        raise ValidationError(
            f"difference window of {terms} samples runs past the start of a "
            "non-causal signal; shorten it or mark the signal causal"
        )
    coeffs = gl_coefficients(nu, terms)
    window = signal.samples[at_index - terms + 1: at_index + 1][::-1]
    return float(coeffs @ window) / signal.delta ** nu
