"""FIR weights for fractional differentiation on uniform samples.

The taps come from least-squares fitting a degree-N discrete polynomial
(Hahn family) through N+1 forward samples and applying the fractional
derivative to the fit; the infinite backward tail is what turns the
approximation into an exact fractional operator.  Forward and backward
weights are kept separate because they truncate differently: the forward
set is finite by construction, the backward set decays algebraically and
is cut at M taps.

Everything is expressed through cancelled Pochhammer ratios so that no
individual factor overflows and integer orders come out exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .specfun import gamma, hyp3f2_unit

MAX_DEFAULT_HISTORY = 4096


def default_history(N: int, n: int, nu: float) -> int:
    """Backward tap count giving a truncation error small next to the
    forward part: 16*N inflated by 1/(n - nu) as the order approaches n
    (slower tail decay), capped at MAX_DEFAULT_HISTORY."""
    gap = min(1.0, n - nu + 1e-3)
    return max(1, min(MAX_DEFAULT_HISTORY, math.ceil(16.0 * N / gap)))


@dataclass(frozen=True)
class HahnFilterParams:
    """Design parameters of the discrete fractional differentiator.

    N+1 forward samples carry a degree-N fit, n is the underlying
    (integer) derivative order of the polynomial scheme, nu <= n the
    fractional order actually delivered, M the backward-history length.
    M=None picks default_history.
    """

    alpha: float
    beta: float
    N: int
    n: int
    nu: float
    delta: float
    M: int | None = None

    def __post_init__(self) -> None:
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise ValidationError(
                f"weight exponents must exceed -1, got alpha = {self.alpha:g}, "
                f"beta = {self.beta:g}"
            )
        if not (isinstance(self.N, int) and self.N >= 1):
            raise ValidationError(f"window degree N must be a positive integer, got {self.N!r}")
        if not (isinstance(self.n, int) and 1 <= self.n <= self.N):
            raise ValidationError(
                f"derivative order n must be an integer in 1..N = {self.N}, got {self.n!r}"
            )
        if self.nu > self.n:
            raise ValidationError(
                f"fractional order nu = {self.nu:g} exceeds the scheme order n = {self.n}"
            )
        if not self.delta > 0.0:
            raise ValidationError(f"sample step must be positive, got {self.delta:g}")
        if self.M is None:
            object.__setattr__(self, "M", default_history(self.N, self.n, self.nu))
        if not (isinstance(self.M, int) and self.M >= 1):
            raise ValidationError(f"history length M must be a positive integer, got {self.M!r}")


@dataclass(frozen=True, eq=False)
class FilterWeights:
    """Tap set of a two-sided FIR differentiator.

    forward[m] multiplies f(x + m*delta) for m = 0..N, backward[m-1]
    multiplies f(x - m*delta) for m = 1..M, and prefactor is the common
    gain (carries the delta**-nu scaling) applied to the whole sum.
    """

    forward: np.ndarray
    backward: np.ndarray
    prefactor: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "forward", np.asarray(self.forward, dtype=float))
        object.__setattr__(self, "backward", np.asarray(self.backward, dtype=float))
        if self.forward.ndim != 1 or self.forward.size < 1:
            raise ValidationError("forward taps must form a non-empty 1-d array")
        if self.backward.ndim != 1:
            raise ValidationError("backward taps must form a 1-d array")


def _poch_over_factorial(a: float, k: int) -> float:
    """(a)_k / k! as a running product; safe where either factor alone
    would overflow."""
    out = 1.0
    for i in range(1, k + 1):
        out *= (a + i - 1.0) / i
    return out


def _falling_ratio(nu: float, k: int) -> float:
    """(-nu)_k / k!, the fractional binomial coefficient."""
    out = 1.0
    for i in range(1, k + 1):
        out *= (i - 1.0 - nu) / i
    return out


def hahn_polynomial(n: int, j: float, alpha: float, beta: float, N: int) -> float:
    """Q_n(j) = 3F2(-n, n+alpha+beta+1, -j; alpha+1, -N; 1)."""
    if not 0 <= n <= N:
        raise ValidationError(f"polynomial degree n = {n} outside 0..N = {N}")
    return hyp3f2_unit(-float(n), n + alpha + beta + 1.0, -float(j), alpha + 1.0, -float(N))


def hahn_weight_function(j: int, alpha: float, beta: float, N: int) -> float:
    """Discrete orthogonality weight (alpha+1)_j (beta+1)_{N-j} / (j! (N-j)!)."""
    if not 0 <= j <= N:
        raise ValidationError(f"support point j = {j} outside 0..N = {N}")
    return _poch_over_factorial(alpha + 1.0, j) * _poch_over_factorial(beta + 1.0, N - j)


def hahn_normalization(alpha: float, beta: float, N: int, n: int) -> float:
    """k_n n!/h_n: leading coefficient times n! over the squared norm.

    This is the global gain of the filter (delta scaling excluded):
    (-1)^n G(2n+a+b+2) G(b+1) G(N+1) / (G(n+b+1) G(N+n+a+b+2)).
    """
    sign = -1.0 if n % 2 else 1.0
    top = 2.0 * n + alpha + beta + 2.0
    if N + n + alpha + beta + 2.0 < 170.0:
        return (
            sign * gamma(top) * gamma(beta + 1.0) * gamma(N + 1.0)
            / (gamma(n + beta + 1.0) * gamma(N + n + alpha + beta + 2.0))
        )
    log_val = (
        math.lgamma(top) + math.lgamma(beta + 1.0) + math.lgamma(N + 1.0)
        - math.lgamma(n + beta + 1.0) - math.lgamma(N + n + alpha + beta + 2.0)
    )
    return sign * math.exp(log_val)


def _j1_lead(alpha: float, beta: float, N: int, n: int) -> float:
    # (1+beta)_N / ((-N)_n (N-n)!) collapses to (-1)^n (1+beta)_N / N!
    sign = -1.0 if n % 2 else 1.0
    return sign * _poch_over_factorial(beta + 1.0, N)


def _j1_series(p: HahnFilterParams, m: int) -> float:
    return hyp3f2_unit(
        float(p.n - p.N),
        p.n + p.alpha + 1.0,
        m + p.n - p.nu,
        -float(p.N) - p.beta,
        float(m + p.n + 1),
    )


def j1_weight(p: HahnFilterParams, m: int) -> float:
    """Backward tap m >= 1 (coefficient of f(x - m*delta), gain excluded).

    The fractional binomial factor (-nu)_{m+n}/(m+n)! carries the
    O(m^(-nu-1)) tail decay; the terminating 3F2 tends to a constant.
    Vanishes identically for integer nu = n, which is what collapses the
    filter onto the one-sided backward difference.
    """
    if m < 1:
        raise ValidationError(f"backward taps start at m = 1, got {m}")
    return _j1_lead(p.alpha, p.beta, p.N, p.n) * _falling_ratio(p.nu, m + p.n) * _j1_series(p, m)


def j2_weight(p: HahnFilterParams, m: int) -> float:
    """Forward tap 0 <= m <= N (coefficient of f(x + m*delta), gain excluded).

    Evaluated as the reversed terminating sum
    lead * sum_i [(a+n+1)_{N-n-i}/(N-n-i)!] [(b+n+1)_i/i!] [(-nu)_{N-m-i}/(N-m-i)!],
    which stays well defined at integer nu where the hypergeometric-ratio
    rewriting degenerates.
    """
    if not 0 <= m <= p.N:
        raise ValidationError(f"forward taps run over m = 0..N = {p.N}, got {m}")
    # lead = (beta+1)_n / (-N)_n; (-N)_n = (-1)^n N (N-1) ... (N-n+1)
    sign = -1.0 if p.n % 2 else 1.0
    lead = sign * _poch_over_factorial(p.beta + 1.0, p.n) * math.factorial(p.n)
    for i in range(p.n):
        lead /= p.N - i
    a_top = p.alpha + p.n + 1.0
    b_top = p.beta + p.n + 1.0
    acc = 0.0
    i_max = min(p.N - m, p.N - p.n)
    for i in range(i_max + 1):
        acc += (
            _poch_over_factorial(a_top, p.N - p.n - i)
            * _poch_over_factorial(b_top, i)
            * _falling_ratio(p.nu, p.N - m - i)
        )
    return lead * acc


def hahn_weights(p: HahnFilterParams) -> FilterWeights:
    """Full tap set for the filter parameters.

    Backward taps share one running Pochhammer ratio so the batch costs
    O(M*N) instead of O(M^2); j1_weight/j2_weight remain the per-tap
    reference path.
    """
    forward = np.array([j2_weight(p, m) for m in range(p.N + 1)])
    backward = np.empty(p.M)
    lead = _j1_lead(p.alpha, p.beta, p.N, p.n)
    ratio = _falling_ratio(p.nu, p.n)
    for m in range(1, p.M + 1):
        ratio *= (m + p.n - 1.0 - p.nu) / (m + p.n)
        backward[m - 1] = lead * ratio * _j1_series(p, m)
    prefactor = hahn_normalization(p.alpha, p.beta, p.N, p.n) / p.delta ** p.nu
    return FilterWeights(forward=forward, backward=backward, prefactor=prefactor)


def gram_n1_weights(N: int, nu: float, delta: float, M: int) -> FilterWeights:
    """Closed-form taps for the first-order flat-weight scheme (alpha =
    beta = 0, n = 1), the workhorse configuration for sampled data.

    Same filter as hahn_weights at those parameters, but every tap is a
    two-term Gamma-ratio expression, so building even long histories is
    cheap and the round-off floor stays near machine precision.
    """
    if not (isinstance(N, int) and N >= 1):
        raise ValidationError(f"window degree N must be a positive integer, got {N!r}")
    if not (isinstance(M, int) and M >= 1):
        raise ValidationError(f"history length M must be a positive integer, got {M!r}")
    if not 0.0 <= nu <= 1.0:
        raise ValidationError(
            f"the first-order scheme covers orders 0 <= nu <= 1, got {nu:g}"
        )
    if not delta > 0.0:
        raise ValidationError(f"sample step must be positive, got {delta:g}")

    prefactor = 6.0 / (N * (N + 1.0) * (N + 2.0) * gamma(3.0 - nu) * delta ** nu)

    forward = np.empty(N + 1)
    # ratio(j) = G(j - nu + 2)/G(j + 1) walked up from j = 0
    ratio = gamma(2.0 - nu)
    for j in range(N + 1):
        m = N - j
        forward[m] = (2.0 * m - N * nu) * ratio
        ratio *= (j - nu + 2.0) / (j + 1.0)

    backward = np.empty(M)
    a = gamma(2.0 - nu)                      # G(m - nu + 1)/G(m) at m = 1
    for m in range(1, M + 1):
        # nominal tap is C1*G(m-nu+1)/G(m) - C2*G(N+m-nu+2)/G(N+m+1); the two
        # terms grow like m^(3/2) while their difference decays, so build the
        # small residual directly: with S = prod(1 + (1-nu)/(m+k)) - 1 over
        # k = 0..N the tap equals a * (2(N+1)(1-nu) - (2m + N nu) * S)
        s = 0.0
        for k in range(N + 1):
            e = (1.0 - nu) / (m + k)
            s += e + s * e
        backward[m - 1] = a * (2.0 * (N + 1.0) * (1.0 - nu) - (2.0 * m + N * nu) * s)
        a *= (m - nu + 1.0) / m
    return FilterWeights(forward=forward, backward=backward, prefactor=prefactor)


def apply_discrete_filter(signal, weights: FilterWeights, at_index: int) -> float:
    """Evaluate the filter at one sample position.

    Needs N samples of lookahead unconditionally; missing backward history
    is treated as zero only for causal signals, otherwise it is an error.
    """
    samples = signal.samples
    n_fwd = weights.forward.size - 1
    n_bwd = weights.backward.size
    if not 0 <= at_index < samples.size:
        raise ValidationError(
            f"index {at_index} outside the signal (length {samples.size})"
        )
    if at_index + n_fwd >= samples.size:
        raise ValidationError(
            f"filter needs {n_fwd} samples of lookahead at index {at_index}, "
            f"signal ends at {samples.size - 1}"
        )
    available = min(n_bwd, at_index)
    if available < n_bwd and not signal.causal:
        raise ValidationError(
            f"filter needs {n_bwd} samples of history at index {at_index}; "
            "only a causal signal may substitute zeros"
        )
    acc = float(weights.forward @ samples[at_index: at_index + n_fwd + 1])
    if available:
        history = samples[at_index - available: at_index][::-1]
        acc += float(weights.backward[:available] @ history)
    return weights.prefactor * acc


def export_taps(weights: FilterWeights, destination) -> None:
    """Write the taps as a plain two-column text table.

    Column 1 is the signed sample offset k (the tap multiplies
    f(x + k*delta)), column 2 the full coefficient with the prefactor
    folded in.  Accepts a path or an open text file.
    """
    own = not hasattr(destination, "write")
    stream = open(destination, "w", encoding="ascii") if own else destination
    try:
        stream.write("# discrete fractional-derivative taps\n")
        stream.write("# offset coefficient  (tap multiplies f(x + offset*delta))\n")
        for m in range(weights.backward.size, 0, -1):
            stream.write(f"{-m} {float(weights.prefactor * weights.backward[m - 1])!r}\n")
        for m in range(weights.forward.size):
            stream.write(f"{m} {float(weights.prefactor * weights.forward[m])!r}\n")
    finally:
        if own:
            stream.close()
