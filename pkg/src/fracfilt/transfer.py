"""Exact frequency responses of the fractional differentiators.

Every filter in this package convolves against a real kernel, so its
transfer function is known in closed form; this module evaluates those
forms, compares them against the ideal power-law response, and reduces
them to the handful of quality numbers (usable band, residual DC gain)
that decide whether a design is adequate.

Convention: the forward transform carries e^{+i omega x}, under which a
shift f(x - m delta) picks up e^{+i m omega delta} and the upper-limit
(decaying-functions) derivative has the response (i omega)^nu.  The
lower-limit operator is its conjugate; operators declare which side they
live on through the Convention enum.
"""

from __future__ import annotations

import cmath
import enum
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import FracfiltError, ValidationError
from .hahn import HahnFilterParams, gram_n1_weights
from .kernels import JacobiKernelParams
from .specfun import complex_power, gamma, hyp2f1, kummer_m, spherical_jn_ratio


class Convention(enum.Enum):
    """Which half line the operator integrates over."""

    WEYL = "weyl"
    RIEMANN_LIOUVILLE = "riemann_liouville"


class GridSpacing(enum.Enum):
    LINEAR = "linear"
    LOGARITHMIC = "logarithmic"


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Strictly increasing positive frequencies plus their spacing law."""

    points: np.ndarray
    spacing: GridSpacing

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float))
        if self.points.ndim != 1 or self.points.size == 0:
            raise ValidationError("grid needs a non-empty 1-d frequency array")
        if not np.all(self.points > 0.0):
            raise ValidationError("grid frequencies must be positive")
        if np.any(np.diff(self.points) <= 0.0):
            raise ValidationError("grid frequencies must increase strictly")

    @classmethod
    def linear(cls, lo: float, hi: float, count: int) -> "FrequencyGrid":
        return cls(np.linspace(lo, hi, count), GridSpacing.LINEAR)

    @classmethod
    def logarithmic(cls, lo: float, hi: float, count: int) -> "FrequencyGrid":
        if not 0.0 < lo < hi:
            raise ValidationError(f"need 0 < lo < hi, got {lo:g}, {hi:g}")
        return cls(
            np.logspace(math.log10(lo), math.log10(hi), count), GridSpacing.LOGARITHMIC
        )


@dataclass(frozen=True)
class TransferSample:
    """One evaluated grid point.  Points where the transfer evaluation
    failed stay in the record with valid=False and the reason in note."""

    omega: float
    value: complex
    valid: bool = True
    note: str = ""

    @property
    def modulus(self) -> float:
        return abs(self.value)

    @property
    def phase(self) -> float:
        return cmath.phase(self.value)

    @property
    def log10_omega(self) -> float:
        return math.log10(self.omega)

    @property
    def log10_modulus(self) -> float:
        m = self.modulus
        return math.log10(m) if m > 0.0 else -math.inf


def ideal_transfer(nu: float, omega: float, convention: Convention) -> complex:
    """Pure power law: (i omega)^nu upper-limit, (-i omega)^nu lower."""
    if convention is Convention.WEYL:
        return complex_power(1j * omega, nu)
    return complex_power(-1j * omega, nu)


def jacobi_transfer(
    params: JacobiKernelParams, omega: float, convention: Convention = Convention.WEYL
) -> complex:
    """Response of the continuous Jacobi-kernel differentiator:
    (i w)^nu e^(-i w delta) M(n+a+1, 2n+a+b+2; 2 i w delta).

    Confluent argument capped by the kummer_m validity range, so
    |2 w delta| <= 50; beyond that use legendre_transfer (Bessel form)
    when alpha = beta = 0."""
    a, b, n, nu, delta = params.alpha, params.beta, params.n, params.nu, params.delta
    value = (
        complex_power(1j * omega, nu)
        * cmath.exp(-1j * omega * delta)
        * kummer_m(n + a + 1.0, 2.0 * n + a + b + 2.0, 2j * omega * delta)
    )
    return value if convention is Convention.WEYL else value.conjugate()


def legendre_transfer(
    n: int, nu: float, delta: float, omega: float,
    convention: Convention = Convention.WEYL,
) -> complex:
    """Flat-weight (alpha = beta = 0) kernel response in spherical Bessel
    form: (i w)^nu (2n+1)!! j_n(w delta)/(w delta)^n.  Same function as
    jacobi_transfer at those parameters but valid for arbitrarily large
    frequency."""
    if not (isinstance(n, int) and n >= 1):
        raise ValidationError(f"scheme order n must be a positive integer, got {n!r}")
    if not delta > 0.0:
        raise ValidationError(f"step must be positive, got {delta:g}")
    coeff = gamma(2.0 * n + 2.0) / (2.0 ** n * gamma(n + 1.0))
    value = complex_power(1j * omega, nu) * coeff * spherical_jn_ratio(n, omega * delta)
    return value if convention is Convention.WEYL else value.conjugate()


def _hahn_gain(alpha: float, beta: float, N: int, n: int) -> float:
    # G(N+b+1) G(2n+a+b+2) / (G(n+b+1) G(N+n+a+b+2))
    if N + n + alpha + beta + 2.0 < 170.0:
        return (
            gamma(N + beta + 1.0) * gamma(2.0 * n + alpha + beta + 2.0)
            / (gamma(n + beta + 1.0) * gamma(N + n + alpha + beta + 2.0))
        )
    return math.exp(
        math.lgamma(N + beta + 1.0) + math.lgamma(2.0 * n + alpha + beta + 2.0)
        - math.lgamma(n + beta + 1.0) - math.lgamma(N + n + alpha + beta + 2.0)
    )


def hahn_transfer(params: HahnFilterParams, omega: float) -> complex:
    """Response of the untruncated discrete filter (backward history
    summed to infinity):

        B^nu e^(-i n w delta) * gain * 2F1(n-N, a+n+1; -b-N; e^(-i w delta)),

    B = (1 - e^(i w delta))/delta.  The 2F1 terminates after N - n + 1
    terms, so this is exact at any frequency; B^nu carries the fractional
    character and reduces to the backward-difference response at N = n.
    """
    n, nu, delta = params.n, params.nu, params.delta
    diff = (1.0 - cmath.exp(1j * omega * delta)) / delta
    return (
        complex_power(diff, nu)
        * cmath.exp(-1j * n * omega * delta)
        * _hahn_gain(params.alpha, params.beta, params.N, n)
        * hyp2f1(
            float(params.n - params.N),
            params.alpha + n + 1.0,
            -params.beta - float(params.N),
            cmath.exp(-1j * omega * delta),
        )
    )


@lru_cache(maxsize=16)
def _gram_taps(N: int, nu: float, delta: float, M: int):
    return gram_n1_weights(N, nu, delta, M)


def hahn_truncated_transfer(params: HahnFilterParams, omega: float) -> complex:
    """Response of the deliverable filter: backward history cut at M taps.

    Finite Fourier sum of the actual tap set (first-order flat-weight
    scheme only, where the taps have closed Gamma-ratio forms).  Tends to
    hahn_transfer as M grows; at omega = 0 it exposes the residual DC gain
    that the truncation leaves behind."""
    if params.n != 1 or params.alpha != 0.0 or params.beta != 0.0:
        raise ValidationError(
            "truncated response is implemented for the first-order flat-weight "
            "scheme (n = 1, alpha = beta = 0)"
        )
    w = _gram_taps(params.N, params.nu, params.delta, params.M)
    phase = 1j * omega * params.delta
    back = np.exp(phase * np.arange(1, w.backward.size + 1))
    fore = np.exp(-phase * np.arange(w.forward.size))
    return w.prefactor * complex(w.backward @ back + w.forward @ fore)


def gl_transfer(nu: float, delta: float, omega: float) -> complex:
    """Backward-difference response ((1 - e^(i w delta))/delta)^nu; tends
    to (-i w)^nu as delta -> 0."""
    if not delta > 0.0:
        raise ValidationError(f"step must be positive, got {delta:g}")
    return complex_power((1.0 - cmath.exp(1j * omega * delta)) / delta, nu)


def butterworth_fractional_transfer(
    nu: float, n: int, omega0: float, omega: float
) -> complex:
    """Fractional differentiator shaped by a 2n-pole low-pass roll-off:
    (-i w)^nu / (1 + (w/w0)^(2n))."""
    if not (isinstance(n, int) and n >= 1):
        raise ValidationError(f"filter order n must be a positive integer, got {n!r}")
    if not omega0 > 0.0:
        raise ValidationError(f"corner frequency must be positive, got {omega0:g}")
    return complex_power(-1j * omega, nu) / (1.0 + (omega / omega0) ** (2 * n))


def truncated_dc_gain(N: int, nu: float, delta: float, M: int) -> float:
    """Closed form for the truncated filter's response at omega = 0.

    Algebraically identical to summing the taps, but arranged so the big
    cancellations happen symbolically: one fractional Gamma ratio times a
    small bracket whose pieces are O(M) products.  Decays like M^(-nu)."""
    if not (isinstance(N, int) and N >= 1 and isinstance(M, int) and M >= 1):
        raise ValidationError(f"need positive integers N, M; got N = {N!r}, M = {M!r}")
    if not 0.0 <= nu <= 1.0:
        raise ValidationError(f"first-order scheme covers 0 <= nu <= 1, got {nu:g}")
    if not delta > 0.0:
        raise ValidationError(f"step must be positive, got {delta:g}")
    pref = 6.0 / (N * (N + 1.0) * (N + 2.0) * gamma(4.0 - nu) * delta ** nu)
    if M < 160:
        outer = gamma(M - nu + 2.0) / gamma(float(M))
    else:
        outer = math.exp(math.lgamma(M - nu + 2.0) - math.lgamma(float(M)))
    # nominal bracket is (N - 2M - N nu) * prod((M-nu+2+k)/(M+k)) + (3-nu)N
    # + 2(M-nu+2): two O(M) pieces cancelling to O(M^-2).  With the product
    # written as 1 + s, s = prod(1 + (2-nu)/(M+k)) - 1, and s split into its
    # linear part s1 = sum (2-nu)/(M+k) plus the cross terms p = s - s1, the
    # same bracket regroups into three O(N^2/M) pieces with no cancellation:
    #   2(2-nu) sum k/(M+k)  +  N(1-nu) s1  +  (N - 2M - N nu) p
    s = 0.0
    s1 = 0.0
    t1 = 0.0
    for k in range(N + 1):
        e = (2.0 - nu) / (M + k)
        s += e + s * e
        s1 += e
        t1 += k / (M + k)
    inner = (2.0 * (2.0 - nu) * t1 + N * (1.0 - nu) * s1
             + (N - 2.0 * M - N * nu) * (s - s1))
    return pref * outer * inner


@dataclass(frozen=True)
class FilterMetrics:
    """Usable-band summary of a truncated first-order filter.

    h_zero is the residual response modulus at DC; omega_lower the
    frequency where the power law crosses that floor (below it the filter
    output is mostly truncation residue), with a one-decade practical
    margin; omega_max the small-omega validity edge of the window scheme;
    bandwidth their difference when the band is non-empty, else None.
    """

    h_zero: float
    omega_lower: float
    omega_lower_practical: float
    omega_max: float
    bandwidth: float | None


def filter_metrics(params: HahnFilterParams) -> FilterMetrics:
    """Quality metrics for the truncated first-order flat-weight filter."""
    if params.n != 1 or params.alpha != 0.0 or params.beta != 0.0:
        raise ValidationError(
            "metrics are defined for the first-order flat-weight scheme "
            "(n = 1, alpha = beta = 0)"
        )
    N, nu, delta, M = params.N, params.nu, params.delta, params.M
    if not 0.0 < nu <= 1.0:
        raise ValidationError(f"metrics need a fractional order 0 < nu <= 1, got {nu:g}")
    h_zero = abs(truncated_dc_gain(N, nu, delta, M))
    omega_lower = h_zero ** (1.0 / nu)
    d = 6.0 * N + nu + 6.0 * N * nu + N * N * nu + N * N + 9.0
    omega_max = 2.0 * math.sqrt(6.0) / delta * math.sqrt((1.0 - nu) / d)
    bandwidth = omega_max - omega_lower if omega_lower < omega_max else None
    return FilterMetrics(
        h_zero=h_zero,
        omega_lower=omega_lower,
        omega_lower_practical=10.0 * omega_lower,
        omega_max=omega_max,
        bandwidth=bandwidth,
    )


def sweep(transfer, grid: FrequencyGrid) -> list[TransferSample]:
    """Evaluate a transfer closure over the grid.

    Failures (unsupported frequency range, branch problems) poison the
    individual point, flagged with the reason, rather than shortening the
    output: a sweep always has exactly one sample per grid frequency."""
    out: list[TransferSample] = []
    for w in grid.points:
        w = float(w)
        try:
            out.append(TransferSample(omega=w, value=complex(transfer(w))))
        except FracfiltError as exc:
            out.append(
                TransferSample(
                    omega=w, value=complex(math.nan, math.nan),
                    valid=False, note=str(exc),
                )
            )
    return out


def fit_loglog_slope(
    samples: list[TransferSample], window: tuple[float, float] | None = None
) -> float:
    """Least-squares slope of log10|H| against log10 omega.

    Default window is the lowest decade of the valid samples, where the
    power-law exponent of a differentiator shows up undisturbed."""
    usable = [s for s in samples if s.valid and s.modulus > 0.0]
    if not usable:
        raise ValidationError("no valid samples with nonzero modulus to fit")
    if window is None:
        lo = usable[0].omega
        window = (lo, 10.0 * lo)
    inside = [s for s in usable if window[0] <= s.omega <= window[1]]
    if len(inside) < 2:
        raise ValidationError(
            f"need at least two samples inside the fit window {window}, "
            f"got {len(inside)}"
        )
    x = np.array([s.log10_omega for s in inside])
    y = np.array([s.log10_modulus for s in inside])
    return float(np.polyfit(x, y, 1)[0])


def write_sweep_text(samples, destination, metadata: dict | None = None) -> None:
    """Columnar text: omega, Re H, Im H, |H|, arg H, valid flag, with the
    run metadata as leading comment lines."""
    own = not hasattr(destination, "write")
    stream = open(destination, "w", encoding="ascii") if own else destination
    try:
        for key in sorted(metadata or {}):
            stream.write(f"# {key} = {metadata[key]}\n")
        stream.write("# columns: omega re_h im_h abs_h arg_h valid\n")
        for s in samples:
            stream.write(
                f"{s.omega!r} {s.value.real!r} {s.value.imag!r} "
                f"{s.modulus!r} {s.phase!r} {int(s.valid)}\n"
            )
    finally:
        if own:
            stream.close()


def write_sweep_json(samples, destination, metadata: dict) -> None:
    """Same data as the text writer plus per-point notes, as one JSON
    document.  Content is a pure function of inputs: no timestamps, and
    the run id comes in through the metadata."""
    doc = {
        "metadata": metadata,
        "samples": [
            {
                "omega": s.omega,
                "re": s.value.real,
                "im": s.value.imag,
                "abs": s.modulus,
                "arg": s.phase,
                "valid": s.valid,
                "note": s.note,
            }
            for s in samples
        ],
    }
    own = not hasattr(destination, "write")
    stream = open(destination, "w", encoding="ascii") if own else destination
    try:
        json.dump(doc, stream, indent=2, sort_keys=True)
        stream.write("\n")
    finally:
        if own:
            stream.close()
