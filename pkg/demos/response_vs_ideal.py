"""Frequency responses of the windowed half-derivative filters next to
the ideal power law omega^0.5.

Longer windows follow the power law over a narrower band but roll off
faster past the band edge, which is the whole point of the window:
high-frequency noise is attenuated instead of amplified.  Writes a
log-log plot to response_vs_ideal.png when matplotlib is available,
prints a table either way.
"""

import numpy as np

from fracfilt import (
    Convention,
    FrequencyGrid,
    HahnFilterParams,
    fit_loglog_slope,
    hahn_transfer,
    ideal_transfer,
    sweep,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

WINDOWS = (1, 4, 16)


def main():
    grid = FrequencyGrid.logarithmic(1e-2, np.pi, 121)
    curves = {"ideal": sweep(
        lambda w: ideal_transfer(0.5, w, Convention.RIEMANN_LIOUVILLE), grid)}
    for N in WINDOWS:
        params = HahnFilterParams(alpha=0.0, beta=0.0, N=N, n=1, nu=0.5, delta=1.0)
        curves[f"N={N}"] = sweep(lambda w, p=params: hahn_transfer(p, w), grid)

    probes = (0.02, 0.2, 1.0, 2.5)
    print("        " + "".join(f"  |H({w:g})|  " for w in probes) + "low-band slope")
    for label, samples in curves.items():
        moduli = {s.omega: s.modulus for s in samples}
        row = "".join(
            f"  {min(moduli.items(), key=lambda kv: abs(kv[0] - w))[1]:.5f} "
            for w in probes
        )
        slope = fit_loglog_slope(samples, (1e-2, 1e-1))
        print(f"  {label:<6}{row}   {slope:+.4f}")

    if plt is None:
        print("\nmatplotlib not installed, skipping the plot")
        return
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, samples in curves.items():
        ax.loglog([s.omega for s in samples], [s.modulus for s in samples],
                  label=label, lw=1.2)
    ax.set_xlabel("omega")
    ax.set_ylabel("|H|")
    ax.legend()
    fig.tight_layout()
    fig.savefig("response_vs_ideal.png", dpi=150)
    print("\nwrote response_vs_ideal.png")


if __name__ == "__main__":
    main()
