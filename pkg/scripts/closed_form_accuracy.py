#!/usr/bin/env python3
"""Report how far the Dirichlet closed form drifts from the exact element sum.

The closed form drops the per-element quadratic offset phase, so its error
grows with the frequency offset.  This sweep reports the worst grid deviation
(as a fraction of the array size M) for a range of offsets; nothing is
asserted, the table is the deliverable.

Usage:
    python scripts/closed_form_accuracy.py [--elements M] [--grid NTxNTH]
"""

import argparse

import numpy as np

import fdabeam as fb
from fdabeam.beampattern_instant import exact_field_matrix


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--elements", type=int, default=16)
    parser.add_argument("--grid", default="256x512", help="time x angle samples")
    args = parser.parse_args()

    n_t, n_th = (int(v) for v in args.grid.split("x"))
    m = args.elements
    t = np.linspace(0.0, 5e-6, n_t)
    theta = fb.theta_grid(n_th)
    w = fb.uniform_weights(m)
    wf = fb.rect_pulse(5e-6)

    print(f"M = {m}, grid {n_t} x {n_th}")
    print(f"{'delta_f':>12s} {'df*M^2*d/c':>12s} {'max |exact-closed|/M':>22s}")
    for delta_f in (1e3, 10e3, 30e3, 100e3, 200e3, 400e3, 1e6, 2e6):
        lam0 = 3e8 / (1e10 + (m - 1) * delta_f)
        cfg = fb.ArrayConfig(num_elements=m, carrier_freq=1e10, spacing=lam0 / 2,
                             pulse_duration=5e-6)
        exact = np.abs(exact_field_matrix(cfg, fb.UniformPlan(delta_f), w, wf, t, theta))
        exact *= np.sqrt(cfg.pulse_duration)
        closed = fb.fitb_closed_form(cfg, delta_f, t[:, None], theta[None, :])
        dev = np.max(np.abs(exact - closed)) / m
        regime = delta_f * m**2 * cfg.spacing / 3e8
        print(f"{delta_f:12.3e} {regime:12.3e} {dev:22.6f}")


if __name__ == "__main__":
    main()
