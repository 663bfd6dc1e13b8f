"""Calibrate the working level of a mean interval on one skewed sample.

A normal-theory interval on heavily skewed data undercovers.  Single
level bootstrap calibration finds a smaller working level beta so that
an interval built at beta behaves like a nominal 95% one.  This demo
draws one lognormal sample, walks through the calibration quantities,
and contrasts the uncalibrated and calibrated intervals.

Run from the repository root:

    python3 demos/calibrate_skewed_mean.py
"""

import numpy as np

from ciindex import (
    SeedSpec,
    calibrate_level,
    calibrated_interval,
    draw_sample,
    lognormal_model,
    normal_theory_interval,
    true_parameter,
)

MODEL = lognormal_model(0.0, 1.5)
N = 15
B = 500
SEED = SeedSpec(20260815)


def main():
    sample = draw_sample(MODEL, N, SEED.child(1, 0))
    target = true_parameter(MODEL)
    print(f"sample of n = {N}, true mean {target:.4f}, "
          f"sample mean {np.mean(sample):.4f}\n")

    boot_seed = SEED.child(2, 0, 0)
    result = calibrate_level(sample, 0.05, B, boot_seed)
    lam = np.asarray(result.lambdas)
    print(f"B = {B} resamples, lambda quartiles "
          f"{np.percentile(lam, 25):.4f}/{np.percentile(lam, 50):.4f}/"
          f"{np.percentile(lam, 75):.4f}")
    print(f"calibrated working level beta = {result.beta:.4f} "
          f"(nominal alpha = 0.05)\n")

    plain = normal_theory_interval(sample, 0.05)
    wide = calibrated_interval("normal_theory", sample, 0.05, B, boot_seed)
    for name, ci in (("uncalibrated", plain), ("calibrated", wide)):
        hit = "contains" if ci.contains(target) else "misses"
        print(f"{name:<13} [{ci.lower:8.4f}, {ci.upper:8.4f}]  "
              f"length {ci.length:.4f}  {hit} the true mean")

    # beta < alpha widens the interval; on skewed data that is the price
    # of actually reaching the nominal coverage rate
    print(f"\nlength ratio calibrated/uncalibrated: "
          f"{wide.length / plain.length:.3f}")


if __name__ == "__main__":
    main()
