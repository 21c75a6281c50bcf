"""
Usability drift (TDC)
=====================

The Temporal Drift Coefficient is the OLS slope of mean usability over time
periods: positive = the experience is improving, negative = degrading. The
fit refuses to run on fewer than five time points, and the sign is only
called when the 95% confidence interval excludes zero.
"""

from adux import (
    DiscreteDistribution,
    GeneratorSpec,
    UsabilitySeries,
    classify_drift,
    fit_tdc,
    five_point,
    gen_drift_series,
)

# A hand-made series: mean rating per week of deployment.
series = UsabilitySeries(((0, 2.8), (1, 3.0), (2, 3.1), (3, 3.4), (4, 3.5),
                          (5, 3.7), (6, 3.9)))
fit = fit_tdc(series)
print(f"slope (TDC):   {fit.beta1:+.4f} per period")
print(f"intercept:     {fit.beta0:.4f}")
print(f"95% CI:        [{fit.ci95_beta1[0]:+.4f}, {fit.ci95_beta1[1]:+.4f}]")
print(f"r-squared:     {fit.r_squared:.4f}")
print(f"call:          {classify_drift(fit).value}")

# Recovering a known slope from a seeded generator ---------------------------

spec = GeneratorSpec(
    category="demo",
    true_distribution=DiscreteDistribution(five_point(), (0.2,) * 5),
    true_beta0=3.0,
    true_beta1=0.12,       # ground truth the fit should recover
    noise_sd=0.25,
    completion_p=0.8,
    periods=12,
    sessions_per_period=1,
    seed=424242,
)
noisy = gen_drift_series(spec)
noisy_fit = fit_tdc(noisy)
print()
print("Synthetic series with true slope +0.12 and noise sd 0.25:")
print(f"estimated slope {noisy_fit.beta1:+.4f}, "
      f"CI [{noisy_fit.ci95_beta1[0]:+.4f}, {noisy_fit.ci95_beta1[1]:+.4f}], "
      f"call: {classify_drift(noisy_fit).value}")

# The five-point gate ---------------------------------------------------------

short = UsabilitySeries(((0, 3.0), (1, 3.2), (2, 3.4), (3, 3.6)))
try:
    fit_tdc(short)
except Exception as exc:
    print()
    print(f"four points refused as designed: {exc}")
