"""
Bayesian completion intervals (BUCS)
====================================

Task completion is modelled as Binomial with a Beta prior; the posterior
after n completions in N trials is Beta(alpha + n, beta + N - n), and the
headline number is its 95% highest density interval. Compared to the
frequentist Wald interval, the HDI stays honest at the edges (n = N still
yields a real interval, not width zero) and narrows predictably as data
accumulates.
"""

from adux import (
    BetaParams,
    TrialSummary,
    bucs,
    equal_tailed_interval,
    hdi,
    posterior,
    update_prior,
    wald_ci,
)

flat_prior = BetaParams(1.0, 1.0)  # recommended when nothing is known

# 7 completions in 10 trials --------------------------------------------------
result = bucs(flat_prior, TrialSummary(completions=7, trials=10))
print("prior Beta(1,1), data 7/10:")
print(f"  posterior Beta({result.posterior.alpha:g}, {result.posterior.beta:g})")
print(f"  mean {result.mean:.4f}, mode {result.mode:.4f}")
print(f"  95% HDI [{result.interval.lower:.4f}, {result.interval.upper:.4f}]")

wald = wald_ci(TrialSummary(7, 10))
print(f"  Wald     [{wald.lower:.4f}, {wald.upper:.4f}]  (for comparison)")

# Edge case: perfect completion ----------------------------------------------
perfect = bucs(flat_prior, TrialSummary(10, 10))
wald_perfect = wald_ci(TrialSummary(10, 10))
print()
print("data 10/10 (perfect completion):")
print(f"  HDI  [{perfect.interval.lower:.4f}, {perfect.interval.upper:.4f}] "
      f"kind={perfect.interval.kind.value}")
print(f"  Wald [{wald_perfect.lower:.4f}, {wald_perfect.upper:.4f}] "
      f"width {wald_perfect.width:.1f}  <- claims certainty from 10 trials")

# Narrowing with sample size ---------------------------------------------------
print()
print("HDI width at a fixed 70% completion share:")
for trials in (10, 50, 200, 1000):
    post = posterior(flat_prior, TrialSummary(round(0.7 * trials), trials))
    print(f"  N={trials:5d}  width {hdi(post).width:.4f}")

# HDI vs equal-tailed for a skewed posterior -----------------------------------
post = BetaParams(8, 4)
print()
print("skewed posterior Beta(8,4):")
print(f"  HDI          [{hdi(post).lower:.4f}, {hdi(post).upper:.4f}] "
      f"width {hdi(post).width:.4f}")
et = equal_tailed_interval(post)
print(f"  equal-tailed [{et.lower:.4f}, {et.upper:.4f}] width {et.width:.4f}")
print("  (the HDI is the shortest interval holding 95% of the mass)")

# Sequential studies ------------------------------------------------------------
history = [TrialSummary(3, 5), TrialSummary(4, 5)]
print()
print("two study waves, 3/5 then 4/5, folded into the prior:")
folded = update_prior(history, flat_prior)
print(f"  Beta({folded.alpha:g}, {folded.beta:g}) "
      "= same as a single 7/10 study, by conjugacy")
