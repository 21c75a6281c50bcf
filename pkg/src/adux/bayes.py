"""Bayesian Usability Confidence Score: Beta-Binomial intervals.

Task completion is modelled as Binomial with a conjugate Beta prior, so the
posterior after n completions in N trials is Beta(alpha + n, beta + N - n).
The headline output is the 95% highest density interval of that posterior;
a Wald interval on the same counts is provided as the frequentist
comparator.

The HDI of a unimodal interior density is found by minimizing the interval
width w(p) = Q(p + mass) - Q(p) over the lower-tail mass p, which is a
unimodal 1-D problem. Boundary-mode shapes (alpha <= 1 or beta <= 1) get
one-sided intervals anchored at the boundary where the density peaks, and
flat or U-shaped densities fall back to the central equal-tailed interval
flagged as non-unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from collections.abc import Iterable

from .errors import InvalidMass, ZeroTrials
from .special import (
    beta_pdf,
    bisect_increasing,
    incomplete_beta_inverse,
    normal_quantile,
    regularized_incomplete_beta,
)

# z pinned at the conventional 6-digit value for the default level.
_Z_95 = 1.959964

_HDI_SEARCH_TOL = 1e-8
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class BetaParams:
    """Shape parameters of a Beta distribution; both strictly positive."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if self.alpha <= 0.0 or self.beta <= 0.0:
            raise ValueError(
                f"Beta parameters must be positive, got ({self.alpha}, {self.beta})"
            )

    def mean(self) -> float:
        return self.alpha / (self.alpha + self.beta)

    def mode(self) -> float | None:
        """Interior mode; None when the density peaks on a boundary."""
        if self.alpha > 1.0 and self.beta > 1.0:
            return (self.alpha - 1.0) / (self.alpha + self.beta - 2.0)
        return None

    def pdf(self, x: float) -> float:
        return beta_pdf(self.alpha, self.beta, x)


@dataclass(frozen=True)
class TrialSummary:
    """Completion counts: ``completions`` successes out of ``trials``."""

    completions: int
    trials: int

    def __post_init__(self) -> None:
        if self.trials < 0:
            raise ValueError(f"trial count must be >= 0, got {self.trials}")
        if not 0 <= self.completions <= self.trials:
            raise ValueError(
                f"completions must lie in [0, {self.trials}], got {self.completions}"
            )


class IntervalKind(Enum):
    HDI = "hdi"
    EQUAL_TAILED = "equal-tailed"
    ONE_SIDED_LOWER = "one-sided-lower"
    ONE_SIDED_UPPER = "one-sided-upper"


@dataclass(frozen=True)
class CredibleInterval:
    """[lower, upper] holding ``mass`` probability; ``unique`` is False when
    the interval was a convention pick among equally valid ones."""

    lower: float
    upper: float
    mass: float
    kind: IntervalKind
    unique: bool = True

    def __post_init__(self) -> None:
        if not 0.0 <= self.lower <= self.upper <= 1.0:
            raise ValueError(
                f"interval endpoints out of order or range: "
                f"[{self.lower}, {self.upper}]"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower


def posterior(prior: BetaParams, trials: TrialSummary) -> BetaParams:
    """Conjugate update: Beta(alpha + n, beta + N - n)."""
    return BetaParams(
        alpha=prior.alpha + trials.completions,
        beta=prior.beta + (trials.trials - trials.completions),
    )


def update_prior(history: Iterable[TrialSummary], initial: BetaParams) -> BetaParams:
    """Fold a sequence of trial summaries into the prior.

    By conjugacy this equals a single update on the pooled counts, in any
    order.
    """
    params = initial
    for trials in history:
        params = posterior(params, trials)
    return params


def beta_cdf(params: BetaParams, x: float) -> float:
    """CDF of Beta(alpha, beta) at x, i.e. the regularized incomplete beta."""
    return regularized_incomplete_beta(params.alpha, params.beta, x)


def beta_quantile(params: BetaParams, p: float) -> float:
    """Inverse CDF by bracketed bisection."""
    return incomplete_beta_inverse(params.alpha, params.beta, p)


def _check_mass(mass: float) -> None:
    if not 0.0 < mass < 1.0:
        raise InvalidMass(f"interval mass must lie in (0, 1), got {mass}")


def equal_tailed_interval(params: BetaParams, mass: float = 0.95) -> CredibleInterval:
    """Central interval leaving (1 - mass)/2 probability in each tail."""
    _check_mass(mass)
    half_tail = (1.0 - mass) / 2.0
    return CredibleInterval(
        lower=beta_quantile(params, half_tail),
        upper=beta_quantile(params, half_tail + mass),
        mass=mass,
        kind=IntervalKind.EQUAL_TAILED,
    )


def _golden_section_min(f, lo: float, hi: float, tol: float) -> float:
    """Argmin of a unimodal function on [lo, hi]."""
    h = hi - lo
    c = lo + _INV_PHI2 * h
    d = lo + _INV_PHI * h
    fc = f(c)
    fd = f(d)
    while h > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            h = hi - lo
            c = lo + _INV_PHI2 * h
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            h = hi - lo
            d = lo + _INV_PHI * h
            fd = f(d)
    return 0.5 * (lo + hi)


def hdi(params: BetaParams, mass: float = 0.95) -> CredibleInterval:
    """Highest density interval of a Beta distribution.

    For an interior-mode density (alpha > 1 and beta > 1) this is the
    narrowest interval holding ``mass``, located by golden-section search
    over the lower-tail mass; its endpoints have equal density. Densities
    peaking at a boundary yield the one-sided interval anchored there, and
    flat or U-shaped densities yield the central equal-tailed interval
    flagged ``unique=False``.
    """
    _check_mass(mass)
    a, b = params.alpha, params.beta

    if a > 1.0 and b > 1.0:
        # Inside the search a slightly looser quantile tolerance is plenty
        # (endpoint contract is 1e-3, mass contract 1e-6) and much cheaper.
        def quantile(p: float) -> float:
            return bisect_increasing(
                lambda x: regularized_incomplete_beta(a, b, x), p, 0.0, 1.0, tol=1e-10
            )

        def width(p: float) -> float:
            return quantile(p + mass) - quantile(p)

        p_star = _golden_section_min(width, 0.0, 1.0 - mass, _HDI_SEARCH_TOL)
        return CredibleInterval(
            lower=beta_quantile(params, p_star),
            upper=beta_quantile(params, p_star + mass),
            mass=mass,
            kind=IntervalKind.HDI,
        )
    if a <= 1.0 < b:
        return CredibleInterval(
            lower=0.0,
            upper=beta_quantile(params, mass),
            mass=mass,
            kind=IntervalKind.ONE_SIDED_LOWER,
        )
    if b <= 1.0 < a:
        return CredibleInterval(
            lower=beta_quantile(params, 1.0 - mass),
            upper=1.0,
            mass=mass,
            kind=IntervalKind.ONE_SIDED_UPPER,
        )
    # Flat or U-shaped: every (or no) interval qualifies; pick the central
    # one so callers still get a number, and flag the convention.
    half_tail = (1.0 - mass) / 2.0
    return CredibleInterval(
        lower=beta_quantile(params, half_tail),
        upper=beta_quantile(params, half_tail + mass),
        mass=mass,
        kind=IntervalKind.EQUAL_TAILED,
        unique=False,
    )


@dataclass(frozen=True)
class BucsResult:
    """Posterior parameters, credible interval, and point summaries."""

    posterior: BetaParams
    interval: CredibleInterval
    mean: float
    mode: float | None


def bucs(
    prior: BetaParams, trials: TrialSummary, mass: float = 0.95
) -> BucsResult:
    """Posterior update plus the HDI report for task-completion data."""
    post = posterior(prior, trials)
    return BucsResult(
        posterior=post,
        interval=hdi(post, mass),
        mean=post.mean(),
        mode=post.mode(),
    )


def wald_ci(trials: TrialSummary, level: float = 0.95) -> CredibleInterval:
    """Frequentist Wald interval p_hat +/- z * sqrt(p_hat(1-p_hat)/N).

    Uses z = 1.959964 at the default 0.95 level; other levels derive z from
    the normal quantile. The interval is clamped to [0, 1] and collapses to
    zero width at p_hat in {0, 1}.
    """
    _check_mass(level)
    if trials.trials < 1:
        raise ZeroTrials("Wald interval needs at least one trial")
    p_hat = trials.completions / trials.trials
    z = _Z_95 if level == 0.95 else normal_quantile((1.0 + level) / 2.0)
    half = z * math.sqrt(p_hat * (1.0 - p_hat) / trials.trials)
    return CredibleInterval(
        lower=max(0.0, p_hat - half),
        upper=min(1.0, p_hat + half),
        mass=level,
        kind=IntervalKind.EQUAL_TAILED,
    )
