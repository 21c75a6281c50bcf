"""Seeded synthetic-session generator with known ground truth.

Serves as the oracle backbone for metric-recovery tests: every generator
knows the exact distribution, drift line, or completion probability it
samples from, so recovered metrics can be compared against truth.

Randomness comes from numpy's PCG64 generator seeded per spec; identical
specs produce identical output within a build. Gaussian noise is produced
by the Box-Muller transform of uniform draws. Statistical tolerances, not
golden random streams, are the compatibility contract across builds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bayes import TrialSummary
from .drift import UsabilitySeries
from .model import Dataset, DiscreteDistribution, ResponseSpace, SessionObservation, five_point


@dataclass(frozen=True)
class GeneratorSpec:
    """Ground-truth parameters for one synthetic category.

    ``true_distribution`` is either a single rating distribution used for
    every period or a per-period tuple (one entry per period) for drifting
    response profiles. The drift line ``true_beta0 + true_beta1 * t`` with
    ``noise_sd`` feeds :func:`gen_drift_series`; ``completion_p`` feeds the
    per-session task outcomes.
    """

    category: str
    true_distribution: DiscreteDistribution | tuple[DiscreteDistribution, ...]
    true_beta0: float
    true_beta1: float
    noise_sd: float
    completion_p: float
    periods: int
    sessions_per_period: int
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.completion_p <= 1.0:
            raise ValueError(f"completion_p must lie in [0, 1], got {self.completion_p}")
        if self.noise_sd < 0.0:
            raise ValueError(f"noise_sd must be >= 0, got {self.noise_sd}")
        if self.periods < 1:
            raise ValueError(f"periods must be >= 1, got {self.periods}")
        if self.sessions_per_period < 1:
            raise ValueError(
                f"sessions_per_period must be >= 1, got {self.sessions_per_period}"
            )
        if isinstance(self.true_distribution, tuple):
            if len(self.true_distribution) != self.periods:
                raise ValueError(
                    f"need one distribution per period: got "
                    f"{len(self.true_distribution)} for {self.periods} periods"
                )
            spaces = {d.space for d in self.true_distribution}
            if len(spaces) != 1:
                raise ValueError("per-period distributions must share one space")

    @property
    def space(self) -> ResponseSpace:
        if isinstance(self.true_distribution, tuple):
            return self.true_distribution[0].space
        return self.true_distribution.space

    def distribution_for(self, period: int) -> DiscreteDistribution:
        if isinstance(self.true_distribution, tuple):
            return self.true_distribution[period]
        return self.true_distribution


def _sample_codes(
    rng: np.random.Generator, dist: DiscreteDistribution, size: int
) -> np.ndarray:
    """Inverse-CDF sampling of rating codes from uniform draws."""
    cum = np.cumsum(np.asarray(dist.probs, dtype=float))
    idx = np.searchsorted(cum, rng.random(size), side="right")
    idx = np.minimum(idx, len(dist.probs) - 1)  # cumsum may top out below 1.0
    return np.asarray(dist.space.codes)[idx]


def _box_muller(rng: np.random.Generator, size: int) -> np.ndarray:
    """Standard normals via the Box-Muller transform of uniforms."""
    pairs = (size + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # shift to (0, 1] so log never sees 0
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    out = np.empty(pairs * 2)
    out[0::2] = radius * np.cos(2.0 * np.pi * u2)
    out[1::2] = radius * np.sin(2.0 * np.pi * u2)
    return out[:size]


def gen_ratings(spec: GeneratorSpec) -> Dataset:
    """Synthetic session log: one rated session per (period, session) cell.

    Ratings are drawn from the spec's (possibly per-period) distribution and
    each session gets a Bernoulli(completion_p) task outcome. Deterministic
    for a fixed seed.
    """
    rng = np.random.default_rng(spec.seed)
    observations: list[SessionObservation] = []
    for t in range(spec.periods):
        dist = spec.distribution_for(t)
        codes = _sample_codes(rng, dist, spec.sessions_per_period)
        completed = rng.random(spec.sessions_per_period) < spec.completion_p
        for i in range(spec.sessions_per_period):
            observations.append(
                SessionObservation(
                    session_id=f"{spec.category}-p{t}-s{i}",
                    category=spec.category,
                    period=t,
                    rating=int(codes[i]),
                    task_completed=bool(completed[i]),
                )
            )
    return Dataset(space=spec.space, observations=tuple(observations))


def gen_drift_series(spec: GeneratorSpec) -> UsabilitySeries:
    """Usability series on the true drift line plus Gaussian noise.

    u(t) = true_beta0 + true_beta1 * t + noise, clamped to the rating scale
    so no synthetic mean leaves the admissible range.
    """
    rng = np.random.default_rng(spec.seed)
    noise = spec.noise_sd * _box_muller(rng, spec.periods)
    lo, hi = float(spec.space.min_code), float(spec.space.max_code)
    points = []
    for t in range(spec.periods):
        u = spec.true_beta0 + spec.true_beta1 * t + noise[t]
        points.append((t, min(max(u, lo), hi)))
    return UsabilitySeries(points=tuple(points))


def gen_trials(completion_p: float, n_trials: int, seed: int) -> TrialSummary:
    """Binomial(N, completion_p) draw of completion counts, seeded."""
    if not 0.0 <= completion_p <= 1.0:
        raise ValueError(f"completion_p must lie in [0, 1], got {completion_p}")
    if n_trials < 0:
        raise ValueError(f"trial count must be >= 0, got {n_trials}")
    rng = np.random.default_rng(seed)
    return TrialSummary(
        completions=int(rng.binomial(n_trials, completion_p)),
        trials=n_trials,
    )


def discretized_line_distributions(
    space: ResponseSpace,
    beta0: float,
    beta1: float,
    sd: float,
    periods: int,
) -> tuple[DiscreteDistribution, ...]:
    """Per-period rating distributions whose means drift along a line.

    Each period gets a Gaussian over the code axis centred on
    ``beta0 + beta1 * t`` (clamped to the scale) with spread ``sd``,
    discretized into code bins with the edge bins absorbing the tails.
    Useful for building drifting `GeneratorSpec` inputs.
    """
    if sd <= 0.0:
        raise ValueError(f"sd must be > 0, got {sd}")
    codes = space.codes
    lo, hi = float(codes[0]), float(codes[-1])

    def gauss_cdf(x: float, mu: float) -> float:
        return 0.5 * (1.0 + math.erf((x - mu) / (sd * math.sqrt(2.0))))

    dists = []
    for t in range(periods):
        mu = min(max(beta0 + beta1 * t, lo), hi)
        edges_lo = [(-math.inf if i == 0 else (codes[i - 1] + codes[i]) / 2.0)
                    for i in range(len(codes))]
        edges_hi = [((codes[i] + codes[i + 1]) / 2.0 if i < len(codes) - 1 else math.inf)
                    for i in range(len(codes))]
        probs = []
        for e_lo, e_hi in zip(edges_lo, edges_hi):
            p_lo = 0.0 if e_lo == -math.inf else gauss_cdf(e_lo, mu)
            p_hi = 1.0 if e_hi == math.inf else gauss_cdf(e_hi, mu)
            probs.append(p_hi - p_lo)
        total = sum(probs)
        dists.append(
            DiscreteDistribution(space=space, probs=tuple(p / total for p in probs))
        )
    return tuple(dists)


# Shipped synthetic presets for five common AI product categories. The
# rating spreads encode the qualitative profile of each category: broad
# for open-ended generation, moderate for personalised surfaces, highly
# concentrated for constrained assistive features. Magnitudes are
# illustrative; only the orderings they imply are load-bearing.
_PRESET_TABLE = (
    # name, probs over 1..5, beta0, beta1, noise_sd, completion_p
    ("conversational-assistant", (0.20, 0.20, 0.20, 0.20, 0.20), 3.0, 0.05, 0.30, 0.78),
    ("recommendation-engine", (0.02, 0.05, 0.13, 0.45, 0.35), 3.6, 0.08, 0.20, 0.85),
    ("generative-image", (0.24, 0.18, 0.16, 0.18, 0.24), 3.0, 0.04, 0.30, 0.70),
    ("voice-assistant", (0.10, 0.15, 0.30, 0.30, 0.15), 3.2, 0.00, 0.50, 0.65),
    ("form-autocomplete", (0.005, 0.005, 0.02, 0.07, 0.90), 4.5, 0.00, 0.10, 0.95),
)

DEFAULT_PRESET_SEED = 20240810


def category_presets(
    space: ResponseSpace | None = None,
    periods: int = 8,
    sessions_per_period: int = 40,
    seed: int = DEFAULT_PRESET_SEED,
) -> tuple[GeneratorSpec, ...]:
    """Generator specs for five synthetic AI product categories.

    Only defined on the default 1..5 scale, since the preset probability
    tables are five-level.
    """
    space = space if space is not None else five_point()
    if len(space) != 5:
        raise ValueError("category presets require a five-level response space")
    specs = []
    for i, (name, probs, beta0, beta1, noise_sd, completion_p) in enumerate(_PRESET_TABLE):
        specs.append(
            GeneratorSpec(
                category=name,
                true_distribution=DiscreteDistribution(space=space, probs=probs),
                true_beta0=beta0,
                true_beta1=beta1,
                noise_sd=noise_sd,
                completion_p=completion_p,
                periods=periods,
                sessions_per_period=sessions_per_period,
                seed=seed + i,
            )
        )
    return tuple(specs)
