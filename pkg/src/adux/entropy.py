"""Interaction Entropy Index: Shannon entropy of rating distributions.

The IEI of a rating distribution is ``-sum(p * log2(p))`` in bits, with the
standard convention that terms with p = 0 contribute nothing. High values
mean broadly spread satisfaction responses (an unpredictable-feeling
interface); zero means every rating landed on one level.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

from .errors import EmptyDataset
from .model import Dataset, DiscreteDistribution, ResponseSpace, build_distribution

PER_CATEGORY = "per-category"
PER_CATEGORY_PER_PERIOD = "per-category-per-period"

POOLED = "pooled"
MEAN_OF_SESSIONS = "mean-of-sessions"

GroupKey = str | tuple[str, int]


@dataclass(frozen=True)
class EntropyBits:
    """Entropy value in bits, its normalized form, and the sample size.

    ``normalized`` is value / log2(|R|), clamped to [0, 1]; it is defined as
    0 for a single-level space, where entropy is identically zero.
    ``n_ratings`` is None when the distribution was not estimated from data.
    """

    value: float
    normalized: float | None = None
    n_ratings: int | None = None

    def __post_init__(self) -> None:
        if self.value < 0.0:
            raise ValueError(f"entropy cannot be negative, got {self.value}")
        if self.normalized is not None and not 0.0 <= self.normalized <= 1.0:
            raise ValueError(f"normalized entropy outside [0, 1]: {self.normalized}")


def _entropy_bits(probs: tuple[float, ...]) -> float:
    h = -sum(p * math.log2(p) for p in probs if p > 0.0)
    return h if h > 0.0 else 0.0  # scrub -0.0 and rounding dust


def _normalize(value: float, n_levels: int) -> float:
    if n_levels < 2:
        return 0.0
    return min(max(value / math.log2(n_levels), 0.0), 1.0)


def iei(dist: DiscreteDistribution) -> EntropyBits:
    """Interaction Entropy Index of one distribution, in bits."""
    value = _entropy_bits(dist.probs)
    return EntropyBits(
        value=value,
        normalized=_normalize(value, len(dist.space)),
        n_ratings=dist.n_obs,
    )


def iei_normalized(dist: DiscreteDistribution) -> float:
    """IEI rescaled to [0, 1] by the maximum log2(|R|); 0 for |R| = 1."""
    return _normalize(_entropy_bits(dist.probs), len(dist.space))


def iei_of_ratings(ratings, space: ResponseSpace) -> EntropyBits:
    """IEI of a raw list of rating codes."""
    return iei(build_distribution(ratings, space))


@dataclass(frozen=True)
class GroupedEntropy:
    """Per-group IEI results plus diagnostics for groups that had no ratings."""

    results: tuple[tuple[GroupKey, EntropyBits], ...]
    empty_groups: tuple[GroupKey, ...] = ()


def _mean_of_session_entropies(
    observations, space: ResponseSpace
) -> EntropyBits:
    by_session: defaultdict[str, list[int]] = defaultdict(list)
    for obs in observations:
        by_session[obs.session_id].append(obs.rating)
    values = [
        _entropy_bits(build_distribution(r, space).probs) for r in by_session.values()
    ]
    mean_value = sum(values) / len(values)
    return EntropyBits(
        value=mean_value,
        normalized=_normalize(mean_value, len(space)),
        n_ratings=len(observations),
    )


def iei_by_group(
    dataset: Dataset,
    grouping: str = PER_CATEGORY,
    aggregation: str = POOLED,
) -> GroupedEntropy:
    """IEI per group of a dataset.

    Grouping is per category or per (category, period). Pooled aggregation
    builds one distribution from all ratings in the group; mean-of-sessions
    computes the IEI of each session separately and averages them
    (unweighted). ``n_ratings`` reports the total ratings in the group either
    way. Group keys come back sorted for deterministic output.
    """
    if grouping not in (PER_CATEGORY, PER_CATEGORY_PER_PERIOD):
        raise ValueError(f"unknown grouping {grouping!r}")
    if aggregation not in (POOLED, MEAN_OF_SESSIONS):
        raise ValueError(f"unknown aggregation {aggregation!r}")
    if len(dataset) == 0:
        raise EmptyDataset("cannot compute grouped IEI on an empty dataset")

    groups: defaultdict[GroupKey, list] = defaultdict(list)
    for obs in dataset.observations:
        key: GroupKey = (
            obs.category if grouping == PER_CATEGORY else (obs.category, obs.period)
        )
        groups[key].append(obs)

    results = []
    for key in sorted(groups):
        members = groups[key]
        if aggregation == POOLED:
            entry = iei_of_ratings([o.rating for o in members], dataset.space)
        else:
            entry = _mean_of_session_entropies(members, dataset.space)
        results.append((key, entry))
    # Groups are induced by observations, so none can be empty; the
    # diagnostics field exists for callers that pre-declare group keys.
    return GroupedEntropy(results=tuple(results), empty_groups=())
