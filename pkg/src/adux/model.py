"""Core domain types: response spaces, rating distributions, and session logs.

Everything here is immutable after construction and validated eagerly, so the
metric modules can assume well-formed inputs. All operations are pure
functions and safe to call concurrently.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from .errors import (
    EmptyInput,
    MalformedRow,
    NegativePeriod,
    UnknownRating,
)

PROB_SUM_TOL = 1e-9

STRICT = "strict"
SKIP_INVALID = "skip-invalid"


@dataclass(frozen=True)
class RatingLevel:
    """One admissible rating: an integer code plus a human-readable label."""

    code: int
    label: str


@dataclass(frozen=True)
class ResponseSpace:
    """Ordered, discrete set of admissible rating levels.

    Codes must be strictly increasing and labels unique. The shipped default
    is the 1..5 scale (see :func:`five_point`), but any ordered integer-coded
    scale works.
    """

    levels: tuple[RatingLevel, ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValueError("response space must contain at least one level")
        codes = [lv.code for lv in self.levels]
        if any(b <= a for a, b in zip(codes, codes[1:])):
            raise ValueError(f"level codes must be strictly increasing, got {codes}")
        labels = [lv.label for lv in self.levels]
        if len(set(labels)) != len(labels):
            raise ValueError("level labels must be unique")

    @classmethod
    def from_range(cls, lo: int, hi: int) -> ResponseSpace:
        """Space with codes lo..hi inclusive, labelled by their codes."""
        if hi < lo:
            raise ValueError(f"scale bounds out of order: {lo}..{hi}")
        return cls(tuple(RatingLevel(c, str(c)) for c in range(lo, hi + 1)))

    @property
    def codes(self) -> tuple[int, ...]:
        return tuple(lv.code for lv in self.levels)

    @property
    def min_code(self) -> int:
        return self.levels[0].code

    @property
    def max_code(self) -> int:
        return self.levels[-1].code

    def __len__(self) -> int:
        return len(self.levels)

    def __contains__(self, code: object) -> bool:
        return any(lv.code == code for lv in self.levels)

    def index(self, code: int) -> int:
        """Position of a code within the space."""
        for i, lv in enumerate(self.levels):
            if lv.code == code:
                return i
        raise UnknownRating(f"rating code {code!r} not in response space {self.codes}")


def five_point() -> ResponseSpace:
    """The shipped default: a 1..5 rating scale."""
    return ResponseSpace.from_range(1, 5)


@dataclass(frozen=True)
class DiscreteDistribution:
    """Probability vector over a response space.

    ``n_obs`` records how many observations the probabilities were estimated
    from, when they came from data; it stays ``None`` for hand-specified
    distributions.
    """

    space: ResponseSpace
    probs: tuple[float, ...]
    n_obs: int | None = None

    def __post_init__(self) -> None:
        if len(self.probs) != len(self.space):
            raise ValueError(
                f"got {len(self.probs)} probabilities for {len(self.space)} levels"
            )
        if any(p < 0 for p in self.probs):
            raise ValueError(f"negative probability in {self.probs}")
        total = sum(self.probs)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        if self.n_obs is not None and self.n_obs < 1:
            raise ValueError("n_obs must be positive when given")

    def prob_of(self, code: int) -> float:
        return self.probs[self.space.index(code)]


@dataclass(frozen=True)
class SessionObservation:
    """One logged interaction row.

    ``rating`` is validated against the shared space when the observation is
    placed in a :class:`Dataset`; the period must be non-negative already.
    """

    session_id: str
    category: str
    period: int
    rating: int
    task_completed: bool | None = None

    def __post_init__(self) -> None:
        if self.period < 0:
            raise NegativePeriod(f"period must be >= 0, got {self.period}")


@dataclass(frozen=True)
class Dataset:
    """A response space plus the observations recorded against it."""

    space: ResponseSpace
    observations: tuple[SessionObservation, ...]

    def __post_init__(self) -> None:
        for obs in self.observations:
            if obs.rating not in self.space:
                raise UnknownRating(
                    f"rating code {obs.rating} (session {obs.session_id!r}) "
                    f"not in response space {self.space.codes}"
                )

    def categories(self) -> tuple[str, ...]:
        """Distinct categories, sorted."""
        return tuple(sorted({o.category for o in self.observations}))

    def for_category(self, category: str) -> tuple[SessionObservation, ...]:
        return tuple(o for o in self.observations if o.category == category)

    def __len__(self) -> int:
        return len(self.observations)


@dataclass(frozen=True)
class Rejection:
    """One dropped or refused input row."""

    row: int
    reason: str
    detail: str


@dataclass(frozen=True)
class ValidationResult:
    """Validated dataset plus the log of rejected rows."""

    dataset: Dataset
    rejections: tuple[Rejection, ...] = field(default=())


def build_distribution(
    ratings: Sequence[int], space: ResponseSpace
) -> DiscreteDistribution:
    """Empirical relative-frequency distribution of the given rating codes.

    Raises :class:`EmptyInput` for an empty list and :class:`UnknownRating`
    for any code outside the space.
    """
    if len(ratings) == 0:
        raise EmptyInput("cannot build a distribution from zero ratings")
    counts = Counter(ratings)
    known = set(space.codes)
    for code in counts:
        if code not in known:
            raise UnknownRating(
                f"rating code {code!r} not in response space {space.codes}"
            )
    n = len(ratings)
    probs = tuple(counts.get(code, 0) / n for code in space.codes)
    return DiscreteDistribution(space=space, probs=probs, n_obs=n)


_TRUE_WORDS = {"true", "1", "yes"}
_FALSE_WORDS = {"false", "0", "no"}


def _parse_task_completed(value: Any) -> bool | None:
    if value is None or value == "":
        return None
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text == "":
        return None
    if text in _TRUE_WORDS:
        return True
    if text in _FALSE_WORDS:
        return False
    raise ValueError(f"task_completed value {value!r} is not true/false/empty")


def _parse_int(value: Any, name: str) -> int:
    if isinstance(value, bool):
        raise ValueError(f"{name} must be an integer, got boolean {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    try:
        return int(str(value).strip())
    except (TypeError, ValueError):
        raise ValueError(f"{name} value {value!r} is not an integer") from None


def _observation_from_row(row: Mapping[str, Any], space: ResponseSpace) -> SessionObservation:
    """Build one observation from a raw mapping, raising typed errors."""
    for key in ("session_id", "category"):
        value = row.get(key)
        if value is None or str(value) == "":
            raise MalformedRow(f"missing {key}")
    if row.get("rating") is None or row.get("rating") == "":
        raise MalformedRow("missing rating")
    if row.get("period") is None or row.get("period") == "":
        raise MalformedRow("missing period")

    try:
        period = _parse_int(row["period"], "period")
        rating = _parse_int(row["rating"], "rating")
        task = _parse_task_completed(row.get("task_completed"))
    except ValueError as exc:
        raise MalformedRow(str(exc)) from None

    if period < 0:
        raise NegativePeriod(f"period must be >= 0, got {period}")
    if rating not in space:
        raise UnknownRating(
            f"rating code {rating} not in response space {space.codes}"
        )
    return SessionObservation(
        session_id=str(row["session_id"]),
        category=str(row["category"]),
        period=period,
        rating=rating,
        task_completed=task,
    )


_REASON_BY_TYPE = {
    UnknownRating: "unknown-rating",
    NegativePeriod: "negative-period",
    MalformedRow: "malformed-row",
}


def validate_dataset(
    rows: Iterable[Mapping[str, Any]],
    space: ResponseSpace,
    strictness: str = STRICT,
    row_numbers: Sequence[int] | None = None,
) -> ValidationResult:
    """Turn raw row mappings into a validated :class:`Dataset`.

    In ``strict`` mode the first invalid row raises; in ``skip-invalid`` mode
    invalid rows are dropped and each one is recorded in the rejection log
    with its row number and a machine-readable reason.

    ``row_numbers`` optionally supplies the reported numbering (e.g. file
    line numbers); by default rows are numbered from 1.
    """
    if strictness not in (STRICT, SKIP_INVALID):
        raise ValueError(f"strictness must be {STRICT!r} or {SKIP_INVALID!r}")
    observations: list[SessionObservation] = []
    rejections: list[Rejection] = []
    for i, row in enumerate(rows):
        number = row_numbers[i] if row_numbers is not None else i + 1
        try:
            observations.append(_observation_from_row(row, space))
        except (UnknownRating, NegativePeriod, MalformedRow) as exc:
            if strictness == STRICT:
                raise type(exc)(f"row {number}: {exc}") from None
            rejections.append(
                Rejection(row=number, reason=_REASON_BY_TYPE[type(exc)], detail=str(exc))
            )
    return ValidationResult(
        dataset=Dataset(space=space, observations=tuple(observations)),
        rejections=tuple(rejections),
    )
