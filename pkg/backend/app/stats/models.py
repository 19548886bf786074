"""
Probability laws and estimates.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Hashable, Iterable, Mapping, Tuple, Union

from app.core.errors import ParameterError

Weight = Union[Fraction, float]
FLOAT_TOLERANCE = 2.0 ** -40


@dataclass(frozen=True)
class Distribution:
    """
    A finite law: exact rationals in enumeration mode, floats in Monte Carlo mode.

    Support entries must be hashable (truth tables are stored as tuples).
    """
    support: Tuple[Hashable, ...]
    weights: Tuple[Weight, ...]
    _index: Dict[Hashable, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.support) != len(self.weights):
            raise ParameterError("support and weights differ in length")
        if any(w < 0 for w in self.weights):
            raise ParameterError("negative probability weight")
        total = sum(self.weights)
        if self.exact:
            if total != 1:
                raise ParameterError(f"exact weights sum to {total}, not 1")
        elif abs(total - 1.0) > FLOAT_TOLERANCE:
            raise ParameterError(f"weights sum to {total}, not 1")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.support)})

    @property
    def exact(self) -> bool:
        return all(isinstance(w, (Fraction, int)) for w in self.weights)

    @property
    def size(self) -> int:
        return len(self.support)

    @classmethod
    def from_counts(cls, counts: Mapping[Hashable, int]) -> "Distribution":
        total = sum(counts.values())
        keys = sorted(counts)
        return cls(tuple(keys), tuple(Fraction(counts[k], total) for k in keys))

    @classmethod
    def uniform(cls, support: Iterable[Hashable]) -> "Distribution":
        support = tuple(support)
        return cls(support, tuple(Fraction(1, len(support)) for _ in support))

    def prob(self, outcome: Hashable) -> Weight:
        index = self._index.get(outcome)
        if index is None:
            return Fraction(0) if self.exact else 0.0
        return self.weights[index]

    def items(self) -> Iterable[Tuple[Hashable, Weight]]:
        return zip(self.support, self.weights)

    def to_dict(self) -> Dict[str, Any]:
        def encode(w: Weight) -> Any:
            if isinstance(w, Fraction):
                return f"{w.numerator}/{w.denominator}"
            return float(w)

        return {
            "support": [list(s) if isinstance(s, tuple) else s for s in self.support],
            "weights": [encode(w) for w in self.weights],
            "exact": self.exact,
        }


@dataclass
class Estimate:
    """Monte Carlo estimate with a two-sided confidence radius."""
    value: float
    radius: float
    samples: int

    @property
    def interval(self) -> Tuple[float, float]:
        return max(0.0, self.value - self.radius), min(1.0, self.value + self.radius)

    def covers(self, target: float) -> bool:
        return math.isclose(target, self.value) or abs(target - self.value) <= self.radius

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "radius": self.radius, "samples": self.samples}
