"""
Data models for pre-computation games: budgets, advice, the two-stage
distinguisher and adversary contracts, and per-world reports.
"""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np

from app.bitdomain import SpongeParams
from app.core.config import settings
from app.core.errors import BudgetViolation, ParameterError
from app.sponge import BudgetedView, Interface


@dataclass
class ResourceBudget:
    """(S, T, S_sim, T_sim, epsilon). Declared or measured, depending on where it sits."""
    S: int = 0
    T: int = 0
    S_sim: int = 0
    T_sim: int = 0
    epsilon: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("S", "T", "S_sim", "T_sim"):
            if getattr(self, name) < 0:
                raise ParameterError(f"budget {name} must be non-negative")
        if self.epsilon is not None and not 0.0 <= self.epsilon <= 1.0:
            raise ParameterError("epsilon must lie in [0, 1]")

    def within(self, declared: "ResourceBudget") -> bool:
        return (
            self.S <= declared.S
            and self.T <= declared.T
            and self.S_sim <= declared.S_sim
            and self.T_sim <= declared.T_sim
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"S": self.S, "T": self.T, "S_sim": self.S_sim, "T_sim": self.T_sim, "epsilon": self.epsilon}


@dataclass(frozen=True)
class Advice:
    """
    The state handed from an offline stage to its online stage.

    `bits` is the classical size charged against S. Shared coins that a
    composed adversary forwards to its simulator are accounted separately.
    """
    payload: Any = None
    bits: int = 0
    shared_coins_bits: int = 0

    @classmethod
    def empty(cls) -> "Advice":
        return cls()

    @classmethod
    def from_words(cls, words: Sequence[int], width: int) -> "Advice":
        words = tuple(int(w) for w in words)
        if any(not 0 <= w < (1 << width) for w in words):
            raise ParameterError(f"advice word does not fit in {width} bits")
        return cls(payload=words, bits=len(words) * width)

    @classmethod
    def from_bit(cls, bit: int) -> "Advice":
        return cls.from_words((int(bool(bit)),), 1)

    def check(self, limit: int) -> "Advice":
        if self.bits > limit:
            raise BudgetViolation(f"advice of {self.bits} bits exceeds S = {limit}")
        return self


class Distinguisher(ABC):
    """
    Two-stage distinguisher (D0, D1).

    D0 gets the whole Interface, including truth-table reads, and emits at most
    S advice bits. D1 gets a BudgetedView of at most T queries and outputs a bit.
    """
    name: str = "distinguisher"
    S: int = 0
    T: int = 0

    def offline(self, interface: Interface) -> Advice:
        return Advice.empty()

    @abstractmethod
    def online(self, view: BudgetedView, advice: Advice, rng: np.random.Generator) -> int:
        ...

    def table_verdicts(self, params: SpongeParams, priv: np.ndarray, phi: Any) -> Optional[np.ndarray]:
        """
        Verdicts over a batch of functions (rows of priv) when D decides from
        tables alone; phi is a SymmetrizedBatch. None means each run must be played.
        """
        return None

    def budget(self) -> ResourceBudget:
        return ResourceBudget(S=self.S, T=self.T)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "S": self.S, "T": self.T}


class Adversary(ABC):
    """
    Two-stage adversary (A0, A1) for a security game.

    A0 gets the whole Interface; A1 gets a pub-only view with at most T queries.
    `coins` are integer seeds so each stage can fork its own generators.
    """
    name: str = "adversary"
    S: int = 0
    T: int = 0

    def offline(self, interface: Interface, coins: int) -> Advice:
        return Advice.empty()

    @abstractmethod
    def online(self, view: BudgetedView, advice: Advice, challenge: int, coins: int) -> int:
        ...

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "S": self.S, "T": self.T}


@dataclass
class GameReport:
    """
    Outcome of one world of one experiment.

    radius = 3 * sqrt(ln(2/delta) / (2 * trials)), delta = HOEFFDING_DELTA.
    """
    experiment: str
    world: str
    trials: int
    successes: int
    aborted: int = 0
    params: Dict[str, Any] = field(default_factory=dict)
    declared: ResourceBudget = field(default_factory=ResourceBudget)
    measured: ResourceBudget = field(default_factory=ResourceBudget)
    delta: float = field(default_factory=lambda: settings.HOEFFDING_DELTA)
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 0 <= self.successes <= self.trials:
            raise ParameterError("successes must lie in [0, trials]")

    @property
    def completed(self) -> int:
        return self.trials - self.aborted

    @property
    def frequency(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    @property
    def radius(self) -> float:
        if not self.trials:
            return 1.0
        return 3.0 * math.sqrt(math.log(2.0 / self.delta) / (2.0 * self.trials))

    @property
    def sigma(self) -> float:
        if not self.trials:
            return 0.0
        p = self.frequency
        return math.sqrt(p * (1.0 - p) / self.trials)

    @property
    def within_budget(self) -> bool:
        return self.measured.within(self.declared)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "experiment": self.experiment,
            "world": self.world,
            "params": self.params,
            "trials": self.trials,
            "successes": self.successes,
            "aborted": self.aborted,
            "frequency": self.frequency,
            "radius": self.radius,
            "sigma": self.sigma,
            "declared": self.declared.to_dict(),
            "measured": self.measured.to_dict(),
            **self.extra,
        }

    def to_row(self) -> Dict[str, Any]:
        return {
            "world": self.world,
            **{k: v for k, v in self.params.items() if k in ("r", "c", "n")},
            "S": self.measured.S,
            "T": self.measured.T,
            "trials": self.trials,
            "successes": self.successes,
            "eps": self.frequency,
            "ci": self.radius,
        }


def advantage(real: GameReport, ideal: GameReport) -> float:
    return abs(real.frequency - ideal.frequency)


def joint_sigma(a: GameReport, b: GameReport) -> float:
    return math.hypot(a.sigma, b.sigma)
