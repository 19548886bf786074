"""
Public/private interface abstraction shared by every game.

An Interface bundles the private oracle (the constructed object), the public
oracle (the building block) and per-oracle query counters. Offline stages get
the Interface itself, including direct truth-table reads; online stages get a
BudgetedView that enforces the query bound.
"""
import threading
from enum import Enum
from typing import Any, Callable, Dict, Optional, Tuple

from app.bitdomain import SpongeParams
from app.core.errors import BudgetViolation, ConfigurationError, ProtocolError


class Direction(str, Enum):
    FWD = "fwd"
    INV = "inv"


PrivOracle = Callable[[int], int]
PubOracle = Callable[[Direction, int], int]


class QueryCounter:
    """Monotone counter, safe to bump from several threads."""

    def __init__(self) -> None:
        self._value = 0
        self._lock = threading.Lock()

    def increment(self, amount: int = 1) -> None:
        with self._lock:
            self._value += amount

    @property
    def value(self) -> int:
        return self._value


class CountingOracle:
    """Wraps a function oracle x -> f(x) with a query counter."""

    def __init__(self, fn: PrivOracle) -> None:
        self._fn = fn
        self.counter = QueryCounter()

    def __call__(self, x: int) -> int:
        self.counter.increment()
        return self._fn(x)

    @property
    def queries(self) -> int:
        return self.counter.value


class Interface:
    """
    Query access to a (priv, pub) pair.

    Counters increase by exactly one per invocation and are never reset.
    """

    def __init__(
        self,
        params: Optional[SpongeParams],
        priv: Optional[PrivOracle],
        pub: Optional[PubOracle] = None,
        world: str = "real",
        tables: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.params = params
        self.world = world
        self._priv = priv
        self._pub = pub
        self._tables: Dict[str, Any] = dict(tables or {})
        self.priv_counter = QueryCounter()
        self.pub_counter = QueryCounter()

    def priv_eval(self, x: int) -> int:
        if self._priv is None:
            raise ConfigurationError(f"private interface of the {self.world} world is unbound")
        self.priv_counter.increment()
        return self._priv(x)

    def pub_eval(self, direction: Direction, w: int) -> int:
        if self._pub is None:
            raise ConfigurationError(
                f"public interface of the {self.world} world is unbound; attach a simulator first"
            )
        self.pub_counter.increment()
        return self._pub(Direction(direction), w)

    def attach_public(self, pub: PubOracle, **tables: Any) -> None:
        """Bind the public oracle (typically a simulator) and any tables it exposes."""
        self._pub = pub
        self._tables.update(tables)

    @property
    def pub_bound(self) -> bool:
        return self._pub is not None

    @property
    def counts(self) -> Tuple[int, int]:
        """(priv queries, pub queries)."""
        return self.priv_counter.value, self.pub_counter.value

    def has_table(self, name: str) -> bool:
        return name in self._tables

    def truth_table(self, name: str) -> Any:
        """
        Unbounded offline read of a named truth table ("priv", "phi", "f", ...).

        Entries may be stored lazily as zero-argument callables.
        """
        if name not in self._tables:
            raise ConfigurationError(f"{self.world} world exposes no table named {name!r}")
        value = self._tables[name]
        if callable(value) and not hasattr(value, "table") and not hasattr(value, "forward"):
            value = value()
            self._tables[name] = value
        return value

    def online(self, budget: Optional[int], allow_priv: bool = True) -> "BudgetedView":
        return BudgetedView(self, budget, allow_priv=allow_priv)

    def to_dict(self) -> Dict[str, Any]:
        priv, pub = self.counts
        return {
            "world": self.world,
            "params": self.params.to_dict() if self.params else None,
            "priv_queries": priv,
            "pub_queries": pub,
        }


class BudgetedView:
    """Online view of an Interface: at most `budget` explicit queries in total."""

    def __init__(self, interface: Interface, budget: Optional[int], allow_priv: bool = True) -> None:
        self._interface = interface
        self.budget = budget
        self.allow_priv = allow_priv
        self.priv_queries = 0
        self.pub_queries = 0

    @property
    def params(self) -> Optional[SpongeParams]:
        return self._interface.params

    @property
    def queries(self) -> int:
        return self.priv_queries + self.pub_queries

    def _charge(self) -> None:
        if self.budget is not None and self.queries >= self.budget:
            raise BudgetViolation(f"online query budget T={self.budget} exceeded")

    def priv_eval(self, x: int) -> int:
        if not self.allow_priv:
            raise ProtocolError("this stage may only query the public interface")
        self._charge()
        self.priv_queries += 1
        return self._interface.priv_eval(x)

    def pub_eval(self, direction: Direction, w: int) -> int:
        self._charge()
        self.pub_queries += 1
        return self._interface.pub_eval(direction, w)
