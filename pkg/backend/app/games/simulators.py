"""
Pre-computation simulator pairs (S0, S1).

S0 runs once, offline, with unbounded access to the ideal object R; it
exposes a public interface (and tables) to the offline distinguisher and
emits S_sim bits of advice. S1 answers online public queries using R.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple, Type

from app.bitdomain import FunctionTable, SpongeParams, derive_seed, generator, sample_function
from app.core.errors import ContractError
from app.core.logging import get_logger
from app.sponge import Direction, Interface
from app.sponge.interface import PubOracle
from app.symsim import SharedRandomness, SimOracle, symmetrize

from .models import Advice

logger = get_logger(__name__)

SimFactory = Callable[[SpongeParams, Callable[[int], int], SharedRandomness], Any]

REPLAY_QUERIES = 32


class SimulatorPair(ABC):
    name: str = "simulator"
    S_sim: int = 0
    uses_shared_randomness: bool = False

    @abstractmethod
    def offline(
        self, interface: Interface, coins: int, sr: Optional[SharedRandomness]
    ) -> Tuple[PubOracle, Dict[str, Any], Advice]:
        """(exposed pub oracle, exposed tables, simulator advice)."""

    @abstractmethod
    def online(
        self, params: SpongeParams, r_pub: PubOracle, advice: Advice, sr: Optional[SharedRandomness]
    ) -> PubOracle:
        """Public oracle for the online stage; r_pub is the ideal world's own public interface."""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "S_sim": self.S_sim, "shared_randomness": self.uses_shared_randomness}


def _f_oracle(r_pub: PubOracle) -> Callable[[int], int]:
    def f(x: int) -> int:
        return r_pub(Direction.FWD, x)

    return f


def simulated_tables(f: Any, sr: SharedRandomness, sim_factory: SimFactory) -> Dict[str, Any]:
    """Tables an offline stage may read: the function and, lazily, the full simulated permutation."""
    tables: Dict[str, Any] = {"priv": f, "f": f}
    if isinstance(f, FunctionTable) and sim_factory is SimOracle:
        tables["phi"] = lambda: symmetrize(f, sr)
    return tables


@dataclass
class ResetSimulatorPair(SimulatorPair):
    """S0 = expose (priv R, sim) with no advice; S1 = sim. Requires a stateless sim."""
    sim_factory: Type = SimOracle
    name: str = "reset-lift"
    S_sim: int = 0
    uses_shared_randomness: bool = True

    def offline(self, interface, coins, sr):
        f = interface.truth_table("f")
        sim = self.sim_factory(interface.params, f, sr)
        return sim.query, simulated_tables(f, sr, self.sim_factory), Advice.empty()

    def online(self, params, r_pub, advice, sr):
        return self.sim_factory(params, _f_oracle(r_pub), sr).query


@dataclass
class FixedSRSimulatorPair(SimulatorPair):
    """One hard-coded shared-randomness value; no advice."""
    sr_seed: int = 0
    sim_factory: Type = SimOracle
    name: str = "fixed-sr"
    S_sim: int = 0

    @property
    def sr(self) -> SharedRandomness:
        return SharedRandomness(self.sr_seed)

    def offline(self, interface, coins, sr):
        f = interface.truth_table("f")
        sr = self.sr
        tables = simulated_tables(f, sr, self.sim_factory)
        return self.sim_factory(interface.params, f, sr).query, tables, Advice.empty()

    def online(self, params, r_pub, advice, sr):
        return self.sim_factory(params, _f_oracle(r_pub), self.sr).query


@dataclass
class BiasedSRSimulatorPair(SimulatorPair):
    """
    Two hard-coded values SR0, SR1. S0 flips s with Pr[s = 1] = bias and passes
    s as one advice bit; both stages then use SR_s. forced_bit pins s for
    exact evaluation of the pair.
    """
    sr0_seed: int = 0
    sr1_seed: int = 1
    bias: float = 0.5
    sim_factory: Type = SimOracle
    forced_bit: Optional[int] = None
    name: str = "biased-sr"
    S_sim: int = 1

    def choose(self, advice: Advice) -> SharedRandomness:
        bit = advice.payload[0] if advice.payload else 0
        return SharedRandomness(self.sr1_seed if bit else self.sr0_seed)

    def offline(self, interface, coins, sr):
        if self.forced_bit is None:
            bit = int(generator(coins, "sr-bit").random() < self.bias)
        else:
            bit = self.forced_bit
        advice = Advice.from_bit(bit)
        chosen = self.choose(advice)
        f = interface.truth_table("f")
        tables = simulated_tables(f, chosen, self.sim_factory)
        return self.sim_factory(interface.params, f, chosen).query, tables, advice

    def online(self, params, r_pub, advice, sr):
        return self.sim_factory(params, _f_oracle(r_pub), self.choose(advice)).query


@dataclass
class IdentitySimulatorPair(SimulatorPair):
    """R = C: pass the ideal world's own public interface through untouched."""
    name: str = "identity"

    def offline(self, interface, coins, sr):
        tables = {name: interface.truth_table(name) for name in ("priv", "phi") if interface.has_table(name)}
        return interface.pub_eval, tables, Advice.empty()

    def online(self, params, r_pub, advice, sr):
        return r_pub


def replay_check(
    sim_factory: SimFactory,
    params: SpongeParams,
    queries: int = REPLAY_QUERIES,
    seed: int = 0,
) -> None:
    """
    Assert the simulator is stateless: two fresh instances answering the same
    queries in opposite orders, and one instance replaying its own script,
    must all agree.

    Raises:
        ContractError: on any disagreement
    """
    f = sample_function(params, derive_seed(seed, "replay", "f"))
    sr = SharedRandomness.from_seed(seed, "replay")
    rng = generator(seed, "replay", "script")
    script = [
        (Direction.FWD if d else Direction.INV, int(w))
        for d, w in zip(rng.integers(0, 2, queries), rng.integers(0, params.domain_size, queries))
    ]

    first = sim_factory(params, f, sr)
    forward_order = [first.query(d, w) for d, w in script]
    replayed = [first.query(d, w) for d, w in script]

    second = sim_factory(params, f, sr)
    reverse_order = [second.query(d, w) for d, w in reversed(script)][::-1]

    if forward_order != replayed or forward_order != reverse_order:
        raise ContractError(f"{getattr(sim_factory, '__name__', sim_factory)} keeps state between queries")


def lift_reset_to_precomp(
    sim_factory: SimFactory = SimOracle,
    params: Optional[SpongeParams] = None,
    replay_seed: int = 0,
) -> ResetSimulatorPair:
    """
    Turn a stateless (reset) simulator into a pre-computation pair with S_sim = 0.

    Raises:
        ContractError: if the replay check finds state
    """
    if params is not None:
        replay_check(sim_factory, params, seed=replay_seed)
    pair = ResetSimulatorPair(sim_factory=sim_factory)
    logger.debug("Lifted reset simulator", simulator=getattr(sim_factory, "__name__", str(sim_factory)))
    return pair


def ideal_interface(
    params: SpongeParams,
    f: FunctionTable,
    simulator: SimulatorPair,
    coins: int,
    sr: Optional[SharedRandomness],
) -> Tuple[Interface, Advice]:
    """Ideal-world interface as seen by an offline stage: priv = f, pub and tables from S0."""
    base = Interface(params, priv=f, world="ideal", tables={"priv": f, "f": f})
    pub, tables, sim_advice = simulator.offline(base, coins, sr)
    exposed = Interface(params, priv=f, pub=pub, world="ideal", tables=tables)
    return exposed, sim_advice


def online_interface(
    params: SpongeParams,
    f: FunctionTable,
    simulator: SimulatorPair,
    sim_advice: Advice,
    sr: Optional[SharedRandomness],
) -> Tuple[Interface, Callable[[], int]]:
    """Ideal-world interface for an online stage, plus a reader for S1's f-query count (T_sim)."""
    f_queries = [0]

    def r_pub(direction: Direction, x: int) -> int:
        f_queries[0] += 1
        return f(x)

    pub = simulator.online(params, r_pub, sim_advice, sr)
    return Interface(params, priv=f, pub=pub, world="ideal", tables={"priv": f}), lambda: f_queries[0]
