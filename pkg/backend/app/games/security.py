"""
The generic pre-computation security game and the composition reduction.

Schedule (strict): the cryptosystem P sends a challenge, the online
adversary A1 answers, P verifies, the environment E outputs b. P queries
priv (T2 per round); A1 queries pub only (T1 per round).
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import partial
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from app.bitdomain import SpongeParams, derive_seed, generator, trial_seed
from app.core.errors import BudgetViolation, ProtocolError
from app.core.logging import get_logger
from app.core.monitoring import record_queries, record_trials
from app.core.parallel import chunk_ranges, run_chunked
from app.sponge import BudgetedView, Interface, random_oracle_world, real_world
from app.symsim import SharedRandomness

from .models import Adversary, Advice, GameReport, ResourceBudget
from .simulators import SimulatorPair

logger = get_logger(__name__)

ModelFactory = Callable[[Any, int], Interface]


class Transcript:
    """Enforces challenge -> answer -> verdict for one round."""
    STEPS = ("challenge", "answer", "verdict")

    def __init__(self) -> None:
        self._position = 0

    def record(self, step: str) -> None:
        if self._position >= len(self.STEPS) or self.STEPS[self._position] != step:
            expected = self.STEPS[self._position] if self._position < len(self.STEPS) else "end of round"
            raise ProtocolError(f"message {step!r} out of order; expected {expected!r}")
        self._position += 1

    @property
    def complete(self) -> bool:
        return self._position == len(self.STEPS)


class SecurityGame(ABC):
    name: str = "game"
    T2: int = 0

    @abstractmethod
    def challenge(self, priv: Callable[[int], int], rng: np.random.Generator) -> Tuple[Any, int]:
        """(private state kept by P, message sent to A1)."""

    @abstractmethod
    def verify(self, priv: Callable[[int], int], state: Any, answer: int) -> bool:
        ...

    def environment(self, verified: bool) -> int:
        return int(verified)


@dataclass
class InversionGame(SecurityGame):
    """P samples x, sends y = priv(x), and accepts x' iff priv(x') = y. T2 = 2."""
    in_bits: int
    out_bits: int
    name: str = "inversion"
    T2: int = 2

    def challenge(self, priv, rng):
        x = int(rng.integers(0, 1 << self.in_bits))
        y = priv(x)
        return y, y

    def verify(self, priv, state, answer):
        if not 0 <= answer < (1 << self.in_bits):
            return False
        return priv(answer) == state


def sponge_inversion_game(params: SpongeParams) -> InversionGame:
    return InversionGame(in_bits=params.r, out_bits=params.r, name="sponge-inversion")


def function_inversion_game(params: SpongeParams) -> InversionGame:
    return InversionGame(in_bits=params.r, out_bits=params.r, name="function-inversion")


def sponge_model(params: SpongeParams, seed: int) -> Interface:
    """C-model: priv = Sp^phi, pub = (phi, phi^-1)."""
    interface = real_world(params, seed)
    interface.world = "C-model"
    return interface


def function_model(params: SpongeParams, seed: int) -> Interface:
    """R-model: priv = pub = a random function f."""
    interface = random_oracle_world(params, seed, expose_pub=True)
    interface.world = "R-model"
    return interface


class ComposedAdversary(Adversary):
    """
    A' = (A0', A1') for the R-model built from an adversary A for the C-model
    and a simulator pair (S0, S1).

    A0' runs S0 and A0 against the simulated interface (priv R, S0's pub) and
    emits alpha_A || alpha_S, plus the shared-randomness seed when S0 and S1
    share coins; the seed is advice and counts against S. A1' runs A1 with
    its pub queries answered by S1, which in turn queries R's pub.
    """

    def __init__(self, inner: Adversary, simulator: SimulatorPair):
        self.inner = inner
        self.simulator = simulator
        self.name = f"{inner.name}+{simulator.name}"
        self.seed_bits = SharedRandomness.SEED_BITS if simulator.uses_shared_randomness else 0
        self.S = inner.S + simulator.S_sim + self.seed_bits
        self.T = inner.T

    def offline(self, interface: Interface, coins: int) -> Advice:
        sr = None
        if self.simulator.uses_shared_randomness:
            sr = SharedRandomness.from_seed(derive_seed(coins, "simulator"))
        pub, tables, sim_advice = self.simulator.offline(interface, derive_seed(coins, "S0"), sr)
        simulated = Interface(interface.params, priv=interface.priv_eval, pub=pub, world="simulated", tables=tables)
        inner_advice = self.inner.offline(simulated, coins)
        return Advice(
            payload=(inner_advice, sim_advice, sr.seed if sr else None),
            bits=inner_advice.bits + sim_advice.bits + self.seed_bits,
            shared_coins_bits=self.seed_bits,
        )

    def online(self, view: BudgetedView, advice: Advice, challenge: int, coins: int) -> int:
        inner_advice, sim_advice, sr_seed = advice.payload
        sr = SharedRandomness(sr_seed) if sr_seed is not None else None
        pub = self.simulator.online(view.params, view.pub_eval, sim_advice, sr)
        simulated = Interface(view.params, priv=None, pub=pub, world="simulated")
        return self.inner.online(simulated.online(self.inner.T, allow_priv=False), inner_advice, challenge, coins)

    def to_dict(self) -> Dict[str, Any]:
        return {**super().to_dict(), "inner": self.inner.to_dict(), "simulator": self.simulator.to_dict()}


def compose_adversary(adversary: Adversary, simulator: SimulatorPair) -> ComposedAdversary:
    return ComposedAdversary(adversary, simulator)


def _params_dict(params: Any) -> Dict[str, Any]:
    return params.to_dict() if hasattr(params, "to_dict") else {"n": params}


def _security_chunk(
    game: SecurityGame,
    model: ModelFactory,
    adversary: Adversary,
    params: Any,
    seed: int,
    challenges: int,
    instances: range,
) -> Dict[str, int]:
    stats = {"trials": 0, "successes": 0, "aborted": 0, "max_T1": 0, "max_T2": 0,
             "total_T1": 0, "advice_bits": 0, "shared_coins_bits": 0}
    for i in instances:
        instance_seed = trial_seed(seed, i)
        interface = model(params, instance_seed)
        advice = adversary.offline(interface, derive_seed(instance_seed, "adversary", "offline"))
        stats["advice_bits"] = max(stats["advice_bits"], advice.bits)
        stats["shared_coins_bits"] = max(stats["shared_coins_bits"], advice.shared_coins_bits)
        if advice.bits > adversary.S:
            stats["trials"] += challenges
            stats["aborted"] += challenges
            continue

        rng = generator(instance_seed, "cryptosystem")
        for j in range(challenges):
            transcript = Transcript()
            p_queries = [0]

            def priv(x: int) -> int:
                p_queries[0] += 1
                return interface.priv_eval(x)

            state, message = game.challenge(priv, rng)
            transcript.record("challenge")
            view = interface.online(adversary.T, allow_priv=False)
            stats["trials"] += 1
            try:
                answer = adversary.online(view, advice, message, derive_seed(instance_seed, "adversary", j))
            except BudgetViolation:
                stats["aborted"] += 1
                continue
            transcript.record("answer")
            verified = game.verify(priv, state, answer)
            transcript.record("verdict")

            stats["successes"] += game.environment(verified)
            stats["max_T1"] = max(stats["max_T1"], view.queries)
            stats["max_T2"] = max(stats["max_T2"], p_queries[0])
            stats["total_T1"] += view.queries
    return stats


def run_security_game(
    game: SecurityGame,
    model: ModelFactory,
    adversary: Adversary,
    params: Any,
    instances: int,
    challenges: int,
    seed: int,
    world: Optional[str] = None,
    workers: Optional[int] = None,
) -> GameReport:
    """
    Play `instances` independent model instances, each with one offline phase
    and `challenges` scripted rounds. trials = instances * challenges.
    """
    world = world or getattr(model, "__name__", "model")
    logger.info(
        "Running security game",
        game=game.name, world=world, adversary=adversary.name, instances=instances, challenges=challenges,
    )
    chunks = chunk_ranges(instances, max(1, instances // max(1, workers or 1)))
    results: List[Dict[str, int]] = run_chunked(
        partial(_security_chunk, game, model, adversary, params, seed, challenges),
        chunks,
        workers=workers,
        desc=game.name,
    )

    totals = {key: sum(r[key] for r in results) for key in ("trials", "successes", "aborted", "total_T1")}
    maxima = {key: max((r[key] for r in results), default=0)
              for key in ("max_T1", "max_T2", "advice_bits", "shared_coins_bits")}

    record_trials(game.name, world, totals["trials"] - totals["aborted"], totals["aborted"])
    record_queries(f"{world}:pub", totals["total_T1"])

    completed = totals["trials"] - totals["aborted"]
    report = GameReport(
        experiment=game.name,
        world=world,
        trials=totals["trials"],
        successes=totals["successes"],
        aborted=totals["aborted"],
        params=_params_dict(params),
        declared=ResourceBudget(S=adversary.S, T=adversary.T + game.T2),
        measured=ResourceBudget(S=maxima["advice_bits"], T=maxima["max_T1"] + maxima["max_T2"]),
        extra={
            "adversary": adversary.to_dict(),
            "T1": maxima["max_T1"],
            "T2": maxima["max_T2"],
            "mean_T1": totals["total_T1"] / completed if completed else 0.0,
            "shared_coins_bits": maxima["shared_coins_bits"],
            "instances": instances,
            "challenges": challenges,
        },
    )
    logger.info("Security game finished", world=world, frequency=report.frequency, aborted=report.aborted)
    return report
