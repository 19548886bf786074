"""
Shared-randomness removal.

Given p(SR) = Pr[D outputs 1 | SR] over a finite SR space and its average p,
either hard-code one SR with p(SR) = p (no advice), or hard-code SR0, SR1
with p0 < p < p1 and let S0 pass one bit s with Pr[s = 1] = (p - p0) / (p1 - p0).
"""
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.bitdomain import FunctionTable, SpongeParams, derive_seed, generator, sample_function
from app.core.config import settings
from app.core.errors import BudgetViolation, ParameterError, SearchFailure
from app.core.logging import get_logger
from app.stats import all_function_tables, hoeffding_radius
from app.symsim import FunctionBatch, SharedRandomness, SimOracle

from .models import Distinguisher
from .simulators import (
    BiasedSRSimulatorPair,
    FixedSRSimulatorPair,
    SimFactory,
    SimulatorPair,
    ideal_interface,
    online_interface,
)

logger = get_logger(__name__)

MODES = ("exact", "monte-carlo")
MAX_EXACT_FUNCTIONS = 256

Probability = Union[Fraction, float]


@dataclass
class SRRemovalResult:
    case: int
    p: Fraction
    simulator: SimulatorPair
    sr0: int
    sr1: Optional[int] = None
    p0: Optional[Fraction] = None
    p1: Optional[Fraction] = None
    bias: Fraction = Fraction(0)
    error: float = 0.0
    evaluated: int = 0
    searched: int = 0
    played: Optional[Fraction] = None

    @property
    def S_sim(self) -> int:
        return self.simulator.S_sim

    @property
    def reconstructed(self) -> Fraction:
        """Acceptance of the SR-free pair implied by p0, p1 and the bias."""
        if self.case == 1:
            return self.p0
        return (1 - self.bias) * self.p0 + self.bias * self.p1

    @property
    def preserved(self) -> bool:
        """True when the played SR-free pair accepts with probability p (unchecked when not played)."""
        return self.played is None or self.played == self.p

    def to_dict(self) -> Dict[str, Any]:
        def frac(value: Optional[Fraction]) -> Optional[str]:
            return None if value is None else f"{value.numerator}/{value.denominator}"

        return {
            "case": self.case,
            "p": frac(self.p),
            "sr0": self.sr0,
            "sr1": self.sr1,
            "p0": frac(self.p0),
            "p1": frac(self.p1),
            "bias": frac(self.bias),
            "reconstructed": frac(self.reconstructed),
            "played": frac(self.played),
            "S_sim": self.S_sim,
            "error": self.error,
            "evaluated": self.evaluated,
            "searched": self.searched,
            "simulator": self.simulator.to_dict(),
        }


def ideal_verdict(
    distinguisher: Distinguisher,
    params: SpongeParams,
    f: FunctionTable,
    pair: SimulatorPair,
    coins: int,
) -> int:
    """D's output in one ideal-world run against an SR-free pair; aborted runs count as 0."""
    try:
        exposed, sim_advice = ideal_interface(params, f, pair, coins, None)
        advice = distinguisher.offline(exposed).check(distinguisher.S)
        interface, _ = online_interface(params, f, pair, sim_advice, None)
        return int(distinguisher.online(interface.online(distinguisher.T), advice, generator(coins, "distinguisher")))
    except BudgetViolation:
        return 0


def _played(
    distinguisher: Distinguisher,
    params: SpongeParams,
    pair: SimulatorPair,
    functions: Sequence[FunctionTable],
) -> Fraction:
    hits = sum(ideal_verdict(distinguisher, params, f, pair, index) for index, f in enumerate(functions))
    return Fraction(hits, len(functions))


def acceptance_probability(
    distinguisher: Distinguisher,
    params: SpongeParams,
    sr: SharedRandomness,
    functions: Sequence[FunctionTable],
    sim_factory: SimFactory = SimOracle,
) -> Fraction:
    """p(SR) averaged over the given functions, with D's coins fixed per function."""
    return _played(distinguisher, params, FixedSRSimulatorPair(sr_seed=sr.seed, sim_factory=sim_factory), functions)


def table_acceptance(
    distinguisher: Distinguisher,
    params: SpongeParams,
    sr: SharedRandomness,
    batch: FunctionBatch,
) -> Optional[Fraction]:
    """
    p(SR) from D's table verdicts over the whole batch at once, or None when
    D has to be played run by run. Equal to acceptance_probability whenever defined.
    """
    verdicts = distinguisher.table_verdicts(params, batch.tables, batch.symmetrized(sr))
    if verdicts is None:
        return None
    return Fraction(int(np.sum(verdicts)), len(batch))


def pair_acceptance(
    distinguisher: Distinguisher,
    params: SpongeParams,
    pair: SimulatorPair,
    functions: Sequence[FunctionTable],
    bias: Optional[Fraction] = None,
) -> Fraction:
    """
    Exact ideal-world acceptance of an SR-free pair over the functions.

    A biased pair is played once with each advice bit, weighted by `bias`
    (defaults to the pair's own bias).
    """
    if isinstance(pair, BiasedSRSimulatorPair):
        weight = Fraction(pair.bias) if bias is None else Fraction(bias)
        low = _played(distinguisher, params, replace(pair, forced_bit=0), functions)
        high = _played(distinguisher, params, replace(pair, forced_bit=1), functions)
        return (1 - weight) * low + weight * high
    return _played(distinguisher, params, pair, functions)


def _functions(params: SpongeParams, mode: str, samples: int, seed: int) -> List[FunctionTable]:
    if mode == "exact":
        total = params.rate_size ** params.rate_size
        if total > MAX_EXACT_FUNCTIONS:
            raise ParameterError(f"{total} functions exceed the exact SR-removal guardrail; use monte-carlo")
        return [FunctionTable(params, np.array(t)) for t in all_function_tables(params)]
    return [sample_function(params, derive_seed(seed, "sr-removal", j)) for j in range(samples)]


def remove_shared_randomness(
    distinguisher: Optional[Distinguisher],
    params: SpongeParams,
    sim_factory: SimFactory = SimOracle,
    mode: str = "exact",
    sr_bits: Optional[int] = None,
    search_budget: Optional[int] = None,
    samples: int = 256,
    seed: int = 0,
    evaluate: Optional[Callable[[SharedRandomness], Probability]] = None,
    target: Optional[Probability] = None,
) -> SRRemovalResult:
    """
    Replace the SR-using simulator by an SR-free pair tailored to D.

    p(SR) comes from `evaluate` when given, otherwise from ideal-world runs
    over every function ("exact") or `samples` common random functions
    ("monte-carlo"). The SR space is {0, ..., 2^sr_bits - 1} and the target
    p defaults to the average of p(SR) over all of it. `search_budget` only
    bounds how many SR values (from 0 upwards) are tried as hard-coded values.

    With a distinguisher, the returned pair is played exactly over the same
    functions and the outcome is stored in `played`.

    Raises:
        SearchFailure: no SR value within the search budget hits or brackets the target
        ParameterError: unknown mode, or exact mode on too large a domain
    """
    if mode not in MODES:
        raise ParameterError(f"unknown evaluation mode {mode!r}; expected one of {MODES}")
    bits = settings.SR_ENUM_BITS if sr_bits is None else sr_bits
    space = 1 << bits
    limit = space if search_budget is None else min(space, search_budget)
    if limit < 1:
        raise ParameterError("search budget must allow at least one SR value")

    functions: List[FunctionTable] = []
    if evaluate is None:
        if distinguisher is None:
            raise ParameterError("either a distinguisher or an evaluate callable is required")
        functions = _functions(params, mode, samples, seed)
        error = 0.0 if mode == "exact" else hoeffding_radius(len(functions))
        batch = FunctionBatch(params, functions) if sim_factory is SimOracle and distinguisher.T == 0 else None

        def evaluate(sr: SharedRandomness) -> Fraction:
            if batch is not None:
                fast = table_acceptance(distinguisher, params, sr, batch)
                if fast is not None:
                    return fast
            return acceptance_probability(distinguisher, params, sr, functions, sim_factory)
    else:
        error = 0.0

    probabilities: Dict[int, Fraction] = {}

    def p_of(value: int) -> Fraction:
        if value not in probabilities:
            probabilities[value] = Fraction(evaluate(SharedRandomness(value)))
        return probabilities[value]

    if target is None:
        p = sum((p_of(value) for value in range(space)), Fraction(0)) / space
    else:
        p = Fraction(target)
    logger.info("SR acceptance profile evaluated", space=space, search_budget=limit, p=str(p), mode=mode)

    result = _search(p, [(value, p_of(value)) for value in range(limit)], sim_factory)
    result.error = error
    result.evaluated = len(probabilities)
    result.searched = limit

    if distinguisher is not None and functions:
        result.played = pair_acceptance(distinguisher, params, result.simulator, functions, bias=result.bias)
        if not result.preserved:
            logger.warning("SR-free pair misses the target", played=str(result.played), p=str(p))
    return result


def _search(p: Fraction, candidates: List[Tuple[int, Fraction]], sim_factory: SimFactory) -> SRRemovalResult:
    for value, p_value in candidates:
        if p_value == p:
            logger.info("SR removal: single hard-coded value", sr=value)
            return SRRemovalResult(
                case=1, p=p, p0=p_value, sr0=value,
                simulator=FixedSRSimulatorPair(sr_seed=value, sim_factory=sim_factory),
            )

    below = next(((v, q) for v, q in candidates if q < p), None)
    above = next(((v, q) for v, q in candidates if q > p), None)
    if below is None or above is None:
        raise SearchFailure(f"no SR pair among the first {len(candidates)} values brackets p = {p}")

    (sr0, p0), (sr1, p1) = below, above
    bias = (p - p0) / (p1 - p0)
    logger.info("SR removal: biased pair", sr0=sr0, sr1=sr1, bias=str(bias))
    return SRRemovalResult(
        case=2, p=p, sr0=sr0, sr1=sr1, p0=p0, p1=p1, bias=bias,
        simulator=BiasedSRSimulatorPair(sr0_seed=sr0, sr1_seed=sr1, bias=float(bias), sim_factory=sim_factory),
    )
