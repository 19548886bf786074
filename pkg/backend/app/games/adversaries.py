"""
Baseline adversaries for inversion games.
"""
import numpy as np

from app.bitdomain import SpongeParams
from app.sponge import BudgetedView, Interface

from .models import Adversary, Advice


class ReplayAdversary(Adversary):
    """Answers the challenge y with x' := y. No advice, no queries."""
    name = "replay"

    def online(self, view: BudgetedView, advice: Advice, challenge: int, coins: int) -> int:
        return challenge


class TruthTableAdversary(Adversary):
    """Stores the whole private truth table (S = r * 2^r) and looks the preimage up."""
    name = "full-truth-table"
    T = 0

    def __init__(self, params: SpongeParams):
        self.params = params
        self.S = params.r * params.rate_size

    def offline(self, interface: Interface, coins: int) -> Advice:
        table = interface.truth_table("priv")
        return Advice.from_words(table.table, self.params.r)

    def online(self, view: BudgetedView, advice: Advice, challenge: int, coins: int) -> int:
        table = np.asarray(advice.payload)
        hits = np.flatnonzero(table == challenge)
        return int(hits[0]) if hits.size else 0
