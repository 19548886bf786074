"""
Scripted distinguishers used by the indifferentiability experiments.
"""
import numpy as np

from app.sponge import BudgetedView, Direction, Interface
from app.stats import truthtable_likelihood_ratio

from .models import Advice, Distinguisher


class ConstantDistinguisher(Distinguisher):
    name = "constant"

    def __init__(self, bit: int = 1):
        self.bit = int(bool(bit))

    def online(self, view: BudgetedView, advice: Advice, rng: np.random.Generator) -> int:
        return self.bit

    def table_verdicts(self, params, priv, phi):
        return np.full(len(priv), self.bit, dtype=np.int64)


class TruthTableReader(Distinguisher):
    """
    Reads the full private truth table offline and accepts iff the sponge law
    gives it more weight than the uniform law. One advice bit, no online queries.
    """
    name = "truth-table-reader"
    S = 1
    T = 0

    def decide(self, interface: Interface) -> int:
        table = interface.truth_table("priv")
        return int(truthtable_likelihood_ratio(interface.params, table) > 1.0)

    def table_verdicts(self, params, priv, phi):
        # depends on priv only; same for every SR
        key = (params, priv.tobytes())
        cache = self.__dict__.setdefault("_verdicts", {})
        if key not in cache:
            cache[key] = np.array([truthtable_likelihood_ratio(params, row) > 1.0 for row in priv], dtype=np.int64)
        return cache[key]

    def offline(self, interface: Interface) -> Advice:
        return Advice.from_bit(self.decide(interface))

    def online(self, view: BudgetedView, advice: Advice, rng: np.random.Generator) -> int:
        return advice.payload[0]


class PermutationTableReader(Distinguisher):
    """Reads the full public permutation table offline and accepts iff phi(point_in) = point_out."""
    name = "permutation-table-reader"
    S = 1
    T = 0

    def __init__(self, point_in: int = 0b01, point_out: int = 0b11):
        self.point_in = point_in
        self.point_out = point_out

    def offline(self, interface: Interface) -> Advice:
        phi = interface.truth_table("phi")
        return Advice.from_bit(phi.fwd(self.point_in) == self.point_out)

    def table_verdicts(self, params, priv, phi):
        return (phi.fwd(self.point_in) == self.point_out).astype(np.int64)

    def online(self, view: BudgetedView, advice: Advice, rng: np.random.Generator) -> int:
        return advice.payload[0]

    def to_dict(self):
        return {**super().to_dict(), "point_in": self.point_in, "point_out": self.point_out}


class InverseConsistencyDistinguisher(Distinguisher):
    """
    Accepts iff pub(inv, pub(fwd, w)) = w at random w and priv(x) agrees with
    the top r bits of pub(fwd, x || 0^c) at random x. Four queries per point.
    """
    name = "inverse-consistency"

    def __init__(self, points: int = 10):
        self.points = points
        self.T = 4 * points

    def online(self, view: BudgetedView, advice: Advice, rng: np.random.Generator) -> int:
        params = view.params
        ws = rng.integers(0, params.domain_size, self.points)
        xs = rng.integers(0, params.rate_size, self.points)
        for w, x in zip(ws.tolist(), xs.tolist()):
            if view.pub_eval(Direction.INV, view.pub_eval(Direction.FWD, w)) != w:
                return 0
            if view.priv_eval(x) != view.pub_eval(Direction.FWD, x << params.c) >> params.c:
                return 0
        return 1


class PrivParityDistinguisher(Distinguisher):
    """Queries priv only, at distinct random points, and outputs the parity of the low bits."""
    name = "priv-parity"

    def __init__(self, points: int = 4):
        self.points = points
        self.T = points

    def online(self, view: BudgetedView, advice: Advice, rng: np.random.Generator) -> int:
        size = view.params.rate_size
        xs = rng.choice(size, size=min(self.points, size), replace=False)
        bit = 0
        for x in xs.tolist():
            bit ^= view.priv_eval(x) & 1
        return bit


DISTINGUISHERS = {
    "constant": ConstantDistinguisher,
    "truth-table-reader": TruthTableReader,
    "permutation-table-reader": PermutationTableReader,
    "inverse-consistency": InverseConsistencyDistinguisher,
    "priv-parity": PrivParityDistinguisher,
}
