"""
Exhaustive and seeded self-checks for one (r, c) setting.
"""
import math
from typing import Any, Dict

import numpy as np

from app.bitdomain import FunctionTable, SpongeParams, derive_seed, generator, sample_function
from app.core.config import settings
from app.core.errors import ContractError
from app.core.logging import get_logger
from app.games import replay_check
from app.sponge import Direction, sponge_truth_table
from app.stats import all_function_tables
from app.symsim import SharedRandomness, SimOracle, symmetrize, transversal_table
from app.young import coset_census, double_coset_multiset, subgroup_h, subgroup_k

logger = get_logger(__name__)

SPONGE_MATCH_FUNCTIONS = 100
SCRIPTED_QUERIES = 1000
MAX_FIBER_PRODUCTS = 10_000


def _enumerable(params: SpongeParams) -> bool:
    return params.domain_size <= settings.MAX_ENUM_POINTS


def check_sponge_match(params: SpongeParams, seed: int, functions: int = SPONGE_MATCH_FUNCTIONS) -> Dict[str, Any]:
    """Sp^{symmetrize(f)} = f on every input, for seeded f."""
    mismatches = 0
    for i in range(functions):
        f = sample_function(params, derive_seed(seed, "verify", "f", i))
        phi = symmetrize(f, derive_seed(seed, "verify", "sr", i))
        if sponge_truth_table(phi, params) != f:
            mismatches += 1
    return {"passed": mismatches == 0, "functions": functions, "mismatches": mismatches}


def check_single_query(params: SpongeParams, seed: int, queries: int = SCRIPTED_QUERIES) -> Dict[str, Any]:
    """One f-query per simulator call over a scripted fwd/inv mix."""
    f = sample_function(params, derive_seed(seed, "verify", "single-query"))
    sim = SimOracle(params, f, SharedRandomness.from_seed(seed, "verify"))
    rng = generator(seed, "verify", "script")
    directions = rng.integers(0, 2, queries)
    points = rng.integers(0, params.domain_size, queries)
    for d, w in zip(directions.tolist(), points.tolist()):
        sim.query(Direction.FWD if d else Direction.INV, w)
    return {"passed": sim.f_queries == queries, "calls": queries, "f_queries": sim.f_queries}


def check_statelessness(params: SpongeParams, seed: int) -> Dict[str, Any]:
    """The sponge simulator answers identically under reordering and replay."""
    try:
        replay_check(SimOracle, params, seed=seed)
    except ContractError as exc:
        return {"passed": False, "error": str(exc)}
    return {"passed": True}


def check_fiber_uniformity(params: SpongeParams) -> Dict[str, Any]:
    """Every member of each coset H pi_f K appears equally often among the products."""
    h, k = subgroup_h(params), subgroup_k(params)
    if not _enumerable(params) or h.order * k.order > MAX_FIBER_PRODUCTS:
        return {"passed": True, "skipped": True}
    rows = []
    for table in all_function_tables(params):
        f = FunctionTable(params, np.array(table))
        multiset = double_coset_multiset(transversal_table(f), h, k)
        multiplicities = set(multiset.values())
        rows.append({
            "f": list(table),
            "members": len(multiset),
            "multiplicity": sorted(multiplicities),
            "uniform": len(multiplicities) == 1,
        })
    return {"passed": all(row["uniform"] for row in rows), "functions": rows}


def check_census(params: SpongeParams) -> Dict[str, Any]:
    """|H||K| = size * factorizations per coset, and the cosets cover S_{2^n}."""
    if not _enumerable(params):
        return {"passed": True, "skipped": True}
    census = coset_census(params)
    covered = census.total == math.factorial(params.domain_size)
    return {"passed": census.consistent and covered, "cosets": len(census), "sizes": census.sizes()}


def verify_suite(params: SpongeParams, seed: int = 0) -> Dict[str, Any]:
    """Run every check; the suite passes iff each check does."""
    params.require_table_mode()
    checks = {
        "census": check_census(params),
        "fiber_uniformity": check_fiber_uniformity(params),
        "sponge_match": check_sponge_match(params, seed),
        "single_query": check_single_query(params, seed),
        "statelessness": check_statelessness(params, seed),
    }
    passed = all(check["passed"] for check in checks.values())
    logger.info("Verification suite finished", passed=passed, **params.to_dict())
    return {"params": params.to_dict(), "passed": passed, "checks": checks}
