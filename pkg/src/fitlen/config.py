"""Resource limits shared by builders, series computations and the oracle."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    # Largest permutation degree any construction may produce.
    max_degree: int = 4096
    # Largest group the brute-force oracle will enumerate.
    oracle_cap: int = 20000
    # Largest |H|*|K| the product-set counter will accept.
    pair_budget: int = 10_000_000
    # Ceiling on series steps before input is declared not soluble.
    series_step_limit: int = 256
    # Largest ground-set size for exhaustive cover enumeration.
    cover_ground_limit: int = 6


DEFAULT_LIMITS = Limits()
