"""Configurable limits and sweep parameters.

All caps are configuration, not constants; operations take an optional
Limits and fall back to DEFAULT_LIMITS.
"""
from __future__ import annotations

from dataclasses import dataclass, field, asdict


@dataclass(frozen=True)
class Limits:
    group_order: int = 2000        # max order of a constructed group
    subgroup_enumeration: int = 2000  # max |G| for lattice enumeration
    enumeration: int = 10**6       # max points in a coinduction / map count
    gamma_arity: int = 6           # max n for divided-power tables


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of the verification sweeps (selftest and acceptance).

    The sweep uses its own, smaller point budget so the full run fits the
    time budget; cases over budget are recorded as skips, never failures.
    """
    max_order: int = 24
    max_arity: int = 3             # n in the coinduction decompositions
    max_input_size: int = 3        # |X_i| for random H-sets
    random_tuples_per_group: int = 50
    point_budget: int = 20000      # per-case cap on constructed point sets
    lemma_max_order: int = 12      # product-form cross-check restricted here
    gamma_max: int = 4             # table sizes checked against full lattice
    seed: int = 1789


DEFAULT_LIMITS = Limits()
QUICK_SWEEP = SweepConfig(max_order=12, random_tuples_per_group=12,
                          point_budget=6000, gamma_max=3)
FULL_SWEEP = SweepConfig()


def limits_to_dict(limits: Limits) -> dict:
    return asdict(limits)


def limits_from_dict(data: dict) -> Limits:
    known = {f: data[f] for f in Limits.__dataclass_fields__ if f in data}
    return Limits(**known)
