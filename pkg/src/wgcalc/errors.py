"""Shared error types and enumeration guards.

Full enumerations of S_k, M_2k and H_k grow factorially, so every
enumeration-backed operation checks its argument against a guard.  The
defaults keep each full enumeration cheap; the environment variable
WGCALC_MAX_K overrides all of them at once.
"""

import os

DEFAULT_MAX_SYM = 9        # enumerate_sym: 9! = 362880 permutations
DEFAULT_MAX_PAIRINGS = 8   # enumerate_pairings: 15!! = 2027025 pairings
DEFAULT_MAX_ZONAL = 6      # hyperoctahedral averaging: |H_6| = 46080
DEFAULT_MAX_MOMENT = 7     # double sums over S_k x S_k
DEFAULT_MAX_CHARACTER = 12  # character tables: p(12)^2 = 5929 entries

ENV_MAX_K = "WGCALC_MAX_K"


class CapacityError(Exception):
    """An enumeration guard was exceeded."""


class ValidityError(Exception):
    """Parameters lie outside the validity range of a formula."""


def guard_limit(default: int) -> int:
    """Effective guard limit: WGCALC_MAX_K if set, else the given default."""
    value = os.environ.get(ENV_MAX_K)
    return int(value) if value else default


def check_guard(k: int, default: int, what: str, override: int | None = None) -> None:
    """Raise unless 1 <= k <= limit, where limit is ``override`` or the guard."""
    if k < 1:
        raise ValueError(f"{what}: k must be at least 1, got {k}")
    limit = override if override is not None else guard_limit(default)
    if k > limit:
        raise CapacityError(
            f"{what}: k={k} exceeds guard {limit} (set {ENV_MAX_K} to raise it)"
        )
