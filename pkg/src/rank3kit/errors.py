"""Shared error types and size caps.

Caps keep the O(n^2)/O(n^3) algorithms at desk scale.  They can be
raised explicitly per call, or globally through the RANK3KIT_CAP
environment variable (used by the CLI).
"""

import os

CONSTRUCT_CAP = 4096      # vertex count for graph construction
ORBITAL_CAP = 8192        # degree for orbital (pair-orbit) computation
AUT_CAP = 2048            # degree for automorphism search
WL_CAP = 4096             # size for coherent (2-dim) refinement


class CapExceeded(Exception):
    """A requested computation is larger than the configured cap."""


class BudgetExceeded(Exception):
    """A search ran out of its time budget (distinct from failure)."""


class NotComputed(Exception):
    """The requested closed-form value is deliberately not computed here."""


def env_cap(default: int) -> int:
    raw = os.environ.get("RANK3KIT_CAP")
    if raw is None:
        return default
    return max(default, int(raw))


def check_cap(n: int, cap: int | None, default: int, what: str) -> None:
    limit = cap if cap is not None else env_cap(default)
    if n > limit:
        raise CapExceeded("%s size %d exceeds cap %d" % (what, n, limit))
