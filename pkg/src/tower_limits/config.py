from dataclasses import dataclass, replace
import os

BUDGET_ENV = "TOWER_LIMITS_BUDGET"


@dataclass(frozen=True)
class Config:
    """Budgets and ceilings used by the enumeration and iteration routines."""

    enum_ceiling: int = 10**6
    max_steps: int = 2**25
    cache_bound: int = 2**22
    literal_cap: int = 10**7
    factor_ceiling: int = 2**64

    def __post_init__(self):
        for name in ("enum_ceiling", "max_steps", "cache_bound", "literal_cap", "factor_ceiling"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def with_overrides(self, **kwargs):
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT = Config()


def from_env(base=DEFAULT):
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return base
    return base.with_overrides(max_steps=int(raw))
