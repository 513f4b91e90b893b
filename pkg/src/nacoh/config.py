"""Budget knobs shared by all modules.

Read the live values from ``settings``; override temporarily with
``with budget(order_cap=...)``.
"""

from __future__ import annotations

import contextlib
import dataclasses


@dataclasses.dataclass
class Settings:
    order_cap: int = 5000
    assoc_full_check: int = 256
    z1_budget: int = 10**7
    snf_max_dim: int = 4096
    action_full_check: int = 10**6
    complement_search_cap: int = 200
    brute_h2_cap: int = 2**24
    b2_set_cap: int = 2**18
    seed: int = 0


settings = Settings()


@contextlib.contextmanager
def budget(**overrides):
    old = dataclasses.replace(settings)
    for key, value in overrides.items():
        if not hasattr(settings, key):
            raise KeyError(key)
        setattr(settings, key, value)
    try:
        yield settings
    finally:
        for field in dataclasses.fields(Settings):
            setattr(settings, field.name, getattr(old, field.name))
