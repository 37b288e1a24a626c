"""Run configuration shared by the vertex computations and the CLI."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass

from .errors import ConfigError

SEED_ENV = "MODVERTEX_SEED"


@dataclass(frozen=True)
class Config:
    """Budgets, seed and battery selection for a verification run.

    ``field_degree`` is the largest k such that GF(2^k) may be reached by
    scalar extension when a summand is not absolutely indecomposable.
    """

    n_from: int = 3
    n_to: int = 12
    field_degree: int = 2
    budget_cosets: int = 50_000_000
    budget_elements: int = 1 << 20
    budget_endo: int = 1 << 20
    seed: int = 0
    report: str = "json"
    include_sn: bool = False
    normalize_timings: bool = False
    max_n: int = 64

    def __post_init__(self):
        if not 1 <= self.field_degree <= 4:
            raise ConfigError(f"field degree must lie in 1..4, got {self.field_degree}")
        for name in ("budget_cosets", "budget_elements", "budget_endo"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.report not in ("json", "text"):
            raise ConfigError(f"unknown report format {self.report!r}")
        if self.n_from < 3 or self.n_from > self.n_to:
            raise ConfigError(f"bad range {self.n_from}..{self.n_to}")
        if self.n_to > self.max_n:
            raise ConfigError(f"n = {self.n_to} exceeds the configured maximum {self.max_n}")

    def budgets(self) -> dict:
        return {"cosets": self.budget_cosets, "elements": self.budget_elements,
                "endo": self.budget_endo}

    def as_dict(self) -> dict:
        return asdict(self)


def seed_from_env(default: int = 0) -> int:
    """Seed from the environment, if set; flags given explicitly take precedence."""
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from None
