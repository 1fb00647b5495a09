"""Search caps shared by every module.

Each cap has an environment-variable fallback so the CLI and the test suite can
raise limits without code changes.  Exceeding a cap always raises
:class:`invgen.perm.CapExceeded`; nothing is ever silently truncated.
"""

from __future__ import annotations

import dataclasses
import os
import threading

_ENV = {
    "elements": "INVGEN_CAP_ELEMENTS",
    "lattice_order": "INVGEN_CAP_LATTICE_ORDER",
    "oracle_combinations": "INVGEN_CAP_ORACLE_COMBINATIONS",
    "table_order": "INVGEN_CAP_TABLE_ORDER",
    "max_classes": "INVGEN_CAP_CLASSES",
    "max_maximal_classes": "INVGEN_CAP_MAXIMAL_CLASSES",
    "vector_degree": "INVGEN_CAP_VECTOR_DEGREE",
    "section_order": "INVGEN_CAP_SECTION_ORDER",
}


@dataclasses.dataclass(frozen=True)
class Config:
    elements: int = 2_000_000
    lattice_order: int = 5000
    oracle_combinations: int = 2_000_000
    # multiplication tables are materialized only up to this group order
    table_order: int = 6000
    max_classes: int = 64
    max_maximal_classes: int = 256
    vector_degree: int = 4096
    section_order: int = 100_000

    @classmethod
    def from_env(cls) -> "Config":
        values = {}
        for field, var in _ENV.items():
            raw = os.environ.get(var)
            if raw:
                values[field] = int(raw)
        return cls(**values)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


_lock = threading.Lock()
_current: Config | None = None


def get_config() -> Config:
    global _current
    with _lock:
        if _current is None:
            _current = Config.from_env()
        return _current


def set_config(config: Config) -> None:
    global _current
    with _lock:
        _current = config


def pick(value, field: str) -> int:
    """Return ``value`` unless it is None, else the configured cap ``field``."""
    return getattr(get_config(), field) if value is None else value
