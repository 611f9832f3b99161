"""Runtime settings.

Limits that bound exhaustive searches live here. Every operation that uses
one accepts an explicit value and otherwise falls back to
:meth:`Settings.from_env`, which honours the ``GSOKIT_LIMIT`` environment
variable for the extension-enumeration bound.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional

from gsokit.errors import ConfigError

ENV_LIMIT = "GSOKIT_LIMIT"


@dataclass(frozen=True)
class Settings:
    """Limits for exhaustive procedures.

    Attributes:
        enumeration_limit: Largest carrier for which extensions are enumerated.
        witness_cap: Largest number of witnesses kept in one report.
        isomorphism_limit: Largest sort size accepted by the isomorphism test.
        model_size_limit: Largest sort size accepted by the axiom checker.
    """

    enumeration_limit: int = 10
    witness_cap: int = 100
    isomorphism_limit: int = 12
    model_size_limit: int = 50

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        """Return default settings with ``GSOKIT_LIMIT`` applied if set."""
        environ = os.environ if environ is None else environ
        raw = environ.get(ENV_LIMIT)
        settings = cls()
        if raw is None or raw.strip() == "":
            return settings
        try:
            limit = int(raw)
        except ValueError as exc:
            raise ConfigError(f"{ENV_LIMIT} must be an integer, got {raw!r}") from exc
        if limit < 0:
            raise ConfigError(f"{ENV_LIMIT} must be non-negative, got {limit}")
        return replace(settings, enumeration_limit=limit)


def resolve(value: Optional[int], field: str) -> int:
    """Return ``value`` or, when it is None, the named setting from the environment."""
    if value is not None:
        return value
    return getattr(Settings.from_env(), field)
