"""Runtime knobs: default comparison tolerance and kernel backend selection."""

import os

DEFAULT_TOLERANCE = 1e-12


def default_tolerance() -> float:
    raw = os.environ.get("METRIKIT_TOLERANCE")
    if raw is None or raw.strip() == "":
        return DEFAULT_TOLERANCE
    value = float(raw)
    if not value >= 0.0:
        raise ValueError(f"METRIKIT_TOLERANCE must be a nonnegative number, got {raw!r}")
    return value


def numba_disabled() -> bool:
    return os.environ.get("METRIKIT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")
