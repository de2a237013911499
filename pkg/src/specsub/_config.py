from __future__ import annotations

import os

ENV_SIZE_CAP = "SPECSUB_SIZE_CAP"

TRANSFORM_VERTEX_CAP = 20000
EIGEN_VERTEX_CAP = 2000
MATRIX_TREE_VERTEX_CAP = 400


def size_cap(default: int) -> int:
    """Vertex cap, overridden by ``SPECSUB_SIZE_CAP`` when it is set."""
    raw = os.environ.get(ENV_SIZE_CAP)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_SIZE_CAP} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValueError(f"{ENV_SIZE_CAP} must be positive, got {value}")
    return value
