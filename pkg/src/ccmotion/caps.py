"""Size caps for the expensive routines.

Every cap can be overridden at once with the ``CCMOTION_CAP`` environment
variable or per process with :func:`set_override` (the CLI ``--cap`` flag).
"""

from __future__ import annotations

import os

DEFAULTS = {
    "generate": 4096,
    "tensor": 4096,
    "wl": 512,
    "oracle": 60,
    "audit": 512,
}

_override: int | None = None


def set_override(value: int | None) -> None:
    global _override
    _override = value


def cap(name: str) -> int:
    if _override is not None:
        return _override
    env = os.environ.get("CCMOTION_CAP")
    if env:
        return int(env)
    return DEFAULTS[name]
