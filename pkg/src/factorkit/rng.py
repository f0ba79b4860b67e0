"""Counter-based seed splitting so nested searches stay deterministic."""
from __future__ import annotations

_MASK = (1 << 64) - 1


def splitmix64(state: int) -> int:
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def child_seed(master: int, index: int) -> int:
    """Independent stream seed number `index` under `master`."""
    return splitmix64((master & _MASK) ^ splitmix64(index & _MASK))
