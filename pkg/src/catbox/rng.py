"""Deterministic SplitMix64 stream, threaded explicitly through every
random choice so that a seed pins down the full experiment transcript."""

from __future__ import annotations

from dataclasses import dataclass

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO53 = float(1 << 53)


@dataclass(frozen=True)
class RngStream:
    """Immutable generator state; advancing returns a fresh stream."""

    state: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "state", self.state & _MASK64)

    def next(self) -> tuple[float, "RngStream"]:
        """One SplitMix64 step: a uniform draw in [0, 1) and the successor."""
        u, state = _step(self.state)
        return u, RngStream(state)


def _step(state: int) -> tuple[float, int]:
    state = (state + _GAMMA) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    z ^= z >> 31
    return (z >> 11) / _TWO53, state


def rng_next(rng: RngStream) -> tuple[float, RngStream]:
    """Functional alias for :meth:`RngStream.next`."""
    return rng.next()
