"""Per-replicate seed derivation."""

from model.errors import DomainError

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(value: int) -> int:
    """SplitMix64 finalizer: a bijective 64-bit avalanche mix."""
    z = value & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def substream_seed(base_seed: int, rep: int) -> int:
    """
    Seed of replicate ``rep``: splitmix64(base_seed + (rep + 1)·γ mod 2⁶⁴).

    Distinct replicates of one base seed never collide because the map is a bijection of a
    strictly increasing counter.

    Args:
        base_seed: 64-bit base token
        rep: Replicate index, >= 0

    Returns:
        64-bit seed
    """
    if rep < 0:
        raise DomainError(f"replicate index must be nonnegative, got {rep}")
    if not 0 <= base_seed <= MASK64:
        raise DomainError(f"base seed must be a 64-bit unsigned integer, got {base_seed}")
    return splitmix64((base_seed + (rep + 1) * GOLDEN_GAMMA) & MASK64)
