"""Reproducible random (text, pattern) instances."""

from __future__ import annotations

import random
from typing import Sequence

BYTE_ALPHABET = b"abcdefghijklmnopqrstuvwxyz0123456789"


def symbols(scheme_name: str, alphabet: int) -> Sequence:
    if scheme_name == "cartesian":
        return range(alphabet)
    if alphabet > len(BYTE_ALPHABET):
        return range(alphabet)
    return BYTE_ALPHABET[:alphabet]


def random_string(rng: random.Random, alphabet: Sequence, n: int) -> tuple:
    return tuple(rng.choice(alphabet) for _ in range(n))


def random_instance(rng: random.Random, scheme_name: str, m: int, n: int, alphabet: int = 4,
                    periodic: float = 0.3) -> tuple[tuple, tuple]:
    """Random text and pattern; with probability ``periodic`` both are built
    from a short random block with a few point mutations in the text, so that
    occurrences and nontrivial periods actually show up."""
    sigma = symbols(scheme_name, alphabet)
    if rng.random() >= periodic:
        return random_string(rng, sigma, n), random_string(rng, sigma, m)
    period = rng.randint(1, max(1, m // 2))
    block = random_string(rng, sigma, period)
    shift = rng.randrange(period)
    pattern = tuple(block[i % period] for i in range(m))
    text = [block[(i + shift) % period] for i in range(n)]
    for _ in range(rng.randint(0, 3)):
        text[rng.randrange(n)] = rng.choice(sigma)
    return tuple(text), pattern
