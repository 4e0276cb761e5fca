"""Brute-force references.

Everything here is deliberately quadratic or worse and re-encodes from
scratch; these functions define the expected answers for the fast engine.
Positions are 0-based; witnesses are 1-based like in the witness table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

from duelsweep.encoding import CartesianScheme, ExactScheme, ParameterizedScheme, Scheme


def naive_match(x: Sequence, y: Sequence, scheme: Scheme) -> bool:
    if len(x) != len(y):
        return False
    return scheme.encode(x).codes == scheme.encode(y).codes


def naive_occurrences(t: Sequence, p: Sequence, scheme: Scheme) -> list[int]:
    m = len(p)
    target = scheme.encode(p).codes
    return [x for x in range(len(t) - m + 1) if scheme.encode(t[x:x + m]).codes == target]


def naive_lcp(x: Sequence, y: Sequence, scheme: Scheme) -> int:
    fx, fy = scheme.encode(x).codes, scheme.encode(y).codes
    n = min(len(fx), len(fy))
    for i in range(n):
        if fx[i] != fy[i]:
            return i
    return n


def naive_witness_table(p: Sequence, scheme: Scheme) -> list[int]:
    """Tight witness table: ``W[a]`` is the first mismatch (1-based) of the
    pattern against its suffix at ``a``, or 0."""
    m = len(p)
    fp = scheme.encode(p).codes
    table = [0] * m
    for a in range(1, m):
        fs = scheme.encode(p[a:]).codes
        for i in range(m - a):
            if fp[i] != fs[i]:
                table[a] = i + 1
                break
    return table


# --------------------------------------------------------------------------
# independent relation checkers (no encodings involved)


def exact_equivalent(x: Sequence, y: Sequence) -> bool:
    return len(x) == len(y) and all(a == b for a, b in zip(x, y))


def param_equivalent(x: Sequence, y: Sequence, constants=frozenset()) -> bool:
    """True if a bijection on parameters maps ``x`` onto ``y``."""
    if len(x) != len(y):
        return False
    fwd: dict[Hashable, Hashable] = {}
    back: dict[Hashable, Hashable] = {}
    for a, b in zip(x, y):
        ca, cb = a in constants, b in constants
        if ca or cb:
            if not (ca and cb and a == b):
                return False
            continue
        if fwd.setdefault(a, b) != b or back.setdefault(b, a) != a:
            return False
    return True


def cartesian_tree(x: Sequence) -> tuple | None:
    """Shape of the cartesian tree of ``x``; the leftmost minimum is the root."""
    if not x:
        return None
    lo = min(x)
    r = next(i for i, v in enumerate(x) if v == lo)
    return (cartesian_tree(x[:r]), cartesian_tree(x[r + 1:]))


def cartesian_equivalent(x: Sequence, y: Sequence) -> bool:
    return len(x) == len(y) and cartesian_tree(tuple(x)) == cartesian_tree(tuple(y))


def relation_for(scheme: Scheme) -> Callable[[Sequence, Sequence], bool]:
    if isinstance(scheme, ExactScheme):
        return exact_equivalent
    if isinstance(scheme, ParameterizedScheme):
        return lambda x, y: param_equivalent(x, y, scheme.constants)
    if isinstance(scheme, CartesianScheme):
        return cartesian_equivalent
    raise TypeError(f"no reference relation for {scheme!r}")


def is_period(x: Sequence, p: int, scheme: Scheme) -> bool:
    """Border-based period test through the reference relation."""
    n = len(x)
    if not 0 < p < n:
        return False
    return relation_for(scheme)(x[: n - p], x[p:])


def naive_periods(x: Sequence, scheme: Scheme) -> set[int]:
    return {p for p in range(1, len(x)) if is_period(x, p, scheme)}


# --------------------------------------------------------------------------


@dataclass
class MatchReport:
    occurrences: list[int]
    lcps: list[int] = field(default_factory=list)
    witness_zeros: list[int] = field(default_factory=list)


def match_report(t: Sequence, p: Sequence, scheme: Scheme) -> MatchReport:
    m = len(p)
    lcps = [naive_lcp(t[x:x + m], p, scheme) for x in range(len(t) - m + 1)]
    return MatchReport(
        occurrences=[x for x, v in enumerate(lcps) if v == m],
        lcps=lcps,
        witness_zeros=[a for a, v in enumerate(naive_witness_table(p, scheme)) if v == 0],
    )


def find_suffix_counterexample(scheme: Scheme, sample: Callable[[random.Random, int], Sequence],
                               trials: int = 1000, max_len: int = 12, seed: int = 0):
    """Random search for a violation of the suffix re-encoding property.

    Returns ``(x, y, i, j)`` such that the codes of ``x`` and ``y`` agree at
    ``i`` but the codes of ``x[j:]`` and ``y[j:]`` disagree at ``i - j``,
    or None if no violation was found.
    """
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(1, max_len)
        x, y = tuple(sample(rng, n)), tuple(sample(rng, n))
        fx, fy = scheme.encode(x).codes, scheme.encode(y).codes
        for i in range(n):
            if fx[i] != fy[i]:
                continue
            for j in range(1, i + 1):
                if scheme.encode(x[j:]).codes[i - j] != scheme.encode(y[j:]).codes[i - j]:
                    return x, y, i, j
    return None
