"""Encodings for substring-consistent equivalence relations.

An encoding ``f`` maps a string to a code sequence of the same length such
that prefixes encode to prefixes, ``f(X) == f(Y)`` exactly when ``X`` and
``Y`` match, and a code at one position can be recomputed for any suffix
of the string from the stored codes alone ("re-encoding").

Three schemes are provided:

* ``exact``      every code is ``Literal(symbol)``.
* ``param``      prev-encoding. Constants pass through as literals, the
                 first occurrence of a parameter is ``INFINITY`` and later
                 occurrences are the distance to the previous one.
* ``cartesian``  parent-distance encoding. Distance to the nearest
                 position on the left holding a value ``<=`` the current
                 one, or ``ZERO`` if there is none.

Indexing is 0-based everywhere. ``reencode_at(enc, start, i)`` is the code
at index ``i`` of ``encode(source[start:])``. The textbook 1-based formula
with suffix start ``x`` and relative position ``i'`` maps to
``start = x - 1`` and ``i = i' - 1``; its test ``d >= i'`` becomes
``d > i``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING, Hashable, Iterable, NamedTuple, Sequence, Union

if TYPE_CHECKING:
    from duelsweep.pram import StepLedger


class Literal(NamedTuple):
    """A symbol passed through unchanged."""

    symbol: Hashable


class _Infinity(enum.Enum):
    INFINITY = "inf"

    def __repr__(self) -> str:
        return "INF"


INFINITY = _Infinity.INFINITY
# Distances are positive ints; ZERO is the parent-distance "no parent" code.
ZERO = 0

Code = Union[Literal, int, _Infinity]


@dataclass(frozen=True, eq=False)
class EncodedString:
    """Codes of ``source`` under ``scheme``, plus the source itself."""

    codes: Sequence[Code]
    source: Sequence[Hashable]
    scheme: "Scheme"

    def __len__(self) -> int:
        return len(self.codes)

    def reencode_at(self, start: int, i: int, ledger: StepLedger | None = None) -> Code:
        return self.scheme.reencode_at(self, start, i, ledger)


def _check_range(enc: EncodedString, start: int, i: int) -> None:
    if start < 0 or i < 0 or start + i >= len(enc.codes):
        raise IndexError(f"re-encode position (start={start}, i={i}) outside string of length {len(enc.codes)}")


# --------------------------------------------------------------------------
# exact


def encode_exact(x: Sequence[Hashable]) -> list[Code]:
    return [Literal(c) for c in x]


def exact_reencode(enc: EncodedString, start: int, i: int, ledger: StepLedger | None = None) -> Code:
    _check_range(enc, start, i)
    if ledger is not None:
        ledger.reencodes += 1
    return enc.codes[start + i]


# --------------------------------------------------------------------------
# parameterized (prev-encoding)


def prev_encode(x: Sequence[Hashable], constants: Iterable[Hashable] = ()) -> list[Code]:
    """Prev-encode ``x``; symbols not in ``constants`` are parameters.

    >>> prev_encode("xyxxzy")
    [INF, INF, 2, 1, INF, 4]
    """
    constants = frozenset(constants)
    last: dict[Hashable, int] = {}
    out: list[Code] = []
    for i, c in enumerate(x):
        if c in constants:
            out.append(Literal(c))
            continue
        k = last.get(c)
        out.append(INFINITY if k is None else i - k)
        last[c] = i
    return out


def prev_reencode(enc: EncodedString, start: int, i: int, ledger: StepLedger | None = None) -> Code:
    """Code ``i`` of ``prev(source[start:])`` in constant time.

    A stored distance that reaches back past ``start`` becomes ``INFINITY``;
    literals and infinities are unchanged.
    """
    _check_range(enc, start, i)
    if ledger is not None:
        ledger.reencodes += 1
    code = enc.codes[start + i]
    if type(code) is int and code > i:
        return INFINITY
    return code


# --------------------------------------------------------------------------
# cartesian tree (parent-distance)


def pd_encode(x: Sequence[int]) -> list[Code]:
    """Parent-distance encoding via an all-nearest-smaller-values stack.

    >>> pd_encode((3, 1, 4, 1, 5))
    [0, 0, 1, 2, 1]
    """
    out: list[Code] = []
    stack: list[int] = []
    for i, v in enumerate(x):
        while stack and x[stack[-1]] > v:
            stack.pop()
        out.append(i - stack[-1] if stack else ZERO)
        stack.append(i)
    return out


def pd_reencode(enc: EncodedString, start: int, i: int, ledger: StepLedger | None = None) -> Code:
    _check_range(enc, start, i)
    if ledger is not None:
        ledger.reencodes += 1
    code = enc.codes[start + i]
    if code > i:
        return ZERO
    return code


# --------------------------------------------------------------------------
# scheme objects


class Scheme:
    """An encoding together with its constant-cost suffix re-encoder.

    Subclasses supply ``_encode`` and ``reencode_at``. A custom scheme must
    satisfy the suffix re-encoding property: equal codes at position ``i``
    for two equal-length strings stay equal at ``i - j`` after dropping the
    first ``j`` symbols of both. ``oracle.find_suffix_counterexample`` is a
    randomized probe for it, not a proof.
    """

    name = "abstract"
    #: upper bound on stored-code reads per ``reencode_at`` call
    reencode_reads = 1

    def _encode(self, x: Sequence[Hashable]) -> list[Code]:
        raise NotImplementedError

    def encode(self, x: Sequence[Hashable]) -> EncodedString:
        x = tuple(x)
        return EncodedString(self._encode(x), x, self)

    def reencode_at(self, enc: EncodedString, start: int, i: int, ledger: StepLedger | None = None) -> Code:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class ExactScheme(Scheme):
    name = "exact"
    _encode = staticmethod(encode_exact)
    reencode_at = staticmethod(exact_reencode)


class ParameterizedScheme(Scheme):
    name = "param"
    reencode_at = staticmethod(prev_reencode)

    def __init__(self, constants: Iterable[Hashable] = ()):
        self.constants = frozenset(constants)

    def _encode(self, x):
        return prev_encode(x, self.constants)

    def is_parameter(self, c: Hashable) -> bool:
        return c not in self.constants

    def __repr__(self) -> str:
        return f"ParameterizedScheme(constants={sorted(self.constants, key=repr)!r})"


class CartesianScheme(Scheme):
    name = "cartesian"
    _encode = staticmethod(pd_encode)
    reencode_at = staticmethod(pd_reencode)


SCHEMES = ("exact", "param", "cartesian")


def get_scheme(name: str, constants: Iterable[Hashable] = ()) -> Scheme:
    if name == "exact":
        return ExactScheme()
    if name == "param":
        return ParameterizedScheme(constants)
    if name == "cartesian":
        return CartesianScheme()
    raise ValueError(f"unknown scheme {name!r}; expected one of {', '.join(SCHEMES)}")


class SuffixView(Sequence):
    """Lazy window ``encode(source[start:])[offset : offset + length]``.

    Every element access is one counted re-encode.
    """

    __slots__ = ("enc", "start", "offset", "length", "ledger", "_fn")

    def __init__(self, enc: EncodedString, start: int, offset: int = 0,
                 length: int | None = None, ledger: StepLedger | None = None):
        if length is None:
            length = len(enc) - start - offset
        if start < 0 or offset < 0 or length < 0 or start + offset + length > len(enc):
            raise IndexError("suffix view outside encoded string")
        self.enc = enc
        self.start = start
        self.offset = offset
        self.length = length
        self.ledger = ledger
        self._fn = enc.scheme.reencode_at

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(self.length))]
        if not 0 <= i < self.length:
            raise IndexError(i)
        return self._fn(self.enc, self.start, self.offset + i, self.ledger)
