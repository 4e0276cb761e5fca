"""Pattern preprocessing: the witness table.

``W[a]`` for offset ``a`` (0-based) is 0 when ``a == 0`` or ``a`` is a
period of the pattern, and otherwise a witness: a 1-based position ``w``
with ``w <= m - a`` at which the pattern code differs from the re-encoded
code of the suffix starting at ``a``. Witnesses are valid but not
necessarily the smallest ones.

The table is built in rounds. In round ``k`` the table splits into a head
``W[0:tail]`` and a finalized tail ``W[tail:m]``. The head is kept
``2**k``-sparse (one zero per ``2**k``-block, at most one in the last
block); each round finalizes the suspected period in the second block,
duels pairs of zeros to reach ``2**(k+1)``-sparsity and finalizes the
newly exposed tail, either directly or by propagating witnesses along
residue classes modulo the suspected period.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import MutableSequence, Sequence

from duelsweep.encoding import Code, EncodedString, SuffixView
from duelsweep.pram import ContractViolation, Machine, Monitor


@dataclass(frozen=True)
class WitnessTable:
    w: tuple[int, ...]
    rounds: int = 0

    @property
    def m(self) -> int:
        return len(self.w)

    def __len__(self) -> int:
        return len(self.w)

    def __getitem__(self, a: int) -> int:
        return self.w[a]

    def zeros(self) -> list[int]:
        return [a for a, v in enumerate(self.w) if v == 0]

    def to_lines(self) -> str:
        return "".join(f"{a}\t{v}\n" for a, v in enumerate(self.w))

    def to_json(self) -> str:
        return json.dumps({"m": self.m, "w": list(self.w)})

    @classmethod
    def from_json(cls, text: str) -> "WitnessTable":
        obj = json.loads(text)
        w = tuple(int(v) for v in obj["w"])
        if len(w) != obj["m"]:
            raise ValueError("witness table length does not match m")
        return cls(w)


def check_parallel(machine: Machine, xs: Sequence[Code], ys: Sequence[Code]) -> int:
    """Smallest 1-based index where ``xs`` and ``ys`` differ, or 0.

    One parallel step: every mismatching index writes itself into a shared
    cell and the lowest index wins.
    """
    n = len(xs)
    if n != len(ys):
        raise ContractViolation(f"check_parallel on lengths {n} and {len(ys)}")
    cell = [0]

    def body(i):
        if xs[i] != ys[i]:
            return ((cell, 0, i + 1),)
        return None

    machine.pfor(range(n), body, targets=(cell,))
    return cell[0]


def self_check(machine: Machine, P: EncodedString, a: int) -> int:
    """Tight witness for offset ``a`` of ``P`` (0 if ``a`` is a period)."""
    m = len(P)
    return check_parallel(machine, P.codes[: m - a], SuffixView(P, a, 0, m - a, machine.ledger))


def get_zeros(machine: Machine, W: Sequence[int], l: int, r: int, k: int,
              monitor: Monitor | None = None) -> list[int]:
    """Zero positions of ``W[l:r+1]``, one slot per ``2**k``-block.

    Slot ``b`` holds the zero in block ``(l >> k) + b`` or -1. Under
    ``2**k``-sparsity no slot receives two writes; a monitor records it if
    one does.
    """
    if r < l:
        return []
    base = l >> k
    A = [-1] * ((r >> k) - base + 1)

    def body(i):
        if W[i] == 0:
            return ((A, (i >> k) - base, i),)
        return None

    dropped = machine.pfor(range(l, r + 1), body, targets=(A,))
    if monitor is not None and monitor.enabled:
        monitor.check("get_zeros.sparsity", dropped == 0, "two zeros in one %d-block of W[%d:%d]", 1 << k, l, r + 1)
    return A


def duel(S: EncodedString, P: EncodedString, W: Sequence[int], x: int, y: int, ledger=None) -> int:
    """Survivor of candidates ``x < y`` of ``S`` using witness ``W[y - x]``.

    If the suffix of ``S`` at ``y`` agrees with the pattern at the witness,
    ``x`` cannot be an occurrence; otherwise ``y`` cannot.
    """
    w = W[y - x]
    if w == 0:
        raise ContractViolation(f"duel between consistent positions {x} and {y}")
    if S.reencode_at(y, w - 1, ledger) == P.codes[w - 1]:
        return y
    return x


def is_valid_witness(P: EncodedString, a: int, w: int) -> bool:
    """Uncounted check that ``w`` is a witness for offset ``a``."""
    m = len(P)
    return 0 < a < m and 1 <= w <= m - a and P.reencode_at(a, w - 1) != P.codes[w - 1]


# --------------------------------------------------------------------------
# preprocessing rounds


def satisfy_head_sparsity(machine: Machine, P: EncodedString, W: MutableSequence[int], x: int, k: int,
                          monitor: Monitor | None = None) -> None:
    """Make ``W[0:x+1]`` ``2**(k+1)``-sparse by dueling zero pairs.

    The two zeros ``j1 < j2`` of each ``2**(k+1)``-block past the first
    duel with witness ``w = W[j2 - j1]``. If ``j1`` survives, ``w``
    witnesses ``j2``; if ``j2`` survives, ``w + (j2 - j1)`` witnesses ``j1``.
    """
    A = get_zeros(machine, W, 2 << k, x, k, monitor)
    m = len(P)
    checking = monitor is not None and monitor.enabled

    def body(i):
        j1, j2 = A[2 * i], A[2 * i + 1]
        if j1 == -1 or j2 == -1:
            return None
        a = j2 - j1
        w = W[a]
        if checking:
            monitor.check("duel_range", w != 0 and j2 + w <= m,
                          "head duel (%d, %d) with W[%d]=%d, m=%d", j1, j2, a, w, m)
        if duel(P, P, W, j1, j2, machine.ledger) == j1:
            return ((W, j2, w),)
        return ((W, j1, w + a),)

    machine.pfor(range(len(A) // 2), body, targets=(W,))


def finalize_residue(machine: Machine, P: EncodedString, W: MutableSequence[int],
                     tail: int, old_tail: int, p: int, rem: int) -> None:
    """Finalize new-tail offsets ``i == rem (mod p)`` by binary search.

    Within the class, offsets with a witness form a prefix. The search keeps
    every member ``<= l*p + rem`` witnessed and every member ``>= r*p + rem``
    a period; members up to the boundary get a witness shifted from the
    boundary's tight witness.
    """
    l = -((rem - tail) // p) - 1
    r = (old_tail - 1 - rem) // p + 1
    while r - l > 1:
        machine.seq()
        i = (l + r) // 2
        if self_check(machine, P, i * p + rem) == 0:
            r = i
        else:
            l = i
    b = l * p + rem
    if b < tail:
        # no member of the class has a witness
        return
    w = self_check(machine, P, b)

    def body(i):
        if W[i] == 0 and (i - b) % p == 0:
            return ((W, i, w + b - i),)
        return None

    machine.pfor(range(tail, b + 1), body, targets=(W,))


def finalize_tail(machine: Machine, P: EncodedString, W: MutableSequence[int],
                  tail: int, old_tail: int, p: int, k: int, monitor: Monitor | None = None) -> None:
    """Finalize ``W[tail:old_tail]``, the part of the tail new this round."""
    if old_tail - tail == 1 << k:
        # at most two head zeros can sit in a slice of one block's length
        for z in get_zeros(machine, W, tail, old_tail - 1, k, monitor):
            machine.seq()
            if z != -1:
                W[z] = self_check(machine, P, z)
        return

    lo = old_tail - p

    def propagate(i):
        q = lo + (i - lo) % p
        if W[i] == 0 and W[q] != 0:
            return ((W, i, W[q] + q - i),)
        return None

    machine.pfor(range(tail, old_tail), propagate, targets=(W,))
    for z in get_zeros(machine, W, lo, old_tail - 1, k, monitor):
        machine.seq()
        if z != -1:
            finalize_residue(machine, P, W, tail, old_tail, p, z % p)


def _check_round_start(P: EncodedString, W: Sequence[int], tail: int, k: int, monitor: Monitor) -> None:
    m = len(P)
    blk = 1 << k
    tail_len = m - tail
    # 2^k-sparsity of W[0:tail]
    nblocks = -(-tail // blk)
    for b in range(nblocks):
        lo, hi = b * blk, min((b + 1) * blk, tail)
        z = sum(1 for i in range(lo, hi) if W[i] == 0)
        if b < nblocks - 1:
            monitor.check("head_sparsity", z == 1, "round %d: block %d of head has %d zeros", k, b, z)
        else:
            monitor.check("head_sparsity", z <= 1, "round %d: last block of head has %d zeros", k, z)
    for i in range(tail):
        v = W[i]
        bound = tail_len + (1 if i < blk else blk)
        monitor.check("head_witness_bound", v <= bound,
                      "round %d: W[%d]=%d exceeds %d", k, i, v, bound)
        if v:
            monitor.check("head_witness_valid", is_valid_witness(P, i, v),
                          "round %d: W[%d]=%d is not a witness", k, i, v)


def preprocess(P: EncodedString, machine: Machine | None = None,
               monitor: Monitor | None = None) -> WitnessTable:
    """Build the witness table of an encoded pattern."""
    m = len(P)
    if m == 0:
        raise ValueError("pattern must be non-empty")
    machine = machine if machine is not None else Machine()
    W = [0] * m
    if m == 1:
        if monitor is not None:
            monitor.record_rounds("preprocess", 0)
        return WitnessTable((0,), 0)

    checking = monitor is not None and monitor.enabled
    tail, k, rounds = m, 0, 0
    while (1 << k) <= tail:
        rounds += 1
        blk = 1 << k
        if checking:
            _check_round_start(P, W, tail, k, monitor)
        # suspected period: the head zero of the second block, if any
        zeros = get_zeros(machine, W, blk, min(2 * blk - 1, tail - 1), k, monitor)
        p = zeros[0] if zeros else -1
        old_tail = tail
        if p != -1:
            W[p] = self_check(machine, P, p)
            machine.seq()
            lcp = m - p if W[p] == 0 else W[p] - 1
            tail = min(old_tail - blk, m - lcp)
        else:
            tail = old_tail - blk
        satisfy_head_sparsity(machine, P, W, tail - 1, k, monitor)
        finalize_tail(machine, P, W, tail, old_tail, p, k, monitor)
        k += 1

    if monitor is not None:
        monitor.record_rounds("preprocess", rounds)
    return WitnessTable(tuple(W), rounds)
