"""Pattern searching: dueling stage, sweeping stage and text chunking.

Candidates are 0-based start positions inside a piece of text. The dueling
stage merges blocks of candidates until the survivors are pairwise
consistent (their offsets are all periods of the pattern) without ever
dropping an occurrence. The sweeping stage then verifies the survivors,
sharing verified prefix lengths between overlapping consistent candidates
so that each text position is read once per round.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from duelsweep.encoding import EncodedString, Scheme, SuffixView
from duelsweep.oracle import MatchReport
from duelsweep.pram import Machine, Monitor
from duelsweep.witness import WitnessTable, check_parallel, duel, preprocess

__all__ = [
    "Grid", "duel", "merge", "dueling_stage", "sweeping_stage", "match_piece",
    "match_encoded", "match_all", "search", "SearchResult", "ceil_log2",
]

log = logging.getLogger(__name__)


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length() if n > 1 else 0


class Grid:
    """Duel outcomes between two consistent candidate lists ``A`` before ``B``.

    ``G(i, j)`` uses 1-based row ``i`` into ``A`` and column ``j`` into
    ``B``: 0 if the two are consistent, -1 if ``A[i]`` wins their duel,
    1 if ``B[j]`` wins. Row 0 and column ``|B|+1`` are zero padding, column
    0 is -1 padding and row ``|A|+1`` is 1 padding.
    """

    def __init__(self, A: Sequence[int], B: Sequence[int], W, T: EncodedString,
                 P: EncodedString, ledger=None):
        self.A, self.B, self.W, self.T, self.P = A, B, W, T, P
        self.ledger = ledger

    def is_zero(self, i: int, j: int) -> bool:
        nA, nB = len(self.A), len(self.B)
        if i == 0:
            return j >= 1
        if j == nB + 1:
            return True
        if j == 0 or i == nA + 1:
            return False
        return self.W[self.B[j - 1] - self.A[i - 1]] == 0

    def __call__(self, i: int, j: int) -> int:
        nA, nB = len(self.A), len(self.B)
        if j == 0 and i <= nA:
            return -1
        if i == nA + 1:
            return 0 if j == nB + 1 else 1
        if self.is_zero(i, j):
            return 0
        a, b = self.A[i - 1], self.B[j - 1]
        return -1 if duel(self.T, self.P, self.W, a, b, self.ledger) == a else 1

    def materialize(self) -> list[list[int]]:
        return [[self(i, j) for j in range(len(self.B) + 2)] for i in range(len(self.A) + 2)]


def merge(machine: Machine, A: Sequence[int], B: Sequence[int], W, T: EncodedString,
          P: EncodedString) -> tuple[int, int]:
    """Split point ``(a, b)`` for merging consistent lists ``A`` before ``B``.

    Keeping ``A[:a]`` and ``B[b-1:]`` gives a consistent list that retains
    every occurrence in ``A + B``. Rows are binary searched for the last one
    in which no duel won by ``B`` is observed; within a row, columns are
    binary searched for the start of the zero suffix.
    """
    g = Grid(A, B, W, T, P, machine.ledger)
    nB = len(B)
    l1, r1 = 0, len(A) + 1
    while r1 - l1 > 1:
        m1 = (l1 + r1) // 2
        observed_one = False
        l2, r2 = 0, nB + 1
        while r2 - l2 > 1:
            machine.seq()
            m2 = (l2 + r2) // 2
            v = g(m1, m2)
            if v == 0:
                r2 = m2
            elif v == -1:
                l2 = m2
            else:
                observed_one = True
                break
        if observed_one:
            r1 = m1
        else:
            l1 = m1
    lo, hi = 0, nB + 1
    while hi - lo > 1:
        machine.seq()
        mid = (lo + hi) // 2
        if g.is_zero(l1, mid):
            hi = mid
        else:
            lo = mid
    return l1, hi


def _check_consistent(monitor: Monitor, W, cands: Sequence[int], where: str) -> None:
    for x, y in zip(cands, cands[1:]):
        monitor.check("candidates_consistent", W[y - x] == 0, "%s: adjacent survivors %d, %d", where, x, y)


def dueling_stage(machine: Machine, T: EncodedString, P: EncodedString, W, q: int,
                  monitor: Monitor | None = None, truth: MatchReport | None = None) -> list[int]:
    """Reduce candidates ``0..q-1`` to a pairwise consistent superset of the
    occurrences in ``ceil(log2 q)`` merge rounds."""
    sets: list[list[int]] = [[j] for j in range(q)]
    checking = monitor is not None and monitor.enabled
    rounds = 0
    for k in range(1, ceil_log2(q) + 1):
        rounds += 1
        nxt: list[list[int] | None] = [None] * ((len(sets) + 1) // 2)
        prev = sets

        def body(j):
            A = prev[2 * j]
            B = prev[2 * j + 1] if 2 * j + 1 < len(prev) else []
            a, b = merge(machine, A, B, W, T, P)
            return ((nxt, j, A[:a] + B[b - 1:]),)

        machine.pfor(range(len(nxt)), body, targets=(nxt,))
        sets = nxt
        if checking:
            for s in sets:
                _check_consistent(monitor, W, s, f"dueling round {k}")
            if truth is not None:
                alive = {x for s in sets for x in s}
                lost = [x for x in truth.occurrences if x < q and x not in alive]
                monitor.check("dueling_keeps_occurrences", not lost, "round %d dropped %s", k, lost)
    if monitor is not None:
        monitor.record_rounds("dueling", rounds)
    return sets[0] if sets else []


def sweeping_stage(machine: Machine, T: EncodedString, P: EncodedString, survivors: Sequence[int],
                   q: int, monitor: Monitor | None = None, truth: MatchReport | None = None) -> list[int]:
    """Verify pairwise consistent candidates; returns exactly the occurrences.

    Rounds run ``k = ceil(log2 m)`` down to 0. In each ``2**k``-block the
    smallest surviving candidate ``x`` of the second half has its prefix
    match length ``R[x]`` extended to the exact value; candidates before
    ``x`` whose window covers the mismatch are dropped and candidates after
    ``x`` inherit ``R[x]`` minus their distance.
    """
    m = len(P)
    Pc = P.codes
    C = [False] * q
    for x in survivors:
        C[x] = True
    R = [0] * q
    checking = monitor is not None and monitor.enabled
    rounds = 0
    for k in range(ceil_log2(m), -1, -1):
        rounds += 1
        size, half = 1 << k, (1 << k) >> 1
        Cand = [-1] * ((q - 1 >> k) + 1)

        def select(i):
            if C[i] and i % size >= half:
                return ((Cand, i >> k, i),)
            return None

        machine.pfor(range(q), select, targets=(Cand,))
        if checking:
            _check_read_sets(monitor, Cand, R, m, k)

        def extend(b):
            x = Cand[b]
            if x == -1:
                return None
            r = R[x]
            w = check_parallel(machine, Pc[r:], SuffixView(T, x, r, m - r, machine.ledger))
            return ((R, x, m if w == 0 else r + w - 1),)

        machine.pfor(range(len(Cand)), extend, targets=(R,))

        def prune(i):
            x = Cand[i >> k]
            if x == -1:
                return None
            out = []
            if i <= x and R[x] <= m - (x - i) - 1:
                out.append((C, i, False))
            if i >= x and C[i]:
                out.append((R, i, max(R[i], R[x] - (i - x), 0)))
            return out

        machine.pfor(range(q), prune, targets=(C, R))
        if checking and truth is not None:
            for i in range(q):
                if C[i]:
                    monitor.check("sweep_lcp_bound", truth.lcps[i] >= R[i],
                                  "round %d: R[%d]=%d above LCP %d", k, i, R[i], truth.lcps[i])
                else:
                    monitor.check("sweep_sound", truth.lcps[i] < m, "round %d: occurrence %d dropped", k, i)
    if monitor is not None:
        monitor.record_rounds("sweeping", rounds)
    return [i for i in range(q) if C[i]]


def _check_read_sets(monitor: Monitor, Cand: Sequence[int], R: Sequence[int], m: int, k: int) -> None:
    # text positions x + R[x] .. x + m - 1 read while extending each representative
    spans = sorted((x + R[x], x + m - 1) for x in Cand if x != -1 and R[x] < m)
    for (s0, e0), (s1, e1) in zip(spans, spans[1:]):
        monitor.check("sweep_reads_disjoint", s1 > e0, "round %d: reads [%d,%d] and [%d,%d] overlap", k, s0, e0, s1, e1)


def match_encoded(machine: Machine, T: EncodedString, P: EncodedString, W,
                  monitor: Monitor | None = None, truth: MatchReport | None = None) -> list[int]:
    """Occurrences of ``P`` in an already encoded piece ``T``."""
    m = len(P)
    q = len(T) - m + 1
    if q <= 0:
        return []
    survivors = dueling_stage(machine, T, P, W, q, monitor, truth)
    return sweeping_stage(machine, T, P, survivors, q, monitor, truth)


def match_piece(piece: Sequence, P: Sequence | EncodedString, scheme: Scheme,
                W: WitnessTable | None = None, machine: Machine | None = None,
                monitor: Monitor | None = None, truth: MatchReport | None = None) -> list[int]:
    """Occurrences of ``P`` in one piece of at most ``2m - 1`` symbols."""
    machine = machine if machine is not None else Machine()
    Penc = P if isinstance(P, EncodedString) else scheme.encode(P)
    if len(piece) < len(Penc):
        return []
    if W is None:
        W = preprocess(Penc, machine, monitor)
    T = scheme.encode(piece)
    machine.charge(1, len(piece))
    return match_encoded(machine, T, Penc, W, monitor, truth)


@dataclass
class SearchResult:
    occurrences: list[int]
    witness: WitnessTable
    pieces: int


def search(text: Sequence, pattern: Sequence, scheme: Scheme, machine: Machine | None = None,
           monitor: Monitor | None = None, truth: MatchReport | None = None) -> SearchResult:
    """Preprocess ``pattern`` and find all its occurrences in ``text``.

    The text is cut into pieces ``text[s : s + 2m - 1]`` for
    ``s = 0, m, 2m, ...``; each candidate start belongs to exactly one piece
    and the pieces are searched as one parallel step.
    """
    machine = machine if machine is not None else Machine()
    m, n = len(pattern), len(text)
    if m == 0:
        raise ValueError("pattern must be non-empty")
    P = scheme.encode(pattern)
    machine.charge(1, m)
    W = preprocess(P, machine, monitor)
    if m > n:
        log.warning("pattern longer than text (%d > %d); no occurrences", m, n)
        return SearchResult([], W, 0)

    starts = list(range(0, n - m + 1, m))
    found: list[list[int] | None] = [None] * len(starts)

    def body(b):
        s = starts[b]
        piece = text[s:s + 2 * m - 1]
        piece_truth = None
        if truth is not None:
            q = len(piece) - m + 1
            piece_truth = MatchReport([x - s for x in truth.occurrences if s <= x < s + q],
                                      list(truth.lcps[s:s + q]))
        T = scheme.encode(piece)
        machine.charge(1, len(piece))
        occ = match_encoded(machine, T, P, W, monitor, piece_truth)
        return ((found, b, [s + x for x in occ]),)

    machine.pfor(range(len(starts)), body, targets=(found,))
    return SearchResult(sorted({x for occ in found for x in occ}), W, len(starts))


def match_all(text: Sequence, pattern: Sequence, scheme: Scheme, machine: Machine | None = None,
              monitor: Monitor | None = None) -> list[int]:
    """Sorted 0-based occurrence positions of ``pattern`` in ``text``."""
    return search(text, pattern, scheme, machine, monitor).occurrences
