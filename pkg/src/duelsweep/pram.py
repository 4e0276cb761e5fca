"""Deterministic Priority-CRCW PRAM substrate.

A parallel step is two-phase: every body is evaluated against the memory as
it was before the step, then the collected writes are committed in
ascending writer index and the first write to each cell wins. Bodies must
not mutate shared memory themselves; they return their writes as
``(array, index, value)`` triples.

Time is tracked as a critical path: a step costs one unit plus the longest
chain of charges made inside any one of its bodies, so merges running
"in parallel" inside a step contribute their maximum, not their sum. For
code with no nesting this reduces to the number of steps plus the
sequential operations charged. Work is always the plain sum.
"""

from __future__ import annotations

import logging
import random
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Iterable, MutableSequence, Sequence

log = logging.getLogger(__name__)

Write = tuple[MutableSequence, int, Any]
Body = Callable[[int], "Iterable[Write] | None"]


class ContractViolation(Exception):
    """A caller broke an operation's precondition."""


class InvariantViolation(AssertionError):
    """An instrumented algorithm invariant failed."""


@dataclass
class StepLedger:
    time: int = 0
    work: int = 0
    reencodes: int = 0

    def as_dict(self) -> dict[str, int]:
        return asdict(self)

    def __iadd__(self, other: "StepLedger") -> "StepLedger":
        self.time += other.time
        self.work += other.work
        self.reencodes += other.reencodes
        return self


@dataclass
class AuditReport:
    steps: int = 0
    shuffles: int = 0
    mismatches: int = 0


class Machine:
    """Runs ``pfor`` steps with priority-write semantics and keeps a ledger.

    ``audit_steps`` / ``audit_shuffles`` turn on the determinism audit: the
    first ``audit_steps`` parallel steps are re-evaluated that many times
    in a shuffled body order and the resolved writes compared with the
    canonical ascending run.
    """

    def __init__(self, ledger: StepLedger | None = None, *, audit_steps: int = 0,
                 audit_shuffles: int = 0, seed: int = 0):
        self.ledger = ledger if ledger is not None else StepLedger()
        self._frames: list[int] = []
        self.audit = AuditReport()
        self._audit_steps = audit_steps
        self._audit_shuffles = audit_shuffles
        self._rng = random.Random(seed)
        self._auditing = False

    # -- accounting ---------------------------------------------------------

    def _add_time(self, t: int) -> None:
        if self._frames:
            self._frames[-1] += t
        else:
            self.ledger.time += t

    def seq(self, ops: int = 1) -> None:
        """Charge ``ops`` sequential primitive operations."""
        self._add_time(ops)
        self.ledger.work += ops

    def charge(self, time: int, work: int) -> None:
        """Charge a logical step with the given cost (e.g. an encoder run)."""
        self._add_time(time)
        self.ledger.work += work

    # -- execution ----------------------------------------------------------

    def _evaluate(self, order: Sequence[int], body: Body) -> tuple[list[tuple[int, Write]], int]:
        pending: list[tuple[int, Write]] = []
        longest = 0
        frames = self._frames
        for i in order:
            frames.append(0)
            try:
                writes = body(i)
            finally:
                t = frames.pop()
            if t > longest:
                longest = t
            if writes:
                for w in writes:
                    pending.append((i, w))
        return pending, longest

    @staticmethod
    def _resolve(pending: list[tuple[int, Write]], allowed: dict[int, MutableSequence]) -> tuple[dict, int]:
        resolved: dict[tuple[int, int], tuple[MutableSequence, int, Any]] = {}
        dropped = 0
        for _, (arr, idx, val) in pending:
            if id(arr) not in allowed:
                raise ContractViolation("parallel body wrote to an undeclared array")
            if not 0 <= idx < len(arr):
                raise ContractViolation(f"parallel body wrote outside its array (index {idx}, length {len(arr)})")
            key = (id(arr), idx)
            if key in resolved:
                dropped += 1
                continue
            resolved[key] = (arr, idx, val)
        return resolved, dropped

    def pfor(self, indices: Sequence[int], body: Body, targets: Iterable[MutableSequence] = ()) -> int:
        """Run ``body`` for every index as one parallel step.

        Returns the number of writes that lost a priority conflict.
        """
        allowed = {id(t): t for t in targets}
        pending, longest = self._evaluate(indices, body)
        if len(indices) > 1 and not self._auditing and self.audit.steps < self._audit_steps:
            self._audit(indices, body, pending, allowed)
        # bodies were evaluated in ascending order, so pending is already
        # sorted by writer index
        resolved, dropped = self._resolve(pending, allowed)
        for arr, idx, val in resolved.values():
            arr[idx] = val
        self._add_time(1 + longest)
        self.ledger.work += len(indices)
        return dropped

    def _audit(self, indices, body, pending, allowed) -> None:
        expected, _ = self._resolve(pending, allowed)
        expected = {k: v[2] for k, v in expected.items()}
        saved = self.ledger
        self._auditing = True
        self.ledger = StepLedger()
        try:
            for _ in range(self._audit_shuffles):
                order = list(indices)
                self._rng.shuffle(order)
                shuffled, _ = self._evaluate(order, body)
                shuffled.sort(key=lambda e: e[0])
                got, _ = self._resolve(shuffled, allowed)
                if {k: v[2] for k, v in got.items()} != expected:
                    self.audit.mismatches += 1
                self.audit.shuffles += 1
        finally:
            self.ledger = saved
            self._auditing = False
        self.audit.steps += 1


class Monitor:
    """Collects invariant checks and round counts from instrumented runs.

    With ``strict`` a failed check raises :class:`InvariantViolation`;
    otherwise failures are only recorded.
    """

    def __init__(self, strict: bool = True, checks: bool = True):
        self.strict = strict
        self.enabled = checks
        self.counts: defaultdict[str, int] = defaultdict(int)
        self.violations: list[tuple[str, str]] = []
        self.rounds: defaultdict[str, list[int]] = defaultdict(list)

    def check(self, name: str, ok: bool, fmt: str = "", *args: Any) -> None:
        self.counts[name] += 1
        if not ok:
            detail = fmt % args if args else fmt
            self.violations.append((name, detail))
            log.debug("invariant %s violated: %s", name, detail)
            if self.strict:
                raise InvariantViolation(f"{name}: {detail}")

    def record_rounds(self, stage: str, n: int) -> None:
        self.rounds[stage].append(n)

    def summary(self) -> dict[str, Any]:
        return {"checks": dict(self.counts), "violations": len(self.violations)}
