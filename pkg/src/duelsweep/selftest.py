"""Reduced-scale randomized self-test against the brute-force oracles."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

import duelsweep.search as _search
from duelsweep.encoding import Scheme, get_scheme
from duelsweep.instances import random_instance
from duelsweep.oracle import match_report, naive_periods
from duelsweep.pram import Machine, Monitor
from duelsweep.witness import is_valid_witness, preprocess


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}\t{self.name}\t{self.detail}"


def _reencode_check(scheme: Scheme, rng: random.Random, trials: int, alphabet: int) -> CheckResult:
    from duelsweep.instances import random_string, symbols

    bad = 0
    sigma = symbols(scheme.name, alphabet)
    for _ in range(trials):
        x = random_string(rng, sigma, rng.randint(0, 24))
        enc = scheme.encode(x)
        for s in range(len(x)):
            fresh = scheme.encode(x[s:]).codes
            bad += sum(enc.reencode_at(s, i) != fresh[i] for i in range(len(fresh)))
    return CheckResult(f"{scheme.name}.reencode", bad == 0, f"{bad} mismatches over {trials} strings")


def run(schemes: Iterable[str] = ("exact", "param", "cartesian"), constants: Iterable = (),
        instances: int = 200, max_m: int = 24, seed: int = 0) -> list[CheckResult]:
    constants = tuple(constants)
    results: list[CheckResult] = []
    for name in schemes:
        scheme = get_scheme(name, constants if name == "param" else ())
        rng = random.Random(f"{seed}:{name}")
        results.append(_reencode_check(scheme, rng, max(1, instances // 4), 4))

        mismatched = unsound = 0
        monitor = Monitor(strict=False)
        for _ in range(instances):
            m = rng.randint(1, max_m)
            n = rng.randint(m, 4 * m)
            text, pattern = random_instance(rng, name, m, n, rng.choice((2, 4, 16)))
            truth = match_report(text, pattern, scheme)
            res = _search.search(text, pattern, scheme, Machine(), monitor, truth)
            mismatched += res.occurrences != truth.occurrences

            P = scheme.encode(pattern)
            W = preprocess(P)
            periods = naive_periods(pattern, scheme) | {0}
            unsound += set(W.zeros()) != periods or not all(
                v == 0 or is_valid_witness(P, a, v) for a, v in enumerate(W.w))

        results.append(CheckResult(f"{name}.search", mismatched == 0,
                                   f"{mismatched} of {instances} instances differ from the oracle"))
        results.append(CheckResult(f"{name}.witness", unsound == 0,
                                   f"{unsound} of {instances} witness tables unsound"))
        nchecks = sum(monitor.counts.values())
        results.append(CheckResult(f"{name}.invariants", not monitor.violations,
                                   f"{len(monitor.violations)} violations in {nchecks} checks"))
    return results
