"""Acceptance suite. Each test prints one PASS/FAIL line for its criterion.

Run under pytest (``pytest -s tests/test_acceptance.py`` to see the lines)
or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import functools
import random
import subprocess
import sys
import time

from duelsweep.encoding import SCHEMES, get_scheme
from duelsweep.instances import random_instance, random_string, symbols
from duelsweep.oracle import find_suffix_counterexample, match_report, naive_periods, relation_for
from duelsweep.pram import Machine, Monitor
from duelsweep.report import bench, normalized
from duelsweep.search import ceil_log2, search
from duelsweep.witness import is_valid_witness, preprocess

# pinned thresholds
SEARCH_INSTANCES = 10_000          # per scheme
SEARCH_ALPHABETS = (2, 4, 16)
SEARCH_MAX_M = 64
WITNESS_PATTERNS = 1_000           # per scheme
WITNESS_MAX_M = 256
ROUND_SIZES = (1, 2, 3, 5, 64, 100, 256)
SCALING_SIZES = (2 ** 8, 2 ** 10, 2 ** 12)
SCALING_SEEDS = (0, 1, 2)
SCALING_MAX_SPREAD = 4.0
ENCODING_MAX_LEN = 256
SHUFFLE_STEPS = 20
SHUFFLES = 100
INVARIANTS = ("head_sparsity", "head_witness_bound", "duel_range", "sweep_reads_disjoint")


def report(n: int, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'}  criterion {n}: {detail}", flush=True)


@functools.lru_cache(maxsize=None)
def _search_runs() -> tuple[dict, Monitor, float]:
    monitor = Monitor(strict=False)
    mismatches = {}
    t0 = time.perf_counter()
    for name in SCHEMES:
        scheme = get_scheme(name)
        rng = random.Random(f"acceptance-search:{name}")
        bad = 0
        for _ in range(SEARCH_INSTANCES):
            m = rng.randint(1, SEARCH_MAX_M)
            n = rng.randint(m, 4 * m)
            text, pattern = random_instance(rng, name, m, n, rng.choice(SEARCH_ALPHABETS))
            truth = match_report(text, pattern, scheme)
            bad += search(text, pattern, scheme, Machine(), monitor, truth).occurrences != truth.occurrences
        mismatches[name] = bad
    return mismatches, monitor, time.perf_counter() - t0


@functools.lru_cache(maxsize=None)
def _witness_runs() -> tuple[dict, Monitor]:
    monitor = Monitor(strict=False)
    unsound = {}
    for name in SCHEMES:
        scheme = get_scheme(name)
        rng = random.Random(f"acceptance-witness:{name}")
        bad = 0
        for _ in range(WITNESS_PATTERNS):
            m = rng.randint(1, WITNESS_MAX_M)
            _, pattern = random_instance(rng, name, m, m, rng.choice((2, 4)), periodic=0.5)
            P = scheme.encode(pattern)
            W = preprocess(P, Machine(), monitor)
            ok = set(W.zeros()) == naive_periods(pattern, scheme) | {0}
            ok = ok and all(v == 0 or is_valid_witness(P, a, v) for a, v in enumerate(W.w))
            bad += not ok
        unsound[name] = bad
    return unsound, monitor


def test_criterion_1_oracle_equivalence():
    mismatches, _, elapsed = _search_runs()
    ok = not any(mismatches.values())
    report(1, ok, f"{SEARCH_INSTANCES} instances per scheme, mismatches {mismatches}, {elapsed:.0f}s")
    assert ok


def test_criterion_2_witness_soundness():
    unsound, _ = _witness_runs()
    ok = not any(unsound.values())
    report(2, ok, f"{WITNESS_PATTERNS} patterns per scheme (m <= {WITNESS_MAX_M}), unsound {unsound}")
    assert ok


def test_criterion_3_invariants():
    _, m1, _ = _search_runs()
    _, m2 = _witness_runs()
    counts = {k: m1.counts[k] + m2.counts[k] for k in INVARIANTS}
    violations = m1.violations + m2.violations
    ok = not violations and all(counts.values())
    report(3, ok, f"{len(violations)} violations; checks {counts}")
    assert ok, violations[:5]


def test_criterion_4_round_counts():
    bad = []
    for name in SCHEMES:
        scheme = get_scheme(name)
        for m in ROUND_SIZES:
            for seed in range(3):
                rng = random.Random(f"rounds:{name}:{m}:{seed}")
                text, pattern = random_instance(rng, name, m, 2 * m - 1, 2, periodic=0.5)
                mon = Monitor(checks=False)
                search(text, pattern, scheme, Machine(), mon)
                L = ceil_log2(m)
                got = (mon.rounds["preprocess"][0], mon.rounds["dueling"], mon.rounds["sweeping"])
                if not (got[0] <= L + 1 and got[1] == [L] and got[2] == [L + 1]):
                    bad.append((name, m, seed, got))
    ok = not bad
    report(4, ok, f"sizes {ROUND_SIZES}, {len(bad)} deviations {bad[:3]}")
    assert ok


def test_criterion_5_scaling():
    lines, ok = [], True
    for name in SCHEMES:
        pre = {m: [] for m in SCALING_SIZES}
        srch = {m: [] for m in SCALING_SIZES}
        for m in SCALING_SIZES:
            for seed in SCALING_SEEDS:
                a, b = normalized(bench(name, m, seed=seed))
                pre[m].append(a)
                srch[m].append(b)
        for label, table in (("preprocess", pre), ("search", srch)):
            vals = [sum(v) / len(v) for v in table.values()]
            spread = max(vals) / min(vals)
            ok &= spread <= SCALING_MAX_SPREAD
            lines.append(f"{name}.{label} " + "/".join(f"{v:.4f}" for v in vals) + f" (x{spread:.2f})")
    report(5, ok, "; ".join(lines))
    assert ok


def test_criterion_6_encoding():
    rng = random.Random("acceptance-encoding")
    mism = rel_mism = 0
    pairs = 0
    for name in SCHEMES:
        scheme = get_scheme(name, (0, 1) if name == "param" else ())
        lengths = [0, 1, 2, ENCODING_MAX_LEN] + [rng.randint(0, ENCODING_MAX_LEN) for _ in range(12)]
        for n in lengths:
            sigma = symbols(name, rng.randint(1, 8))
            if name == "param":
                sigma = range(len(sigma))
            x = random_string(rng, sigma, n)
            enc = scheme.encode(x)
            for s in range(n):
                fresh = scheme.encode(x[s:]).codes
                mism += sum(enc.reencode_at(s, i) != fresh[i] for i in range(n - s))
        related = relation_for(scheme)
        for _ in range(3000):
            n = rng.randint(0, 10)
            x = random_string(rng, range(3), n)
            y = random_string(rng, range(3), n)
            pairs += 1
            rel_mism += (scheme.encode(x).codes == scheme.encode(y).codes) != related(x, y)
        sample = lambda r, k, s=symbols(name, 3): random_string(r, s, k)
        rel_mism += find_suffix_counterexample(scheme, sample, trials=2000, max_len=10) is not None
    ok = mism == 0 and rel_mism == 0
    report(6, ok, f"re-encode mismatches {mism}; relation disagreements {rel_mism} over {pairs} pairs")
    assert ok


def test_criterion_7_determinism():
    machine = Machine(audit_steps=SHUFFLE_STEPS, audit_shuffles=SHUFFLES, seed=11)
    rng = random.Random("acceptance-determinism")
    text, pattern = random_instance(rng, "param", 40, 120, 2, periodic=1.0)
    search(text, pattern, get_scheme("param"), machine)
    audit = machine.audit
    cmd = [sys.executable, "-m", "duelsweep", "bench", "--scer", "cartesian", "--m", "256", "--seed", "9"]
    outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    ok = audit.steps == SHUFFLE_STEPS and audit.shuffles == SHUFFLE_STEPS * SHUFFLES \
        and audit.mismatches == 0 and outs[0] == outs[1]
    report(7, ok, f"{audit.steps} steps x {SHUFFLES} shuffles, {audit.mismatches} mismatches; "
                  f"bench outputs identical: {outs[0] == outs[1]}")
    assert ok


if __name__ == "__main__":
    failed = 0
    for fn in (test_criterion_1_oracle_equivalence, test_criterion_2_witness_soundness,
               test_criterion_3_invariants, test_criterion_4_round_counts, test_criterion_5_scaling,
               test_criterion_6_encoding, test_criterion_7_determinism):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
