"""Benchmark records and their figures."""

from __future__ import annotations

import math
import random
from pathlib import Path
from typing import Sequence

from duelsweep.encoding import get_scheme
from duelsweep.instances import random_instance
from duelsweep.pram import Machine, Monitor
from duelsweep.search import search
from duelsweep.witness import preprocess

FIELDS = (
    "scer", "m", "n", "seed", "time", "work", "reencodes",
    "preprocess_reencodes", "search_reencodes",
    "preprocess_rounds", "dueling_rounds", "sweeping_rounds", "occurrences",
)


def bench(scer: str, m: int, n: int | None = None, seed: int = 0, alphabet: int = 4,
          constants: Sequence = ()) -> dict:
    """Ledger and round counts for one reproducible random instance.

    The instance is aperiodic random data of length ``n`` (default ``2m-1``)
    and ``m``.
    """
    n = 2 * m - 1 if n is None else n
    rng = random.Random(f"bench:{scer}:{seed}")
    text, pattern = random_instance(rng, scer, m, n, alphabet, periodic=0.0)
    scheme = get_scheme(scer, constants)
    machine = Machine()
    monitor = Monitor(checks=False)

    P = scheme.encode(pattern)
    preprocess(P, machine)
    pre = machine.ledger.reencodes
    machine = Machine()
    result = search(text, pattern, scheme, machine, monitor)
    ledger = machine.ledger
    return {
        "scer": scer, "m": m, "n": n, "seed": seed,
        "time": ledger.time, "work": ledger.work, "reencodes": ledger.reencodes,
        "preprocess_reencodes": pre,
        "search_reencodes": ledger.reencodes - pre,
        "preprocess_rounds": monitor.rounds["preprocess"][0],
        "dueling_rounds": max(monitor.rounds["dueling"], default=0),
        "sweeping_rounds": max(monitor.rounds["sweeping"], default=0),
        "occurrences": len(result.occurrences),
    }


def normalized(record: dict) -> tuple[float, float]:
    """Re-encodes per ``m log^2 m`` (preprocessing) and per ``n log^2 m`` (search)."""
    m, n = record["m"], record["n"]
    l2 = max(math.log2(m), 1.0) ** 2
    return record["preprocess_reencodes"] / (m * l2), record["search_reencodes"] / (n * l2)


def plot_records(records: Sequence[dict], path: str | Path) -> Path:
    """Write a figure of the records next to the textual report."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9, 3.6))
    labels = [str(r["m"]) for r in records]
    x = range(len(records))
    ax0.bar([i - 0.2 for i in x], [r["preprocess_reencodes"] for r in records], width=0.4, label="preprocess")
    ax0.bar([i + 0.2 for i in x], [r["search_reencodes"] for r in records], width=0.4, label="search")
    ax0.set_xticks(list(x), labels)
    ax0.set_xlabel("m")
    ax0.set_ylabel("re-encodes")
    ax0.legend(frameon=False)

    norm = [normalized(r) for r in records]
    ax1.plot(labels, [a for a, _ in norm], "o-", label=r"preprocess / $m\log^2 m$")
    ax1.plot(labels, [b for _, b in norm], "s-", label=r"search / $n\log^2 m$")
    ax1.set_xlabel("m")
    ax1.set_ylim(bottom=0)
    ax1.legend(frameon=False)
    fig.suptitle(f"{records[0]['scer']} (seed {records[0]['seed']})")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
