import random

import pytest

from duelsweep.encoding import get_scheme
from duelsweep.instances import random_instance
from duelsweep.oracle import naive_periods, naive_witness_table
from duelsweep.pram import ContractViolation, Machine, Monitor
from duelsweep.search import ceil_log2
from duelsweep.witness import (
    WitnessTable, check_parallel, finalize_residue, finalize_tail, get_zeros, is_valid_witness,
    preprocess, satisfy_head_sparsity, self_check,
)

EXACT = get_scheme("exact")


def test_check_parallel_examples():
    m = Machine()
    assert check_parallel(m, "aba", "aba") == 0
    assert check_parallel(m, "aba", "aca") == 2
    with pytest.raises(ContractViolation):
        check_parallel(m, "ab", "abc")


def test_check_parallel_against_suffix_view():
    param = get_scheme("param")
    P = param.encode("yxyx")
    # prev("xyx") against the re-encoded suffix of "yxyx" at offset 1
    assert self_check(Machine(), P, 1) == 0
    Q = param.encode("xyxyy")
    assert self_check(Machine(), Q, 2) == 3


def test_get_zeros_examples():
    m = Machine()
    assert get_zeros(m, [0, 1, 0, 1], 2, 3, 1) == [2]
    assert get_zeros(m, [1, 2, 3, 4, 5], 0, 4, 1) == [-1, -1, -1]
    assert get_zeros(m, [1, 0, 2], 1, 1, 0) == [1]
    assert get_zeros(m, [0, 1], 1, 0, 0) == []


def test_get_zeros_flags_sparsity_violation():
    mon = Monitor(strict=False)
    get_zeros(Machine(), [0, 0, 1, 1], 0, 3, 1, mon)
    assert [name for name, _ in mon.violations] == ["get_zeros.sparsity"]


def test_preprocess_abaab():
    P = EXACT.encode("abaab")
    W = preprocess(P)
    assert W.zeros() == [0, 3]
    assert all(is_valid_witness(P, a, W[a]) for a in (1, 2, 4))
    assert naive_witness_table("abaab", EXACT) == [0, 1, 2, 0, 1]


def test_preprocess_unary():
    assert preprocess(EXACT.encode("aaaa")).w == (0, 0, 0, 0)


def test_preprocess_param_xyxy():
    # with every symbol a parameter, "xyx" matches "yxy" under x<->y, so all offsets are periods
    assert preprocess(get_scheme("param").encode("xyxy")).zeros() == [0, 1, 2, 3]
    assert naive_periods("xyxy", get_scheme("param")) == {1, 2, 3}
    # fixing x as a constant leaves only the period 2
    assert preprocess(get_scheme("param", constants="x").encode("xyxy")).zeros() == [0, 2]


def test_preprocess_single_symbol_and_empty():
    assert preprocess(EXACT.encode("a")).w == (0,)
    with pytest.raises(ValueError):
        preprocess(EXACT.encode(""))


def test_satisfy_head_sparsity_single_zero_unchanged():
    P = EXACT.encode("abaab")
    W = [0, 1, 2, 0, 1]
    satisfy_head_sparsity(Machine(), P, W, 4, 0)
    assert W == [0, 1, 2, 0, 1]


def test_satisfy_head_sparsity_duel_assigns_valid_witness():
    P = EXACT.encode("abaab")
    # offsets 2 and 3 share the block [2, 4); only 3 is a period
    W = [0, 1, 0, 0, 1]
    satisfy_head_sparsity(Machine(), P, W, 3, 0)
    assert W[3] == 0
    assert W[2] != 0 and is_valid_witness(P, 2, W[2])


def test_finalize_tail_no_zeros_is_noop():
    P = EXACT.encode("abcdefgh")
    W = [0, 1, 1, 1, 1, 1, 1, 1]
    finalize_tail(Machine(), P, W, 4, 6, 1, 1)
    assert W == [0, 1, 1, 1, 1, 1, 1, 1]


def _periodic_pattern(rng, scheme_name, m):
    _, pattern = random_instance(rng, scheme_name, m, m, alphabet=2, periodic=1.0)
    return pattern


@pytest.mark.parametrize("name", ["exact", "param", "cartesian"])
def test_finalize_residue_matches_linear_scan(name):
    rng = random.Random(9)
    scheme = get_scheme(name)
    seen = set()
    for _ in range(400):
        m = rng.randint(4, 30)
        pattern = _periodic_pattern(rng, name, m)
        periods = naive_periods(pattern, scheme)
        if not periods:
            continue
        p = min(periods)
        P = scheme.encode(pattern)
        tail = rng.randint(p, m - 1)
        old_tail = rng.randint(tail + 1, m)
        for rem in range(p):
            W = [0] * m
            finalize_residue(Machine(), P, W, tail, old_tail, p, rem)
            members = [i for i in range(tail, old_tail) if i % p == rem]
            # members past old_tail are untouched; inside, zeros are exactly the periods
            for i in members:
                assert (W[i] == 0) == (i in periods)
                assert W[i] == 0 or is_valid_witness(P, i, W[i])
            assert all(W[i] == 0 for i in range(m) if i not in members)
            if members:
                z = sum(i in periods for i in members)
                seen.add("all" if z == len(members) else "none" if z == 0 else "mixed")
    assert seen == {"all", "none", "mixed"}


def test_preprocess_random_against_oracle(scheme):
    rng = random.Random(4)
    mon = Monitor()
    for _ in range(300):
        m = rng.randint(1, 48)
        pattern = _periodic_pattern(rng, scheme.name, m) if rng.random() < 0.5 else \
            random_instance(rng, scheme.name, m, m, alphabet=rng.choice((2, 4)), periodic=0)[1]
        P = scheme.encode(pattern)
        W = preprocess(P, Machine(), mon)
        assert set(W.zeros()) == naive_periods(pattern, scheme) | {0}
        assert all(v == 0 or is_valid_witness(P, a, v) for a, v in enumerate(W.w))
        assert W.rounds <= ceil_log2(m) + 1
    assert not mon.violations
    for name in ("head_sparsity", "head_witness_bound", "duel_range"):
        assert mon.counts[name] > 0


def test_witness_table_round_trip():
    W = preprocess(EXACT.encode("abaab"))
    assert WitnessTable.from_json(W.to_json()).w == W.w
    assert W.to_lines() == "0\t0\n1\t1\n2\t2\n3\t0\n4\t1\n"
