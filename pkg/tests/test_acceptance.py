"""Acceptance checks, one test and one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py`` (the lines are repeated in the
terminal summary) or ``python tests/test_acceptance.py``.
"""
import itertools
import math
import random
import sys
import time
from collections import Counter
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from rankenum.brodal import Queue, SkewHeap  # noqa: E402
from rankenum.cli import bench_rows  # noqa: E402
from rankenum.counters import counting  # noqa: E402
from rankenum.enumeration import (  # noqa: E402
    enumerate_ranked, preprocess, stream_new, stream_outputs, stream_push,
)
from rankenum.fixtures import cea0, complex_event, shared_prefix_how, sensor_events, t1  # noqa: E402
from rankenum.group import INT  # noqa: E402
from rankenum.how import HeapOfWords  # noqa: E402
from rankenum.pheap import BinomialHeap  # noqa: E402
from rankenum.transducer import check_unambiguous, enumerate_bruteforce  # noqa: E402

from conftest import (  # noqa: E402
    capped_drain, has_duplicate_output, per_cost_classes, random_deterministic_transducer,
    random_event, random_predicate_transducer, random_transducer, random_word,
    run_against_reference,
)

pytestmark = pytest.mark.slow

RESULTS: list[str] = []


def report(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


# 1 ------------------------------------------------------------------------

def test_criterion_1_word_dag():
    expected = Counter({(("a", "d"), 3): 1, (("a", "b", "c"), 3): 1, ((), 5): 1,
                        (("a", "e", "c"), 6): 1})
    list(shared_prefix_how().drain())  # warm-up
    best = math.inf
    for _ in range(5):
        start = time.perf_counter()
        out = list(shared_prefix_how().drain())
        best = min(best, time.perf_counter() - start)
    ok = (Counter(out) == expected and [p for _, p in out] == [3, 3, 5, 6]
          and best < 1e-3)
    report(1, ok, f"drain costs {[p for _, p in out]}, build+drain {best * 1e6:.0f} us")


# 2 ------------------------------------------------------------------------

def test_criterion_2_oracle_equivalence():
    rng = random.Random(2)
    cases = bad = outputs = 0
    start = time.perf_counter()
    while cases < 1200:
        if cases < 900:
            t = random_deterministic_transducer(rng, density=rng.uniform(0.2, 0.8))
        else:
            # unconstrained machines that the checker accepts
            t = random_transducer(rng, max_states=5, max_vars=2, max_symbols=3, max_trans=12)
            if not check_unambiguous(t):
                continue
        word = random_word(rng, t, max_len=8)
        got = list(enumerate_ranked(preprocess(t, word)))
        want = enumerate_bruteforce(t, word)
        costs = [o.cost for o in got]
        same = (Counter(got) == Counter(want)
                and per_cost_classes(got) == per_cost_classes(want)
                and costs == sorted(costs)
                and len({o.enc for o in got}) == len(got))
        bad += not same
        cases += 1
        outputs += len(got)
    elapsed = time.perf_counter() - start
    report(2, bad == 0 and elapsed < 180,
           f"{cases} cases, {outputs} outputs, {bad} mismatches, {elapsed:.1f} s")


# 3 ------------------------------------------------------------------------

def _op_sequence(rng, n):
    ops = []
    for _ in range(n):
        r = rng.random()
        kind = "add" if r < 0.45 else "meld" if r < 0.55 else "inc" if r < 0.65 else "del"
        ops.append((kind, rng.randint(-1000, 1000)))
    return ops


def test_criterion_3_queue_cross_validation():
    rng = random.Random(3)
    sequences = total = mismatches = 0
    for k in range(500):
        # lengths log-uniform in [1, 10^4]
        n = 10 ** 4 if k == 0 else int(10 ** rng.uniform(0, 4))
        traces, finals = run_against_reference(_op_sequence(rng, n))
        mismatches += not (traces[0] == traces[1] == traces[2] and finals[0] == finals[1] == finals[2])
        sequences += 1
        total += n
    report(3, mismatches == 0 and sequences >= 500,
           f"{sequences} sequences, {total} ops, {mismatches} mismatching traces")


# 4 ------------------------------------------------------------------------

def _persistence_dag(rng, cls, steps=150):
    handles = [cls.empty(INT)]
    for _ in range(steps):
        h = rng.choice(handles)
        r = rng.random()
        if r < 0.4:
            h = h.add(rng.randrange(10**6), rng.randint(-50, 50))
        elif r < 0.6:
            h = h.meld(rng.choice(handles))
        elif r < 0.75:
            h = h.increase_by(rng.randint(-20, 20))
        elif not h.is_empty():
            h = h.delete_min()
        handles.append(h)
    return handles


def _how_dag(rng, steps=150):
    # word sets are tracked so that melds only join disjoint heaps
    fresh = itertools.count()
    handles = [(HeapOfWords.empty(INT), frozenset())]
    for _ in range(steps):
        h, words = rng.choice(handles)
        r = rng.random()
        if r < 0.35:
            a = next(fresh)
            h, words = h.add(a, rng.randint(-50, 50)), words | {(a,)}
        elif r < 0.55:
            a = next(fresh)
            h, words = h.extend_by(a), frozenset(w + (a,) for w in words)
        elif r < 0.7:
            other, ow = rng.choice(handles)
            if words.isdisjoint(ow):
                h, words = h.meld(other), words | ow
        elif r < 0.8:
            h = h.increase_by(rng.randint(-20, 20))
        elif not h.is_empty():
            w, _ = h.find_min()
            h, words = h.delete_min(), words - {w}
        handles.append((h, words))
    return [h for h, _ in handles]


def test_criterion_4_persistence():
    rng = random.Random(4)
    checked = broken = 0
    for trial in range(40):
        for kind in ("pheap", "skew", "queue", "how"):
            if kind == "how":
                handles = _how_dag(rng)
            else:
                cls = {"pheap": BinomialHeap, "skew": SkewHeap, "queue": Queue}[kind]
                handles = _persistence_dag(rng, cls)
            recorded = [list(h.drain()) for h in handles]
            # more work derived from old handles
            for _ in range(100):
                h = rng.choice(handles)
                if kind == "how":
                    h = h.extend_by("z").increase_by(1)
                else:
                    h = h.increase_by(1).meld(rng.choice(handles))
                if not h.is_empty():
                    h.delete_min()
            for h, before in zip(handles, recorded):
                checked += 1
                broken += list(h.drain()) != before
    report(4, broken == 0, f"{checked} retained handles re-drained, {broken} changed")


# 5 ------------------------------------------------------------------------

def test_criterion_5_streaming():
    rng = random.Random(5)
    machines = positions = full = bad = 0
    while machines < 100:
        t = random_predicate_transducer(rng)
        if not check_unambiguous(t):
            continue
        events = [random_event(rng) for _ in range(rng.randint(0, 50))]
        s = stream_new(t)
        for n in range(len(events) + 1):
            if n:
                s = stream_push(s, events[n - 1])
            a = capped_drain(stream_outputs(s), 200)
            b = capped_drain(preprocess(t, events[:n]), 200)
            bad += a != b
            full += len(a) < 200
            positions += 1
        machines += 1

    s = stream_new(cea0())
    for ev in sensor_events():
        s = stream_push(s, ev)
    out = list(enumerate_ranked(stream_outputs(s)))
    got = {complex_event(o.enc): o.cost for o in out}
    listed = [({5, 6, 8, 9}, 5), ({4, 6, 8, 9}, 6), ({1, 6, 8, 9}, 9), ({5, 6, 9}, 5)]
    example_ok = all(got.get(frozenset(ce)) == c for ce, c in listed)
    sorted_ok = [o.cost for o in out] == sorted(o.cost for o in out)
    report(5, bad == 0 and example_ok and sorted_ok,
           f"{machines} machines, {positions} positions ({full} compared in full), "
           f"{bad} mismatches; fixture costs {[got.get(frozenset(ce)) for ce, _ in listed]}")


# 6 ------------------------------------------------------------------------

def _append_bound(sizes):
    worst = 0
    for n in sizes:
        rng = random.Random(n)
        q = Queue.empty()
        for k in range(n):
            q = q.add(k, rng.randint(-10**6, 10**6))
            if k % 7 == 0:
                q = q.delete_min().meld(Queue.empty().add(-k, k).increase_by(k))
        other = Queue.empty().add("o", 0).add("p", 1)
        for op in (lambda: q.add("x", 0), lambda: q.add("y", -10**9),
                   lambda: q.meld(other), lambda: other.meld(q),
                   lambda: q.increase_by(3), lambda: q.find_min()):
            with counting() as c:
                op()
            worst = max(worst, c.appends)
    return worst


def test_criterion_6_complexity():
    start = time.perf_counter()
    t = t1()
    lengths = [2 ** k for k in range(10, 17)]
    rows = bench_rows(t, lengths, seed=0, top=100)
    ratios = [ops / (t.size * n) for n, ops, _, _ in rows]
    a_ok = max(ratios) <= 2 * min(ratios)

    # delays against a log2 envelope calibrated at the smallest size
    delays = [d for *_, d in rows]
    logs = [math.log2(t.size * n) for n in lengths]
    c0 = delays[0] / logs[0]
    envelope_ok = all(d <= 2 * c0 * lg for d, lg in zip(delays, logs))
    mx, my = sum(logs) / len(logs), sum(delays) / len(delays)
    slope = (sum((x - mx) * (y - my) for x, y in zip(logs, delays))
             / sum((x - mx) ** 2 for x in logs))
    b_ok = envelope_ok and slope <= 2 * c0

    worst = _append_bound([2 ** k for k in range(4, 15, 2)])
    c_ok = worst <= 8
    elapsed = time.perf_counter() - start
    report(6, a_ok and b_ok and c_ok and elapsed < 300,
           f"(a) ops/(|t|n) in [{min(ratios):.3f}, {max(ratios):.3f}]; "
           f"(b) delays {[round(d) for d in delays]}, fitted slope {slope:.2f} per doubling "
           f"vs limit {2 * c0:.2f}; (c) max appends {worst}; {elapsed:.1f} s")


# 7 ------------------------------------------------------------------------

def test_criterion_7_checker():
    rng = random.Random(7)
    machines = ambiguous = disagree = 0
    while machines < 300:
        t = random_transducer(rng)
        symbols = sorted({tr.guard for tr in t.transitions})
        exhaustive = any(has_duplicate_output(t, list(w))
                         for n in range(7) for w in itertools.product(symbols, repeat=n))
        verdict = not check_unambiguous(t)
        disagree += exhaustive != verdict
        ambiguous += exhaustive
        machines += 1
    report(7, disagree == 0 and ambiguous >= 50 and machines - ambiguous >= 50,
           f"{machines} machines ({ambiguous} ambiguous), {disagree} disagreements")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
