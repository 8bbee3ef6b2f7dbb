"""Ranked enumeration of transducer outputs, offline and over event streams.

Preprocessing keeps one heap of words per state and position.  The heap for
state ``q`` after ``i`` letters holds, for every partial run ending in ``q``,
its output so far and its cost so far.  Moving to position ``i+1`` only
reads the previous level, and every heap operation used is constant time,
so preprocessing is linear in ``|T|·|w|``.  Enumeration then repeatedly
takes and deletes the minimum of the output heap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .group import GroupValue
from .how import EPSILON, HeapOfWords
from .transducer import CostTransducer, RankedOutput


def initial_level(t: CostTransducer) -> dict:
    empty = HeapOfWords.empty(t.group)
    return {q: empty.add(EPSILON, c) for q, c in t.init.items()}


def advance(t: CostTransducer, level: Mapping, position: int, letter) -> dict:
    """Heaps for ``position`` from the heaps for ``position - 1``."""
    nxt: dict = {}
    for tr in t.step(letter):
        h = level.get(tr.source)
        if h is None:
            continue
        if tr.varset:
            h = h.extend_by((tr.varset, position))
        h = h.increase_by(tr.cost)
        prev = nxt.get(tr.target)
        nxt[tr.target] = h if prev is None else prev.meld(h)
    return nxt


def fold_final(t: CostTransducer, level: Mapping) -> HeapOfWords:
    out = HeapOfWords.empty(t.group)
    for q, c in t.final.items():
        h = level.get(q)
        if h is not None:
            out = out.meld(h.increase_by(c))
    return out


def preprocess(t: CostTransducer, word: Sequence) -> HeapOfWords:
    level = initial_level(t)
    for i, a in enumerate(word, 1):
        level = advance(t, level, i, a)
    return fold_final(t, level)


def enumerate_ranked(h: HeapOfWords) -> Iterator[RankedOutput]:
    """Outputs of ``h`` in non-decreasing cost order."""
    while not h.is_empty():
        enc, cost = h.find_min()
        yield RankedOutput(enc, cost)
        h = h.delete_min()


def enumerate_filtered(h: HeapOfWords, top_k: int | None = None,
                       max_cost: GroupValue | None = None) -> Iterator[RankedOutput]:
    """Like ``enumerate_ranked`` but stop after ``top_k`` outputs or past ``max_cost``."""
    if top_k is not None and top_k <= 0:
        return
    emitted = 0
    for out in enumerate_ranked(h):
        if max_cost is not None and out.cost > max_cost:
            return
        yield out
        emitted += 1
        if top_k is not None and emitted >= top_k:
            return


@dataclass(frozen=True)
class StreamState:
    """Per-state heaps after ``position`` events; pushing returns a new state."""

    transducer: CostTransducer
    position: int = 0
    level: Mapping = field(default_factory=dict)


def stream_new(t: CostTransducer) -> StreamState:
    return StreamState(t, 0, initial_level(t))


def stream_push(s: StreamState, event) -> StreamState:
    n = s.position + 1
    return StreamState(s.transducer, n, advance(s.transducer, s.level, n, event))


def stream_outputs(s: StreamState) -> HeapOfWords:
    return fold_final(s.transducer, s.level)
