"""Small reference machines and inputs used by the tests and scripts."""
from __future__ import annotations

from .group import INT
from .how import EPSILON, HeapOfWords
from .transducer import (
    AttrCmp, And, CostTransducer, Event, Transition, TruePred, TypeIs, parse_event,
)

X = frozenset({"X"})
NONE = frozenset()


def t1() -> CostTransducer:
    """One state over {a, b}; marking an ``a`` with X costs 1, everything else 0."""
    return CostTransducer(
        ("q",), ("X",),
        (Transition("q", "a", X, "q", 1),
         Transition("q", "a", NONE, "q", 0),
         Transition("q", "b", NONE, "q", 0)),
        {"q": 0}, {"q": 0},
    )


def cea0() -> CostTransducer:
    """Humidity/temperature pattern H (T>40)* H with cost ``n - min(C) + 1``.

    Every step taken after the first marked event costs 1, so a complex event
    closed at position n pays for the positions ``min(C) .. n``.
    """
    h = TypeIs("H")
    hot = And((TypeIs("T"), AttrCmp("value", ">", 40)))
    anything = TruePred()
    return CostTransducer(
        ("q1", "q2", "q3"), ("X",),
        (Transition("q1", anything, NONE, "q1", 0),
         Transition("q1", h, X, "q2", 1),
         Transition("q2", hot, X, "q2", 1),
         Transition("q2", anything, NONE, "q2", 1),
         Transition("q2", h, X, "q3", 1)),
        {"q1": 0}, {"q3": 0}, INT, "predicate",
    )


SENSOR_STREAM = """\
H value=25
T value=25
T value=20
H value=25
H value=40
T value=42
T value=25
T value=70
H value=18
"""


def sensor_events() -> list[Event]:
    return [parse_event(line) for line in SENSOR_STREAM.splitlines()]


def shared_prefix_how(group=INT) -> HeapOfWords:
    """Heap holding {(ad,3), (abc,3), (aec,6), (ε,5)}, built from operations only.

    The shape mirrors the small word DAG where ``a`` is shared by three words
    and the ``c`` suffix by two.
    """
    empty = HeapOfWords.empty(group)
    a = empty.add("a", 0)
    ab_ae = a.extend_by("b").increase_by(1).meld(a.extend_by("e").increase_by(4))
    with_c = ab_ae.extend_by("c").increase_by(2)
    ad = a.extend_by("d").increase_by(3)
    return with_c.meld(ad).meld(empty.add(EPSILON, 5))


def complex_event(enc) -> frozenset[int]:
    """Positions of an encoded output, i.e. the complex event it denotes."""
    return frozenset(i for _, i in enc)
