"""Ranked enumeration of cost-transducer outputs over persistent heaps of words."""
from .brodal import Queue, SkewHeap
from .enumeration import (
    StreamState,
    enumerate_filtered,
    enumerate_ranked,
    preprocess,
    stream_new,
    stream_outputs,
    stream_push,
)
from .group import INT, GroupSpec, int_vec
from .how import EPSILON, HeapOfWords
from .pheap import BinomialHeap
from .transducer import (
    CostTransducer,
    Event,
    RankedOutput,
    Transition,
    check_unambiguous,
    enumerate_bruteforce,
    parse_event,
    parse_transducer,
    run_cost,
)

__all__ = [
    "BinomialHeap", "CostTransducer", "EPSILON", "Event", "GroupSpec", "HeapOfWords",
    "INT", "Queue", "RankedOutput", "SkewHeap", "StreamState", "Transition",
    "check_unambiguous", "enumerate_bruteforce", "enumerate_filtered", "enumerate_ranked",
    "int_vec", "parse_event", "parse_transducer", "preprocess", "run_cost",
    "stream_new", "stream_outputs", "stream_push",
]
