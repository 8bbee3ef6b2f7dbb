"""Skew incremental binomial heap and the bootstrapped incremental Brodal queue.

``SkewHeap`` relaxes the binomial root list so that the two smallest trees
may share a rank; inserting then needs at most one three-way link, giving
constant-time ``add``.  ``Queue`` bootstraps it: a queue is its minimum pair
plus a skew heap whose elements are themselves queues, which makes
``add``, ``meld``, ``find_min`` and ``increase_by`` constant time and leaves
``delete_min`` logarithmic.

A queue stored in a skew heap under priority ``p`` is *lazily shifted*: its
own priorities are meant to be read as shifted by ``p ⊕ p_Q⁻¹``.  The shift
is applied to the nested heap only when the queue is unpacked by
``delete_min``.
"""
from __future__ import annotations

from typing import Any, Iterator

from .counters import COUNTER
from .group import INT, GroupSpec, GroupValue
from .pheap import EmptyHeap, Node, children, meld_trees, min_root, pushed, siblings


class EmptyQueue(EmptyHeap):
    pass


def skew_link(group: GroupSpec, v0: Node, v1: Node, v2: Node, nsb: Node | None = None) -> Node:
    """Join a rank-0 node and two rank-r trees into one rank r+1 skew tree.

    Type A when ``v0`` is strictly smaller than both trees (``v0`` becomes the
    root, the trees its children); type B otherwise, where the smaller of
    ``v1``/``v2`` (the first on ties) becomes the root and receives the other
    tree and ``v0`` as its two leftmost children.
    """
    assert v0.rank == 0 and v0.fch is None
    assert v1.rank == v2.rank
    COUNTER.comparisons += 2
    if v0.delta < v1.delta and v0.delta < v2.delta:
        c2 = Node(v2.fch, None, group.sub(v2.delta, v0.delta), v2.val, v2.rank)
        c1 = Node(v1.fch, c2, group.sub(v1.delta, v0.delta), v1.val, v1.rank)
        return Node(c1, nsb, v0.delta, v0.val, v1.rank + 1)
    COUNTER.comparisons += 1
    top, other = (v2, v1) if v2.delta < v1.delta else (v1, v2)
    leaf = Node(None, top.fch, group.sub(v0.delta, top.delta), v0.val, 0)
    sub = Node(other.fch, leaf, group.sub(other.delta, top.delta), other.val, other.rank)
    return Node(sub, nsb, top.delta, top.val, top.rank + 1)


class SkewHeap:
    """Handle onto a skew incremental binomial heap."""

    __slots__ = ("group", "root", "delta_init")

    def __init__(self, group: GroupSpec = INT, root: Node | None = None,
                 delta_init: GroupValue | None = None):
        self.group = group
        self.root = root
        self.delta_init = group.zero() if delta_init is None else delta_init

    @classmethod
    def empty(cls, group: GroupSpec = INT) -> SkewHeap:
        return cls(group)

    def is_empty(self) -> bool:
        return self.root is None

    def __bool__(self):
        return self.root is not None

    def increase_by(self, d: GroupValue) -> SkewHeap:
        return SkewHeap(self.group, self.root, self.group.op(self.delta_init, d))

    def add(self, e: Any, g: GroupValue) -> SkewHeap:
        group = self.group
        delta = group.sub(g, self.delta_init)
        r1 = self.root
        r2 = r1.nsb if r1 is not None else None
        if r2 is not None and r1.rank == r2.rank:
            v = Node(None, None, delta, e, 0)
            root = skew_link(group, v, r1, r2, r2.nsb)
        else:
            root = Node(None, r1, delta, e, 0)
        return SkewHeap(group, root, self.delta_init)

    def _min(self) -> Node:
        if self.root is None:
            raise EmptyHeap("find_min on an empty skew heap")
        return min_root(self.root)[1]

    def find_min(self) -> Any:
        return self._min().val

    def min_priority(self) -> GroupValue:
        return self.group.op(self.delta_init, self._min().delta)

    def peek(self) -> tuple[Any, GroupValue]:
        v = self._min()
        return v.val, self.group.op(self.delta_init, v.delta)

    def meld(self, other: SkewHeap) -> SkewHeap:
        if other.root is None:
            return self
        if self.root is None:
            return other
        group = self.group
        zero = group.zero()
        a = pushed(group, siblings(self.root), self.delta_init, zero)
        b = pushed(group, siblings(other.root), other.delta_init, zero)
        return SkewHeap(group, meld_trees(group, a, b), zero)

    def delete_min(self) -> SkewHeap:
        if self.root is None:
            raise EmptyHeap("delete_min on an empty skew heap")
        group = self.group
        zero = group.zero()
        i, v = min_root(self.root)
        rest = [u for j, u in enumerate(siblings(self.root)) if j != i]
        base = group.op(self.delta_init, v.delta)
        trees, singles = [], []
        for c in children(v):
            (trees if c.rank > 0 else singles).append(c)
        trees.reverse()
        a = pushed(group, rest, self.delta_init, zero)
        b = pushed(group, trees, base, zero)
        h = SkewHeap(group, meld_trees(group, a, b), zero)
        for c in singles:
            h = h.add(c.val, group.op(base, c.delta))
        return h

    def items(self) -> Iterator[tuple[Any, GroupValue]]:
        op = self.group.op
        stack = [(v, self.delta_init) for v in siblings(self.root)]
        while stack:
            v, base = stack.pop()
            prio = op(base, v.delta)
            yield v.val, prio
            for c in children(v):
                stack.append((c, prio))

    def __len__(self):
        return sum(1 for _ in self.items())

    def drain(self) -> Iterator[tuple[Any, GroupValue]]:
        h = self
        while h.root is not None:
            yield h.peek()
            h = h.delete_min()


class Queue:
    """Handle onto an incremental Brodal queue.

    A non-empty queue keeps its minimum pair at the top and every other pair
    inside ``inner``, a skew heap of queues.  ``size`` counts the pairs of the
    whole recursive contents.
    """

    __slots__ = ("group", "elem", "prio", "inner", "size")

    def __init__(self, group: GroupSpec, elem: Any, prio: GroupValue | None,
                 inner: SkewHeap | None, size: int):
        self.group = group
        self.elem = elem
        self.prio = prio
        self.inner = inner
        self.size = size

    @classmethod
    def empty(cls, group: GroupSpec = INT) -> Queue:
        return cls(group, None, None, None, 0)

    def is_empty(self) -> bool:
        return self.size == 0

    def __bool__(self):
        return self.size != 0

    def __len__(self):
        return self.size

    def find_min(self) -> Any:
        if self.size == 0:
            raise EmptyQueue("find_min on an empty queue")
        return self.elem

    def min_priority(self) -> GroupValue:
        if self.size == 0:
            raise EmptyQueue("min_priority on an empty queue")
        return self.prio

    def peek(self) -> tuple[Any, GroupValue]:
        if self.size == 0:
            raise EmptyQueue("peek on an empty queue")
        return self.elem, self.prio

    def increase_by(self, d: GroupValue) -> Queue:
        if self.size == 0:
            return self
        group = self.group
        return Queue(group, self.elem, group.op(self.prio, d), self.inner.increase_by(d), self.size)

    def add(self, e: Any, g: GroupValue) -> Queue:
        group = self.group
        if self.size == 0:
            return Queue(group, e, g, SkewHeap(group), 1)
        COUNTER.comparisons += 1
        if g < self.prio:
            top_e, top_p, lose_e, lose_p = e, g, self.elem, self.prio
        else:
            top_e, top_p, lose_e, lose_p = self.elem, self.prio, e, g
        loser = Queue(group, lose_e, lose_p, SkewHeap(group), 1)
        return Queue(group, top_e, top_p, self.inner.add(loser, lose_p), self.size + 1)

    def meld(self, other: Queue) -> Queue:
        if other.size == 0:
            return self
        if self.size == 0:
            return other
        COUNTER.comparisons += 1
        win, lose = (other, self) if other.prio < self.prio else (self, other)
        return Queue(self.group, win.elem, win.prio, win.inner.add(lose, lose.prio),
                     self.size + other.size)

    def delete_min(self) -> Queue:
        if self.size == 0:
            raise EmptyQueue("delete_min on an empty queue")
        group = self.group
        inner = self.inner
        if inner.root is None:
            return Queue.empty(group)
        nested, u = inner.peek()
        rest = inner.delete_min()
        shift = group.sub(u, nested.prio)
        if nested.inner.root is not None:
            rest = nested.inner.increase_by(shift).meld(rest)
        return Queue(group, nested.elem, u, rest, self.size - 1)

    def items(self) -> Iterator[tuple[Any, GroupValue]]:
        """All stored (element, priority) pairs of the recursive contents."""
        group = self.group
        if self.size == 0:
            return
        stack = [(self, group.zero())]
        while stack:
            q, shift = stack.pop()
            yield q.elem, group.op(q.prio, shift)
            for nested, p in q.inner.items():
                stack.append((nested, group.sub(group.op(p, shift), nested.prio)))

    def drain(self) -> Iterator[tuple[Any, GroupValue]]:
        q = self
        while q.size:
            yield q.elem, q.prio
            q = q.delete_min()

    def __repr__(self):
        if self.size == 0:
            return "Queue(<empty>)"
        return f"Queue(min=({self.elem!r}, {self.prio!r}), size={self.size})"
