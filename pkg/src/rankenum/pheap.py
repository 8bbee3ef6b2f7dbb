"""Fully-persistent incremental binomial heap.

Trees use the first-child / next-sibling encoding.  Nodes are immutable;
every operation builds fresh copies of the few nodes it touches and shares
the rest, so any handle obtained earlier keeps denoting the same contents.

Nodes store *delta* priorities.  The real priority of a root is
``delta_init ⊕ delta(root)`` and the real priority of any other node is the
real priority of its parent ``⊕ delta(node)``.  Shifting every priority is
therefore a single update of ``delta_init`` on the handle.
"""
from __future__ import annotations

from typing import Any, Iterator

from .counters import COUNTER
from .group import INT, GroupSpec, GroupValue


class EmptyHeap(LookupError):
    pass


class Node:
    """Tree record: first child, next sibling, delta, element, rank.

    Records are never modified once built.
    """

    __slots__ = ("fch", "nsb", "delta", "val", "rank")

    def __init__(self, fch, nsb, delta, val, rank):
        self.fch = fch
        self.nsb = nsb
        self.delta = delta
        self.val = val
        self.rank = rank
        COUNTER.appends += 1

    def __repr__(self):
        return f"Node(rank={self.rank}, delta={self.delta!r}, val={self.val!r})"


def siblings(v: Node | None) -> Iterator[Node]:
    while v is not None:
        yield v
        v = v.nsb


def children(v: Node) -> Iterator[Node]:
    return siblings(v.fch)


def subtree_size(v: Node) -> int:
    """Number of nodes in the tree hanging from ``v`` (siblings of ``v`` excluded)."""
    stack = [v.fch] if v.fch is not None else []
    count = 1
    while stack:
        u = stack.pop()
        count += 1
        if u.nsb is not None:
            stack.append(u.nsb)
        if u.fch is not None:
            stack.append(u.fch)
    return count


def link(group: GroupSpec, v1: Node, v2: Node, nsb: Node | None = None) -> Node:
    """Make ``v2`` the leftmost child of ``v1``.

    Requires ``delta(v1) ⪯ delta(v2)`` and equal ranks; the result is a fresh
    copy of ``v1`` of rank ``k+1`` whose sibling pointer is ``nsb``.
    """
    assert v1.rank == v2.rank, "link of trees with different ranks"
    assert v1.delta <= v2.delta
    child = Node(v2.fch, v1.fch, group.sub(v2.delta, v1.delta), v2.val, v2.rank)
    return Node(child, nsb, v1.delta, v1.val, v1.rank + 1)


def ordered_link(group: GroupSpec, a: Node, b: Node) -> Node:
    COUNTER.comparisons += 1
    if b.delta < a.delta:
        return link(group, b, a)
    return link(group, a, b)


def pushed(group: GroupSpec, roots, shift: GroupValue, zero: GroupValue) -> list[Node]:
    """Fresh sibling-free copies of ``roots`` with ``shift`` folded into each delta."""
    if shift == zero:
        return [v if v.nsb is None else Node(v.fch, None, v.delta, v.val, v.rank)
                for v in roots]
    return [Node(v.fch, None, group.op(shift, v.delta), v.val, v.rank) for v in roots]


def meld_trees(group: GroupSpec, *tree_lists: list[Node]) -> Node | None:
    """Combine detached trees into one root chain of strictly increasing rank.

    Trees of equal rank are linked pairwise, carrying upwards, as in binary
    addition.  Inputs must be sibling-free and share the same delta base.
    """
    buckets: dict[int, list[Node]] = {}
    for trees in tree_lists:
        for t in trees:
            buckets.setdefault(t.rank, []).append(t)
    if not buckets:
        return None
    out = []
    rank = min(buckets)
    top = max(buckets)
    while rank <= top or rank in buckets:
        bucket = buckets.pop(rank, None)
        if bucket:
            while len(bucket) >= 2:
                carry = ordered_link(group, bucket.pop(0), bucket.pop(0))
                buckets.setdefault(rank + 1, []).append(carry)
                top = max(top, rank + 1)
            if bucket:
                out.append(bucket[0])
        rank += 1
    return chain(out)


def chain(trees: list[Node]) -> Node | None:
    """Materialize a root list: copy each tree with its sibling set to the next one."""
    nxt = None
    for t in reversed(trees):
        if t.nsb is not nxt:
            t = Node(t.fch, nxt, t.delta, t.val, t.rank)
        nxt = t
    return nxt


def min_root(roots: Node) -> tuple[int, Node]:
    """Index and node of the root with least delta; the earliest wins ties."""
    best_i, best = 0, roots
    i = 0
    for v in siblings(roots.nsb):
        i += 1
        COUNTER.comparisons += 1
        if v.delta < best.delta:
            best_i, best = i, v
    return best_i, best


class BinomialHeap:
    """Handle onto an incremental binomial heap: root chain plus ``delta_init``."""

    __slots__ = ("group", "root", "delta_init")

    def __init__(self, group: GroupSpec = INT, root: Node | None = None,
                 delta_init: GroupValue | None = None):
        self.group = group
        self.root = root
        self.delta_init = group.zero() if delta_init is None else delta_init

    @classmethod
    def empty(cls, group: GroupSpec = INT) -> BinomialHeap:
        return cls(group)

    def is_empty(self) -> bool:
        return self.root is None

    def __bool__(self):
        return self.root is not None

    def __len__(self):
        return sum(subtree_size(v) for v in siblings(self.root))

    def increase_by(self, d: GroupValue) -> BinomialHeap:
        return BinomialHeap(self.group, self.root, self.group.op(self.delta_init, d))

    def _min(self) -> Node:
        if self.root is None:
            raise EmptyHeap("find_min on an empty heap")
        return min_root(self.root)[1]

    def find_min(self) -> Any:
        return self._min().val

    def min_priority(self) -> GroupValue:
        return self.group.op(self.delta_init, self._min().delta)

    def peek(self) -> tuple[Any, GroupValue]:
        v = self._min()
        return v.val, self.group.op(self.delta_init, v.delta)

    def add(self, e: Any, g: GroupValue) -> BinomialHeap:
        single = BinomialHeap(self.group, Node(None, None, g, e, 0))
        return self.meld(single)

    def meld(self, other: BinomialHeap) -> BinomialHeap:
        group = self.group
        if other.root is None:
            return self
        if self.root is None:
            return other
        zero = group.zero()
        a = pushed(group, siblings(self.root), self.delta_init, zero)
        b = pushed(group, siblings(other.root), other.delta_init, zero)
        return BinomialHeap(group, meld_trees(group, a, b), zero)

    def delete_min(self) -> BinomialHeap:
        if self.root is None:
            raise EmptyHeap("delete_min on an empty heap")
        group = self.group
        zero = group.zero()
        i, v = min_root(self.root)
        rest = [u for j, u in enumerate(siblings(self.root)) if j != i]
        kids = list(children(v))
        kids.reverse()
        a = pushed(group, rest, self.delta_init, zero)
        b = pushed(group, kids, group.op(self.delta_init, v.delta), zero)
        return BinomialHeap(group, meld_trees(group, a, b), zero)

    def items(self) -> Iterator[tuple[Any, GroupValue]]:
        """All stored (element, priority) pairs, in tree order."""
        op = self.group.op
        stack = [(v, self.delta_init) for v in siblings(self.root)]
        while stack:
            v, base = stack.pop()
            prio = op(base, v.delta)
            yield v.val, prio
            for c in children(v):
                stack.append((c, prio))

    def drain(self) -> Iterator[tuple[Any, GroupValue]]:
        h = self
        while h.root is not None:
            yield h.peek()
            h = h.delete_min()

    def __repr__(self):
        return f"BinomialHeap(<{len(self)} items>, delta_init={self.delta_init!r})"
