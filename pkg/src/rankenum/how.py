"""Heap of Words: a persistent prioritized set of distinct words.

A HoW is a ``Queue`` whose elements are ``(letter, child)`` edges, ``child``
being another HoW.  Together these edges form a DAG with a single sink (the
empty HoW) and each root-to-sink path spells one stored word.  The priority
stored on an edge is the least priority among the words reachable through
it, so following minimum edges greedily yields the minimum word.

Paths are read from the sink upwards: the edge nearest the root carries the
*last* letter of a word, which is what makes ``extend_by`` a single queue
insertion.  ``EPSILON`` edges always point at the sink and contribute no
letter.
"""
from __future__ import annotations

from typing import Any, Hashable, Iterator

from .brodal import Queue
from .group import INT, GroupSpec, GroupValue


class _Epsilon:
    __slots__ = ()

    def __repr__(self):
        return "EPSILON"

    def __reduce__(self):
        return "EPSILON"


EPSILON = _Epsilon()

Word = tuple


class EmptyHow(LookupError):
    pass


class HeapOfWords:
    __slots__ = ("queue",)

    def __init__(self, queue: Queue):
        self.queue = queue

    @classmethod
    def empty(cls, group: GroupSpec = INT) -> HeapOfWords:
        return cls(Queue.empty(group))

    @property
    def group(self) -> GroupSpec:
        return self.queue.group

    def is_empty(self) -> bool:
        return self.queue.size == 0

    def __bool__(self):
        return self.queue.size != 0

    def add(self, letter: Hashable, g: GroupValue) -> HeapOfWords:
        """Store the one-letter word ``letter`` (or the empty word for ``EPSILON``)."""
        q = self.queue
        return HeapOfWords(q.add((letter, HeapOfWords(Queue.empty(q.group))), g))

    def extend_by(self, letter: Hashable) -> HeapOfWords:
        """Append ``letter`` to every stored word."""
        assert letter is not EPSILON
        q = self.queue
        if q.size == 0:
            return self
        return HeapOfWords(Queue.empty(q.group).add((letter, self), q.prio))

    def increase_by(self, g: GroupValue) -> HeapOfWords:
        return HeapOfWords(self.queue.increase_by(g))

    def meld(self, other: HeapOfWords) -> HeapOfWords:
        return HeapOfWords(self.queue.meld(other.queue))

    def min_priority(self) -> GroupValue:
        if self.queue.size == 0:
            raise EmptyHow("min_priority on an empty heap of words")
        return self.queue.prio

    def find_min(self) -> tuple[Word, GroupValue]:
        q = self.queue
        if q.size == 0:
            raise EmptyHow("find_min on an empty heap of words")
        prio = q.prio
        letters = []
        while q.size:
            letter, child = q.elem
            if letter is not EPSILON:
                letters.append(letter)
            q = child.queue
        letters.reverse()
        return tuple(letters), prio

    def delete_min(self) -> HeapOfWords:
        # Walk the minimum path, then rebuild it bottom-up: at each level the
        # minimum edge is removed and, if its child still holds words, put
        # back pointing at the child's remainder with a corrected priority.
        frames = []
        q = self.queue
        while q.size:
            letter, child = q.elem
            frames.append((q, letter, child.queue))
            q = child.queue
        if not frames:
            return self
        result = q
        for q, letter, child in reversed(frames):
            rest = q.delete_min()
            if result.size:
                group = q.group
                g = group.op(q.prio, group.sub(result.prio, child.prio))
                rest = rest.add((letter, HeapOfWords(result)), g)
            result = rest
        return HeapOfWords(result)

    def drain(self) -> Iterator[tuple[Word, GroupValue]]:
        h = self
        while h.queue.size:
            yield h.find_min()
            h = h.delete_min()

    def edges(self) -> Iterator[tuple[Any, HeapOfWords, GroupValue]]:
        """The outgoing (letter, child, stored priority) edges, in no particular order."""
        for (letter, child), p in self.queue.items():
            yield letter, child, p

    def words(self) -> Iterator[tuple[Word, GroupValue]]:
        """All stored pairs by depth-first path enumeration (no deletions involved)."""
        group = self.group
        # (node, reversed suffix, shift to add to stored priorities)
        stack = [(self, (), group.zero())]
        while stack:
            h, suffix, shift = stack.pop()
            for letter, child, p in h.edges():
                real = group.op(p, shift)
                word = suffix if letter is EPSILON else (letter,) + suffix
                if child.is_empty():
                    yield word, real
                else:
                    stack.append((child, word, group.sub(real, child.queue.prio)))

    def sdag_lines(self) -> list[str]:
        """Debug export: one ``node letter priority target`` line per edge, sink = 0."""
        ids: dict[int, int] = {}
        lines = []
        todo = [self]

        def ident(h: HeapOfWords) -> int:
            if h.is_empty():
                return 0
            key = id(h.queue)
            if key not in ids:
                ids[key] = len(ids) + 1
                todo.append(h)
            return ids[key]

        ident(self)
        seen = set()
        while todo:
            h = todo.pop()
            if h.is_empty() or id(h.queue) in seen:
                continue
            seen.add(id(h.queue))
            src = ident(h)
            for letter, child, p in sorted(h.edges(), key=lambda e: (e[2], repr(e[0]))):
                name = "ε" if letter is EPSILON else str(letter)
                lines.append(f"{src} {name} {self.group.format(p)} {ident(child)}")
        return lines

    def __repr__(self):
        if self.is_empty():
            return "HeapOfWords(<empty>)"
        return f"HeapOfWords(min_priority={self.queue.prio!r}, edges={self.queue.size})"
