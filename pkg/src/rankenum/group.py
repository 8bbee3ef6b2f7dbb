"""Ordered abelian groups used for costs and priorities.

Two groups are supported: the integers under addition, and fixed-arity
integer vectors under componentwise addition with the lexicographic order.
Values are plain Python ``int`` and ``tuple[int, ...]`` respectively, so the
native ``<``/``<=``/``==`` operators already implement the group order; the
data structures compare priorities directly and only call into this module
for the group operation and inverses.

All arithmetic is checked against the signed 64-bit range.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

GroupValue = Union[int, "tuple[int, ...]"]

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


class GroupError(ValueError):
    pass


class ArityMismatch(GroupError):
    pass


class GroupOverflow(GroupError, OverflowError):
    pass


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _checked(x: int) -> int:
    if x < INT64_MIN or x > INT64_MAX:
        raise GroupOverflow(f"{x} is outside the signed 64-bit range")
    return x


@dataclass(frozen=True)
class GroupSpec:
    kind: str = "int"
    arity: int | None = None

    def __post_init__(self):
        if self.kind == "int":
            object.__setattr__(self, "arity", None)
        elif self.kind == "int_vec":
            if not isinstance(self.arity, int) or self.arity < 1:
                raise GroupError(f"int_vec needs a positive arity, got {self.arity!r}")
        else:
            raise GroupError(f"unknown group kind {self.kind!r}")

    @property
    def is_vector(self) -> bool:
        return self.kind == "int_vec"

    def zero(self) -> GroupValue:
        if self.arity is None:
            return 0
        return (0,) * self.arity

    def conforms(self, a) -> bool:
        if self.arity is None:
            return isinstance(a, int) and not isinstance(a, bool)
        return (isinstance(a, tuple) and len(a) == self.arity
                and all(isinstance(x, int) and not isinstance(x, bool) for x in a))

    def check(self, a) -> GroupValue:
        if not self.conforms(a):
            raise ArityMismatch(f"{a!r} is not a value of {self}")
        if self.arity is None:
            return _checked(a)
        for x in a:
            _checked(x)
        return a

    def op(self, a: GroupValue, b: GroupValue) -> GroupValue:
        if self.arity is None:
            s = a + b
            if s < INT64_MIN or s > INT64_MAX:
                raise GroupOverflow(f"{a} + {b} overflows")
            return s
        if len(a) != self.arity or len(b) != self.arity:
            raise ArityMismatch(f"expected arity {self.arity}: {a!r}, {b!r}")
        return tuple(_checked(x + y) for x, y in zip(a, b))

    def inv(self, a: GroupValue) -> GroupValue:
        if self.arity is None:
            return _checked(-a)
        return tuple(_checked(-x) for x in a)

    def sub(self, a: GroupValue, b: GroupValue) -> GroupValue:
        """``a ⊕ b⁻¹``"""
        if self.arity is None:
            s = a - b
            if s < INT64_MIN or s > INT64_MAX:
                raise GroupOverflow(f"{a} - {b} overflows")
            return s
        return self.op(a, self.inv(b))

    def cmp(self, a: GroupValue, b: GroupValue) -> Ordering:
        if self.arity is not None and (len(a) != self.arity or len(b) != self.arity):
            raise ArityMismatch(f"expected arity {self.arity}: {a!r}, {b!r}")
        if a < b:
            return Ordering.LESS
        if a == b:
            return Ordering.EQUAL
        return Ordering.GREATER

    def parse_value(self, raw) -> GroupValue:
        """Convert a JSON-decoded integer or integer array into a group value."""
        if self.arity is None:
            if isinstance(raw, bool) or not isinstance(raw, int):
                raise ArityMismatch(f"expected an integer cost, got {raw!r}")
            return _checked(raw)
        if not isinstance(raw, list) or len(raw) != self.arity:
            raise ArityMismatch(f"expected an integer array of length {self.arity}, got {raw!r}")
        return self.check(tuple(raw))

    def to_json(self) -> dict:
        if self.arity is None:
            return {"kind": "int"}
        return {"kind": "int_vec", "arity": self.arity}

    @classmethod
    def from_json(cls, raw) -> GroupSpec:
        if not isinstance(raw, dict) or "kind" not in raw:
            raise GroupError(f"bad group description {raw!r}")
        return cls(raw["kind"], raw.get("arity"))

    def format(self, a: GroupValue) -> str:
        if self.arity is None:
            return str(a)
        return "(" + ",".join(str(x) for x in a) + ")"


INT = GroupSpec("int")


def int_vec(arity: int) -> GroupSpec:
    return GroupSpec("int_vec", arity)


def gop(spec: GroupSpec, a: GroupValue, b: GroupValue) -> GroupValue:
    return spec.op(spec.check(a), spec.check(b))


def gid(spec: GroupSpec) -> GroupValue:
    return spec.zero()


def ginv(spec: GroupSpec, a: GroupValue) -> GroupValue:
    return spec.inv(spec.check(a))


def gcmp(spec: GroupSpec, a: GroupValue, b: GroupValue) -> Ordering:
    return spec.cmp(spec.check(a), spec.check(b))
