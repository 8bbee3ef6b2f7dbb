"""Cost transducers: data model, file parsing, unambiguity check and a brute-force oracle.

A transducer reads a word letter by letter.  Each transition carries a
guard, a set of output variables (its *varset*) and a cost.  The output of
a run is the sequence of ``(varset, position)`` pairs for the positions
where a non-empty varset was used; its cost is the initial cost, plus every
transition cost, plus the final cost, all in the configured group.

Guards come in two flavours, fixed per machine: literal symbols
(``"on": "a"``), matched against word tokens, or event predicates
(``"when": ...``), evaluated on ``Event`` records.
"""
from __future__ import annotations

import itertools
import json
import operator
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Hashable, Iterable, Mapping, NamedTuple, Sequence

from .group import INT, GroupError, GroupSpec, GroupValue


class TransducerError(ValueError):
    pass


class ParseError(TransducerError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(msg + where)


class UnknownState(TransducerError):
    pass


class BadCostArity(TransducerError):
    pass


class ExplosionGuard(RuntimeError):
    pass


# ---------------------------------------------------------------- events ---

@dataclass(frozen=True)
class Event:
    type: str
    attrs: tuple[tuple[str, int], ...] = ()

    def get(self, name: str) -> int | None:
        for k, v in self.attrs:
            if k == name:
                return v
        return None

    def __str__(self):
        return " ".join([self.type] + [f"{k}={v}" for k, v in self.attrs])


def parse_event(line: str) -> Event:
    """Parse ``TYPE key=value ...``; values are integers, keys unique."""
    tokens = line.split()
    if not tokens:
        raise ParseError("empty event line")
    etype, attrs, seen = tokens[0], [], set()
    if "=" in etype:
        raise ParseError(f"event type expected, got {etype!r}")
    for tok in tokens[1:]:
        key, sep, raw = tok.partition("=")
        if not sep or not key:
            raise ParseError(f"bad attribute {tok!r}, expected key=value")
        if key in seen:
            raise ParseError(f"duplicate attribute {key!r}")
        try:
            value = int(raw)
        except ValueError:
            raise ParseError(f"attribute {key!r} is not an integer: {raw!r}") from None
        seen.add(key)
        attrs.append((key, value))
    return Event(etype, tuple(attrs))


# ------------------------------------------------------------ predicates ---

_OPS = {
    "<": operator.lt, "<=": operator.le, "≤": operator.le, "=": operator.eq,
    "==": operator.eq, ">=": operator.ge, "≥": operator.ge, ">": operator.gt,
}
_CANON = {"≤": "<=", "≥": ">=", "==": "="}


class Predicate:
    def __call__(self, event: Event) -> bool:
        raise NotImplementedError

    def atoms(self) -> Iterable[Predicate]:
        yield self


@dataclass(frozen=True)
class TruePred(Predicate):
    def __call__(self, event):
        return True

    def atoms(self):
        return ()

    def to_json(self):
        return "TRUE"


@dataclass(frozen=True)
class TypeIs(Predicate):
    name: str

    def __call__(self, event):
        return event.type == self.name

    def to_json(self):
        return {"type": self.name}


@dataclass(frozen=True)
class AttrCmp(Predicate):
    attr: str
    op: str
    value: int

    def __call__(self, event):
        v = event.get(self.attr)
        return v is not None and _OPS[self.op](v, self.value)

    def to_json(self):
        return {"attr": self.attr, "op": self.op, "value": self.value}


@dataclass(frozen=True)
class And(Predicate):
    parts: tuple[Predicate, ...]

    def __call__(self, event):
        return all(p(event) for p in self.parts)

    def atoms(self):
        for p in self.parts:
            yield from p.atoms()

    def to_json(self):
        return {"and": [p.to_json() for p in self.parts]}


def parse_predicate(raw) -> Predicate:
    if raw == "TRUE" or raw is True:
        return TruePred()
    if isinstance(raw, dict):
        if set(raw) == {"type"} and isinstance(raw["type"], str):
            return TypeIs(raw["type"])
        if set(raw) == {"attr", "op", "value"}:
            op = raw["op"]
            if op not in _OPS:
                raise TransducerError(f"unknown comparison {op!r}")
            value = raw["value"]
            if isinstance(value, bool) or not isinstance(value, int):
                raise TransducerError(f"predicate constant must be an integer, got {value!r}")
            return AttrCmp(str(raw["attr"]), _CANON.get(op, op), value)
        if set(raw) == {"and"} and isinstance(raw["and"], list) and raw["and"]:
            return And(tuple(parse_predicate(p) for p in raw["and"]))
    raise TransducerError(f"bad predicate {raw!r}")


# ------------------------------------------------------------ transducer ---

@dataclass(frozen=True)
class Transition:
    source: Hashable
    guard: Any  # a symbol string, or a Predicate
    varset: frozenset
    target: Hashable
    cost: GroupValue

    def matches(self, letter) -> bool:
        if isinstance(self.guard, Predicate):
            return self.guard(letter)
        return self.guard == letter


Encoding = tuple  # tuple[tuple[frozenset[str], int], ...]


class RankedOutput(NamedTuple):
    enc: Encoding
    cost: GroupValue


@dataclass(frozen=True)
class CostTransducer:
    states: tuple
    vars: tuple
    transitions: tuple[Transition, ...]
    init: Mapping[Hashable, GroupValue]
    final: Mapping[Hashable, GroupValue]
    group: GroupSpec = INT
    mode: str = "symbol"

    def __post_init__(self):
        known = set(self.states)
        for t in self.transitions:
            for q in (t.source, t.target):
                if q not in known:
                    raise UnknownState(f"transition uses undeclared state {q!r}")
            if not t.varset <= set(self.vars):
                raise TransducerError(f"transition uses undeclared variables {sorted(t.varset - set(self.vars))}")
            if not self.group.conforms(t.cost):
                raise BadCostArity(f"cost {t.cost!r} does not match group {self.group}")
        for name, m in (("init", self.init), ("final", self.final)):
            for q, c in m.items():
                if q not in known:
                    raise UnknownState(f"{name} mentions undeclared state {q!r}")
                if not self.group.conforms(c):
                    raise BadCostArity(f"{name} cost {c!r} does not match group {self.group}")
        if self.mode not in ("symbol", "predicate"):
            raise TransducerError(f"unknown guard mode {self.mode!r}")

    @property
    def size(self) -> int:
        return len(self.states) + len(self.transitions)

    @cached_property
    def _by_symbol(self) -> dict:
        index: dict = {}
        for t in self.transitions:
            index.setdefault(t.guard, []).append(t)
        return index

    def step(self, letter) -> list[Transition]:
        """Transitions whose guard accepts ``letter``, in declaration order."""
        if self.mode == "symbol":
            return self._by_symbol.get(letter, [])
        return [t for t in self.transitions if t.guard(letter)]

    def warnings(self) -> list[str]:
        out = []
        if not self.init:
            out.append("no initial states: every word has an empty output set")
        if not self.final:
            out.append("no final states: every word has an empty output set")
        return out

    def letter(self, token: str):
        """Turn a word token into a letter for this machine."""
        if self.mode == "symbol":
            return token
        return Event(token)

    def to_json(self) -> dict:
        g = self.group
        def cost(c):
            return list(c) if g.is_vector else c
        trans = []
        for t in self.transitions:
            d: dict = {"from": t.source}
            if self.mode == "symbol":
                d["on"] = t.guard
            else:
                d["when"] = t.guard.to_json()
            d["vars"] = sorted(t.varset)
            d["to"] = t.target
            d["cost"] = cost(t.cost)
            trans.append(d)
        return {
            "group": g.to_json(),
            "states": list(self.states),
            "vars": list(self.vars),
            "init": {q: cost(c) for q, c in self.init.items()},
            "final": {q: cost(c) for q, c in self.final.items()},
            "transitions": trans,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _require(doc: dict, key: str, kind):
    if key not in doc:
        raise ParseError(f"missing key {key!r}")
    if not isinstance(doc[key], kind):
        raise ParseError(f"key {key!r} has the wrong type")
    return doc[key]


def parse_transducer(text: str) -> CostTransducer:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", 1, 1)
    try:
        group = GroupSpec.from_json(doc.get("group", {"kind": "int"}))
    except GroupError as exc:
        raise ParseError(str(exc)) from None
    states = _require(doc, "states", list)
    if not all(isinstance(q, str) for q in states):
        raise ParseError("state names must be strings")
    if len(set(states)) != len(states):
        raise ParseError("duplicate state names")
    variables = doc.get("vars", [])
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise ParseError("vars must be a list of strings")

    def cost(raw, where):
        try:
            return group.parse_value(raw)
        except GroupError as exc:
            raise BadCostArity(f"{where}: {exc}") from None

    init = {q: cost(c, f"init[{q}]") for q, c in _require(doc, "init", dict).items()}
    final = {q: cost(c, f"final[{q}]") for q, c in _require(doc, "final", dict).items()}
    transitions = []
    modes = set()
    for n, raw in enumerate(_require(doc, "transitions", list)):
        where = f"transition #{n}"
        if not isinstance(raw, dict):
            raise ParseError(f"{where} must be an object")
        missing = {"from", "to", "cost"} - set(raw)
        if missing:
            raise ParseError(f"{where} lacks {sorted(missing)}")
        if ("on" in raw) == ("when" in raw):
            raise ParseError(f"{where} needs exactly one of 'on' and 'when'")
        if "on" in raw:
            if not isinstance(raw["on"], str) or not raw["on"] or any(c.isspace() for c in raw["on"]):
                raise ParseError(f"{where}: 'on' must be a non-empty symbol without whitespace")
            guard = raw["on"]
            modes.add("symbol")
        else:
            try:
                guard = parse_predicate(raw["when"])
            except TransducerError as exc:
                raise ParseError(f"{where}: {exc}") from None
            modes.add("predicate")
        vs = raw.get("vars", [])
        if not isinstance(vs, list) or not all(isinstance(v, str) for v in vs):
            raise ParseError(f"{where}: vars must be a list of strings")
        transitions.append(Transition(raw["from"], guard, frozenset(vs), raw["to"],
                                      cost(raw["cost"], where)))
    if len(modes) > 1:
        raise ParseError("a machine must use either 'on' symbols or 'when' predicates, not both")
    mode = modes.pop() if modes else "symbol"
    return CostTransducer(tuple(states), tuple(variables), tuple(transitions),
                          init, final, group, mode)


def load_transducer(path) -> CostTransducer:
    with open(path, encoding="utf-8") as fh:
        return parse_transducer(fh.read())


# -------------------------------------------------------------- rendering ---

def format_enc(enc: Encoding) -> str:
    return " ".join("{" + ",".join(sorted(vs)) + "}@" + str(i) for vs, i in enc)


def parse_word(t: CostTransducer, text: str) -> list:
    return [t.letter(tok) for tok in text.split()]


# ----------------------------------------------------------- unambiguity ---

def abstract_alphabet(t: CostTransducer) -> list:
    """Finite set of letters, one per distinguishable behaviour of the guards.

    Symbol mode uses the symbols themselves.  In predicate mode each letter is
    a concrete event; two events satisfying exactly the same guards are
    interchangeable, so one representative per guard-truth pattern suffices.
    """
    if t.mode == "symbol":
        return sorted({tr.guard for tr in t.transitions})
    guards = list(dict.fromkeys(tr.guard for tr in t.transitions))
    types, consts = set(), {}
    for g in guards:
        for a in g.atoms():
            if isinstance(a, TypeIs):
                types.add(a.name)
            elif isinstance(a, AttrCmp):
                consts.setdefault(a.attr, set()).add(a.value)
    other = "_"
    while other in types:
        other += "_"
    type_choices = sorted(types) + [other]
    attr_names = sorted(consts)
    value_choices = []
    for name in attr_names:
        cs = sorted(consts[name])
        pts = {c for c in cs} | {c - 1 for c in cs} | {c + 1 for c in cs}
        value_choices.append([None] + sorted(pts))
    letters, patterns = [], set()
    for ty in type_choices:
        for values in itertools.product(*value_choices):
            ev = Event(ty, tuple((n, v) for n, v in zip(attr_names, values) if v is not None))
            pattern = tuple(g(ev) for g in guards)
            if pattern not in patterns:
                patterns.add(pattern)
                letters.append(ev)
    return letters


@dataclass
class AmbiguityReport:
    unambiguous: bool
    witness: tuple | None = None
    runs: tuple | None = None  # two (start_state, [transition indices]) pairs

    def __bool__(self):
        return self.unambiguous


def check_unambiguous(t: CostTransducer) -> AmbiguityReport:
    """Decide unambiguity by reachability in the self-product.

    Product nodes are ``(p1, p2, diverged)``.  Two runs advance together on a
    common letter through transitions with equal varsets, so they keep
    producing the same output; ``diverged`` records whether they have used
    different initial states or transitions.  The machine is ambiguous iff a
    diverged node with both components final is reachable.
    """
    letters = abstract_alphabet(t)
    # by letter: state -> transitions
    moves = []
    for a in letters:
        by_src: dict = {}
        for i, tr in enumerate(t.transitions):
            if tr.matches(a):
                by_src.setdefault(tr.source, []).append(i)
        moves.append(by_src)
    trans = t.transitions
    parent: dict = {}
    queue = deque()
    for p1 in t.init:
        for p2 in t.init:
            node = (p1, p2, p1 != p2)
            if node not in parent:
                parent[node] = None
                queue.append(node)
    hit = None
    while queue:
        node = queue.popleft()
        p1, p2, div = node
        if div and p1 in t.final and p2 in t.final:
            hit = node
            break
        for li, by_src in enumerate(moves):
            for i1 in by_src.get(p1, ()):
                for i2 in by_src.get(p2, ()):
                    if trans[i1].varset != trans[i2].varset:
                        continue
                    nxt = (trans[i1].target, trans[i2].target, div or i1 != i2)
                    if nxt not in parent:
                        parent[nxt] = (node, li, i1, i2)
                        queue.append(nxt)
    if hit is None:
        return AmbiguityReport(True)
    word, run1, run2 = [], [], []
    node = hit
    while parent[node] is not None:
        node, li, i1, i2 = parent[node]
        word.append(letters[li])
        run1.append(i1)
        run2.append(i2)
    word.reverse(), run1.reverse(), run2.reverse()
    return AmbiguityReport(False, tuple(word), ((node[0], run1), (node[1], run2)))


# ---------------------------------------------------------------- oracle ---

def run_cost(t: CostTransducer, word: Sequence, enc: Encoding):
    """Cost of the run over ``word`` whose output is ``enc``, or ``None`` if there is none."""
    group = t.group
    wanted = {}
    for vs, i in enc:
        if not vs or i < 1 or i > len(word) or i in wanted:
            return None
        wanted[i] = frozenset(vs)
    if list(wanted) != sorted(wanted):
        return None
    # state -> (cost of some run, number of runs)
    level = {q: (c, 1) for q, c in t.init.items()}
    for i, a in enumerate(word, 1):
        need = wanted.get(i, frozenset())
        nxt = {}
        for tr in t.step(a):
            if tr.source in level and tr.varset == need:
                c, k = level[tr.source]
                prev = nxt.get(tr.target)
                nxt[tr.target] = (group.op(c, tr.cost), k + (prev[1] if prev else 0))
        level = nxt
    ends = [(group.op(c, t.final[q]), k) for q, (c, k) in level.items() if q in t.final]
    if not ends:
        return None
    if len(ends) > 1 or ends[0][1] > 1:
        raise TransducerError("several runs produce this output: the machine is ambiguous")
    return ends[0][0]


def all_runs(t: CostTransducer, word: Sequence, limit: int = 1_000_000):
    """Every accepting run as ``(output, cost)``, in depth-first discovery order.

    Partial runs that can no longer reach a final state are pruned, so the
    work is bounded by the number of accepting runs times ``len(word)``.
    """
    group = t.group
    steps = [t.step(a) for a in word]
    n = len(word)
    # alive[i]: states from which the rest of the word can still be accepted
    alive = [set() for _ in range(n + 1)]
    alive[n] = set(t.final)
    for i in range(n - 1, -1, -1):
        alive[i] = {tr.source for tr in steps[i] if tr.target in alive[i + 1]}
    out = []
    visited = 0
    stack = [(q, 0, c, ()) for q, c in reversed(list(t.init.items())) if q in alive[0]]
    while stack:
        q, i, cost, enc = stack.pop()
        visited += 1
        if visited > limit:
            raise ExplosionGuard(f"more than {limit} partial runs")
        if i == n:
            if q in t.final:
                out.append((enc, group.op(cost, t.final[q])))
            continue
        for tr in reversed(steps[i]):
            if tr.source == q and tr.target in alive[i + 1]:
                e = enc + ((tr.varset, i + 1),) if tr.varset else enc
                stack.append((tr.target, i + 1, group.op(cost, tr.cost), e))
    return out


def enumerate_bruteforce(t: CostTransducer, word: Sequence, limit: int = 1_000_000) -> list[RankedOutput]:
    runs = all_runs(t, word, limit)
    runs.sort(key=lambda r: r[1])
    return [RankedOutput(enc, cost) for enc, cost in runs]
