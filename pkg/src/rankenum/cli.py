"""Command-line front end: ``check``, ``enumerate``, ``stream`` and ``bench``.

Exit status is 0 on success, 1 on unreadable or malformed input (including
bad event lines and arithmetic overflow) and 2 when the transducer is
ambiguous.
"""
from __future__ import annotations

import argparse
import random
import sys
from typing import Iterable, TextIO

from .counters import counting
from .enumeration import enumerate_filtered, preprocess, stream_new, stream_outputs, stream_push
from .group import GroupError, GroupSpec
from .transducer import (
    CostTransducer,
    RankedOutput,
    TransducerError,
    abstract_alphabet,
    check_unambiguous,
    format_enc,
    load_transducer,
    parse_event,
)


class CliError(Exception):
    def __init__(self, msg: str, status: int = 1):
        super().__init__(msg)
        self.status = status


def parse_cost(group: GroupSpec, text: str):
    raw = text.strip().strip("()")
    try:
        parts = [int(x) for x in raw.split(",")]
    except ValueError:
        raise CliError(f"bad cost {text!r}") from None
    value = parts[0] if not group.is_vector and len(parts) == 1 else tuple(parts)
    try:
        return group.check(value)
    except GroupError as exc:
        raise CliError(f"bad cost {text!r}: {exc}") from None


def format_output(group: GroupSpec, out: RankedOutput) -> str:
    return f"{group.format(out.cost)}\t{format_enc(out.enc)}"


def write_block(stream: TextIO, group: GroupSpec, outputs: Iterable[RankedOutput]) -> int:
    stream.write("#\n")
    n = 0
    for out in outputs:
        stream.write(format_output(group, out) + "\n")
        n += 1
    stream.write("#\n")
    return n


def _load(path: str) -> CostTransducer:
    try:
        return load_transducer(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except TransducerError as exc:
        raise CliError(f"{path}: {exc}") from None


def _require_unambiguous(t: CostTransducer) -> None:
    report = check_unambiguous(t)
    if not report:
        raise CliError("transducer is ambiguous (run `check` for a witness); refusing to enumerate", 2)


def _render_letter(letter) -> str:
    return str(letter)


def cmd_check(args, out: TextIO, err: TextIO) -> int:
    t = _load(args.transducer)
    for w in t.warnings():
        err.write(f"warning: {w}\n")
    report = check_unambiguous(t)
    if report:
        out.write(f"unambiguous: {len(t.states)} states, {len(t.transitions)} transitions\n")
        return 0
    word = " ".join(_render_letter(a) for a in report.witness)
    out.write("ambiguous\n")
    out.write(f"witness: {word if word else '(empty word)'}\n")
    for n, (start, run) in enumerate(report.runs, 1):
        out.write(f"run {n}: start {start}; transitions {' '.join(map(str, run)) or '-'}\n")
    return 2


def cmd_enumerate(args, out: TextIO, err: TextIO) -> int:
    t = _load(args.transducer)
    _require_unambiguous(t)
    max_cost = parse_cost(t.group, args.max_cost) if args.max_cost is not None else None
    word = [t.letter(tok) for tok in args.word.split()]
    h = preprocess(t, word)
    write_block(out, t.group, enumerate_filtered(h, args.top, max_cost))
    return 0


def cmd_stream(args, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    t = _load(args.transducer)
    _require_unambiguous(t)
    max_cost = parse_cost(t.group, args.max_cost) if args.max_cost is not None else None
    state = stream_new(t)
    for lineno, line in enumerate(stdin, 1):
        if not line.strip():
            continue
        try:
            event = parse_event(line)
        except TransducerError as exc:
            raise CliError(f"stdin line {lineno}: {exc}") from None
        if t.mode == "symbol":
            if event.attrs:
                raise CliError(f"stdin line {lineno}: symbol machines take bare symbols")
            event = event.type
        state = stream_push(state, event)
        out.write(f"@{state.position}\n")
        write_block(out, t.group, enumerate_filtered(stream_outputs(state), args.top, max_cost))
        out.flush()
    return 0


def bench_rows(t: CostTransducer, lengths: Iterable[int], seed: int, top: int) -> list[tuple]:
    """Rows of ``(n, preprocess_ops, outputs, max_delay_ops_per_symbol)``.

    The delay of an output is the operation count of the ``find_min`` that
    reports it plus the ``delete_min`` that removes it, divided by the output
    length (at least 1).  ``max_delay_ops_per_symbol`` is ``None`` when the
    machine produced nothing.
    """
    alphabet = abstract_alphabet(t)
    rows = []
    for n in lengths:
        rng = random.Random(f"{seed}:{n}")
        word = [rng.choice(alphabet) for _ in range(n)] if alphabet else []
        with counting() as pre:
            h = preprocess(t, word)
        outputs, worst = 0, None
        while not h.is_empty() and outputs < top:
            with counting() as c:
                enc, _ = h.find_min()
                h = h.delete_min()
            per_symbol = c.total / max(1, len(enc))
            worst = per_symbol if worst is None else max(worst, per_symbol)
            outputs += 1
        rows.append((n, pre.total, outputs, worst))
    return rows


def cmd_bench(args, out: TextIO, err: TextIO) -> int:
    t = _load(args.transducer)
    _require_unambiguous(t)
    try:
        lengths = [int(x) for x in args.lengths.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"bad --lengths {args.lengths!r}") from None
    if any(n < 0 for n in lengths):
        raise CliError("lengths must be non-negative")
    out.write("n,preprocess_ops,outputs,max_delay_ops_per_symbol\n")
    for n, ops, outputs, worst in bench_rows(t, lengths, args.seed, args.top):
        cell = "" if worst is None else f"{worst:.3f}"
        out.write(f"{n},{ops},{outputs},{cell}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rankenum", description="Ranked enumeration of cost-transducer outputs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a transducer file and test it for unambiguity")
    c.add_argument("transducer")

    e = sub.add_parser("enumerate", help="list the outputs over a word, cheapest first")
    e.add_argument("transducer")
    e.add_argument("word", help="whitespace-separated symbols, e.g. 'a b a'")
    e.add_argument("--top", type=int, default=None, metavar="K")
    e.add_argument("--max-cost", default=None, metavar="C")

    s = sub.add_parser("stream", help="read events from stdin and list outputs after each one")
    s.add_argument("transducer")
    s.add_argument("--top", type=int, default=None, metavar="K")
    s.add_argument("--max-cost", default=None, metavar="C")

    b = sub.add_parser("bench", help="count structure operations over random words")
    b.add_argument("transducer")
    b.add_argument("--lengths", default="1024,2048,4096,8192,16384,32768,65536")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--top", type=int, default=100, metavar="K",
                   help="outputs to enumerate per length (default 100)")
    return p


def main(argv=None, stdin: TextIO | None = None, stdout: TextIO | None = None,
         stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check":
            return cmd_check(args, stdout, stderr)
        if args.command == "enumerate":
            return cmd_enumerate(args, stdout, stderr)
        if args.command == "stream":
            return cmd_stream(args, stdout, stderr, stdin)
        return cmd_bench(args, stdout, stderr)
    except CliError as exc:
        stderr.write(f"error: {exc}\n")
        return exc.status
    except GroupError as exc:
        stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
