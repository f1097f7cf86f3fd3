"""Move traces and their JSON-lines file format.

Line 1 is a header naming the game and its initial layout, then one line
per move, then optionally a ``final`` line with the expected end layout::

    {"type":"header","version":1,"m":2,"n":1,"places":4,"initial":[{"place":1,"height":1}]}
    {"step":1,"from":"1","to":"2"}
    {"type":"final","layout":[{"place":2,"height":1}]}
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO

from .model import (
    Configuration,
    GameParams,
    Move,
    ModelError,
    format_position,
    initial_configuration,
    parse_position,
)

__all__ = [
    "Layout",
    "TraceHeader",
    "Trace",
    "TraceFormatError",
    "dump_trace",
    "dumps_trace",
    "load_trace",
    "loads_trace",
    "write_trace",
    "read_trace",
]

FORMAT_VERSION = 1

Layout = tuple[tuple[int, int], ...]


class TraceFormatError(ValueError):
    pass


@dataclass(frozen=True)
class TraceHeader:
    params: GameParams
    initial: Layout
    timestamp: str | None = field(default=None, compare=False)

    def initial_configuration(self) -> Configuration:
        return initial_configuration(self.params, self.initial)


@dataclass(frozen=True)
class Trace:
    header: TraceHeader
    moves: tuple[Move, ...]
    final: Layout | None = None

    def __len__(self) -> int:
        return len(self.moves)

    @property
    def params(self) -> GameParams:
        return self.header.params

    def initial_configuration(self) -> Configuration:
        return self.header.initial_configuration()

    def final_configuration(self) -> Configuration | None:
        if self.final is None:
            return None
        return initial_configuration(self.params, self.final)


def _layout_json(layout: Layout) -> list[dict[str, int]]:
    return [{"place": p, "height": h} for p, h in layout]


def _dump(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


def iter_trace_lines(trace: Trace) -> Iterator[str]:
    params = trace.params
    header = {
        "type": "header",
        "version": FORMAT_VERSION,
        "m": params.m,
        "n": params.n,
        "places": params.places,
        "initial": _layout_json(trace.header.initial),
    }
    if trace.header.timestamp is not None:
        header["timestamp"] = trace.header.timestamp
    yield _dump(header)
    for i, mv in enumerate(trace.moves, start=1):
        yield (
            f'{{"step":{i},"from":"{format_position(mv.src, params)}",'
            f'"to":"{format_position(mv.dst, params)}"}}'
        )
    if trace.final is not None:
        yield _dump({"type": "final", "layout": _layout_json(trace.final)})


def dump_trace(trace: Trace, fp: IO[str]) -> None:
    for line in iter_trace_lines(trace):
        fp.write(line)
        fp.write("\n")


def dumps_trace(trace: Trace) -> str:
    return "".join(line + "\n" for line in iter_trace_lines(trace))


def write_trace(trace: Trace, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        dump_trace(trace, fp)


def _parse_layout(raw: object, where: str) -> Layout:
    if not isinstance(raw, list):
        raise TraceFormatError(f"{where}: layout must be a list")
    out = []
    for item in raw:
        try:
            out.append((int(item["place"]), int(item["height"])))
        except (TypeError, KeyError, ValueError) as exc:
            raise TraceFormatError(f"{where}: bad layout entry {item!r}") from exc
    return tuple(out)


def _load_lines(lines: Iterable[str]) -> Trace:
    records = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            records.append((lineno, json.loads(line)))
        except json.JSONDecodeError as exc:
            raise TraceFormatError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
    if not records:
        raise TraceFormatError("empty trace file")

    lineno, head = records[0]
    if not isinstance(head, dict) or head.get("type") != "header":
        raise TraceFormatError("line 1: expected a header record")
    if head.get("version") != FORMAT_VERSION:
        raise TraceFormatError(f"unsupported trace version {head.get('version')!r}")
    try:
        params = GameParams(m=int(head["m"]), n=int(head["n"]), places=int(head["places"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise TraceFormatError(f"line {lineno}: bad header ({exc})") from exc
    header = TraceHeader(
        params, _parse_layout(head.get("initial"), "header"), head.get("timestamp")
    )

    moves: list[Move] = []
    final: Layout | None = None
    for lineno, rec in records[1:]:
        if not isinstance(rec, dict):
            raise TraceFormatError(f"line {lineno}: expected an object")
        if final is not None:
            raise TraceFormatError(f"line {lineno}: record after final line")
        if rec.get("type") == "final":
            final = _parse_layout(rec.get("layout"), f"line {lineno}")
            continue
        if rec.get("step") != len(moves) + 1:
            raise TraceFormatError(
                f"line {lineno}: step {rec.get('step')!r}, expected {len(moves) + 1}"
            )
        try:
            src = parse_position(str(rec["from"]), params)
            dst = parse_position(str(rec["to"]), params)
            moves.append(Move(src, dst))
        except (KeyError, ModelError, ValueError) as exc:
            raise TraceFormatError(f"line {lineno}: {exc}") from exc
    return Trace(header, tuple(moves), final)


def load_trace(fp: IO[str]) -> Trace:
    return _load_lines(fp)


def loads_trace(text: str) -> Trace:
    return _load_lines(text.splitlines())


def read_trace(path: str | Path) -> Trace:
    with open(path, encoding="utf-8") as fp:
        return load_trace(fp)


def make_trace(
    params: GameParams,
    initial: Sequence[tuple[int, int]],
    moves: Sequence[Move],
    final: Sequence[tuple[int, int]] | None = None,
) -> Trace:
    return Trace(
        TraceHeader(params, tuple(initial)),
        tuple(moves),
        None if final is None else tuple(final),
    )
