"""Text formats: Grail automata, GraphViz DOT, and key=value reports.

Grail documents are line oriented, with whitespace separated tokens::

    (START) |- 0
    0 1 2          transition: from-state, symbol, to-state
    2 -| (FINAL)

Input lines may come in any order; output is sorted so that a given
automaton always serializes to the same bytes.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum

from .automata import Dfa, from_transitions
from .errors import MissingStart, NondeterministicInput, ParseError


@dataclass(frozen=True)
class GrailDocument:
    start_lines: tuple[int, ...]
    transition_lines: tuple[tuple[int, int, int], ...]
    final_lines: tuple[int, ...]


def _hidden(a: Dfa, include_dead: bool) -> int | None:
    return None if include_dead else a.dead


def write_grail(a: Dfa, include_dead: bool = True) -> str:
    """Grail text for ``a``; without ``include_dead`` every line mentioning the
    dead state is dropped (the start line is always kept)."""
    dead = _hidden(a, include_dead)
    lines = [f"(START) |- {a.start}"]
    for p, row in enumerate(a.delta):
        if p == dead:
            continue
        for s, q in enumerate(row):
            if q != dead:
                lines.append(f"{p} {s} {q}")
    lines.extend(f"{q} -| (FINAL)" for q in sorted(a.accepting))
    return "\n".join(lines) + "\n"


def _int(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise ParseError(f"line {lineno}: expected a non-negative integer, got {token!r}")
    return int(token)


def parse_grail(text: str) -> GrailDocument:
    starts: list[int] = []
    transitions: list[tuple[int, int, int]] = []
    finals: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) == 3 and tokens[0] == "(START)" and tokens[1] == "|-":
            starts.append(_int(tokens[2], lineno))
        elif len(tokens) == 3 and tokens[1] == "-|" and tokens[2] == "(FINAL)":
            finals.append(_int(tokens[0], lineno))
        elif len(tokens) == 3:
            p, s, q = (_int(t, lineno) for t in tokens)
            transitions.append((p, s, q))
        else:
            raise ParseError(f"line {lineno}: unrecognized line {line.strip()!r}")
    if len(starts) != 1:
        raise MissingStart(f"expected exactly one (START) line, found {len(starts)}")
    return GrailDocument(tuple(starts), tuple(transitions), tuple(finals))


def read_grail(text: str, alphabet_size: int | None = None) -> Dfa:
    """Parse Grail text into a complete DFA.

    State ids are mapped to ``0..m-1`` in increasing order.  Missing
    transitions go to a fresh dead state appended after them.  When
    ``alphabet_size`` is omitted it is the largest symbol plus one.
    """
    doc = parse_grail(text)
    k = alphabet_size
    if k is None:
        k = max((s for _, s, _ in doc.transition_lines), default=0) + 1
    ids = set(doc.start_lines) | set(doc.final_lines)
    table: dict[tuple[int, int], int] = {}
    for p, s, q in doc.transition_lines:
        if s >= k:
            raise ParseError(f"symbol {s} outside alphabet of size {k}")
        prev = table.setdefault((p, s), q)
        if prev != q:
            raise NondeterministicInput(f"state {p} has transitions on {s} to {prev} and {q}")
        ids.update((p, q))
    index = {q: i for i, q in enumerate(sorted(ids))}
    m = len(index)
    delta = [[table.get((q, s), -1) for s in range(k)] for q in sorted(ids)]
    partial = any(t < 0 for row in delta for t in row)
    rows = [[index[t] if t >= 0 else m for t in row] for row in delta]
    if partial:
        rows.append([m] * k)
    return from_transitions(k, index[doc.start_lines[0]], rows, (index[q] for q in doc.final_lines))


def write_dot(a: Dfa, include_dead: bool = False) -> str:
    """GraphViz digraph; parallel edges are merged into one comma-labelled edge."""
    dead = _hidden(a, include_dead)
    lines = ["digraph dfa {", "  rankdir=LR;", "  node [shape=circle];"]
    for q in range(a.state_count):
        if q == dead:
            continue
        attrs = []
        if q in a.accepting:
            attrs.append("shape=doublecircle")
        if q == a.start:
            attrs.append('xlabel="start"')
        lines.append(f"  {q}" + (f" [{', '.join(attrs)}];" if attrs else ";"))
    for p, row in enumerate(a.delta):
        if p == dead:
            continue
        merged: dict[int, list[int]] = {}
        for s, q in enumerate(row):
            if q != dead:
                merged.setdefault(q, []).append(s)
        for q in sorted(merged):
            label = ",".join(map(str, merged[q]))
            lines.append(f'  {p} -> {q} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


REPORT_KEYS = (
    "k",
    "ell",
    "method",
    "states_total",
    "states_live",
    "states_pre_minimization",
    "growth_class",
    "longest_word",
    "recurrence_order",
    "recurrence_coeffs",
    "valid_from",
    "alpha",
    "alpha_digits",
    "growth_constant",
    "growth_constant_uncertainty",
    "witness_kind",
    "witness",
)


def _format_value(v: object) -> str:
    if isinstance(v, Enum):
        return str(v.value)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(_format_value(x) for x in v)
    if isinstance(v, Decimal):
        return format(v, "f")
    return str(v)


def write_report(results: Mapping[str, object]) -> str:
    """``key=value`` lines in a fixed key order; absent or ``None`` keys are skipped."""
    unknown = set(results) - set(REPORT_KEYS)
    if unknown:
        raise ValueError(f"unknown report keys: {sorted(unknown)}")
    lines = [
        f"{key}={_format_value(results[key])}"
        for key in REPORT_KEYS
        if results.get(key) is not None
    ]
    return "\n".join(lines) + "\n"


def read_report(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if line.strip():
            key, _, value = line.partition("=")
            out[key] = value
    return out
