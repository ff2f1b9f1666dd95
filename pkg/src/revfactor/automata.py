"""Complete deterministic automata over the alphabet {0, ..., k-1}.

A :class:`Dfa` is an immutable value.  Every construction here returns a
complete automaton (``delta`` is total).  When a unique non-accepting
absorbing state exists it is recorded in ``dead`` so that "live" views can
be derived without recomputing reachability.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import AlphabetMismatch, InvalidAutomaton, InvalidPattern, LanguageEmpty

Word = tuple[int, ...]


def word(text: str | Iterable[int]) -> Word:
    """Parse ``"0120"`` (or any iterable of ints) into a word tuple."""
    if isinstance(text, str):
        return tuple(int(c) for c in text)
    return tuple(text)


def word_str(w: Sequence[int]) -> str:
    """Inverse of :func:`word`; symbols above 9 are comma separated."""
    if all(0 <= a < 10 for a in w):
        return "".join(map(str, w))
    return ",".join(map(str, w))


@dataclass(frozen=True)
class Dfa:
    alphabet_size: int
    start: int
    delta: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]
    dead: int | None = None

    def __post_init__(self) -> None:
        k = self.alphabet_size
        m = len(self.delta)
        if k < 1:
            raise InvalidAutomaton(f"alphabet size must be >= 1, got {k}")
        if m < 1:
            raise InvalidAutomaton("automaton needs at least one state")
        if not 0 <= self.start < m:
            raise InvalidAutomaton(f"start state {self.start} out of range")
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise InvalidAutomaton(f"state {q} has {len(row)} transitions, expected {k}")
            for t in row:
                if not 0 <= t < m:
                    raise InvalidAutomaton(f"transition {q} -> {t} out of range")
        for q in self.accepting:
            if not 0 <= q < m:
                raise InvalidAutomaton(f"accepting state {q} out of range")
        if self.dead is not None:
            d = self.dead
            if not 0 <= d < m or d in self.accepting or any(t != d for t in self.delta[d]):
                raise InvalidAutomaton(f"state {d} is not a non-accepting absorbing state")

    @property
    def state_count(self) -> int:
        return len(self.delta)

    @property
    def live_count(self) -> int:
        return len(self.live_states())

    def run(self, w: Iterable[int], state: int | None = None) -> int:
        """State reached from ``state`` (default: start) after reading ``w``."""
        q = self.start if state is None else state
        k = self.alphabet_size
        delta = self.delta
        for a in w:
            if not 0 <= a < k:
                raise AlphabetMismatch(f"symbol {a} not in alphabet of size {k}")
            q = delta[q][a]
        return q

    def accepts(self, w: Iterable[int]) -> bool:
        return self.run(w) in self.accepting

    def reachable(self) -> frozenset[int]:
        seen = {self.start}
        stack = [self.start]
        while stack:
            q = stack.pop()
            for t in self.delta[q]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def coreachable(self) -> frozenset[int]:
        """States from which some accepting state can be reached."""
        preds: list[list[int]] = [[] for _ in self.delta]
        for q, row in enumerate(self.delta):
            for t in row:
                preds[t].append(q)
        seen = set(self.accepting)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for p in preds[q]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    def live_states(self) -> frozenset[int]:
        return self.reachable() & self.coreachable()


def _structural_dead(delta: Sequence[Sequence[int]], accepting: frozenset[int]) -> int | None:
    for q, row in enumerate(delta):
        if q not in accepting and all(t == q for t in row):
            return q
    return None


def _make(k: int, start: int, delta: Sequence[Sequence[int]], accepting: Iterable[int]) -> Dfa:
    rows = tuple(tuple(r) for r in delta)
    acc = frozenset(accepting)
    return Dfa(k, start, rows, acc, _structural_dead(rows, acc))


def from_transitions(
    k: int,
    start: int,
    delta: Sequence[Sequence[int]],
    accepting: Iterable[int],
) -> Dfa:
    """Build a checked :class:`Dfa`, detecting the dead state structurally."""
    return _make(k, start, delta, accepting)


def pattern_dfa(x: Sequence[int], k: int) -> Dfa:
    """Recognizer for words containing ``x`` as a factor.

    State ``j`` means the longest suffix read so far that is a prefix of
    ``x`` has length ``j``; state ``len(x)`` is accepting and absorbing.
    """
    x = tuple(x)
    m = len(x)
    if m == 0:
        raise InvalidPattern("pattern must be nonempty")
    for a in x:
        if not 0 <= a < k:
            raise AlphabetMismatch(f"pattern symbol {a} not in alphabet of size {k}")
    delta = [[0] * k for _ in range(m + 1)]
    delta[0][x[0]] = 1
    border = 0
    for j in range(1, m):
        delta[j] = list(delta[border])
        delta[j][x[j]] = j + 1
        border = delta[border][x[j]]
    delta[m] = [m] * k
    return _make(k, 0, delta, [m])


class Mode(Enum):
    AND = "and"
    OR = "or"


def product(a: Dfa, b: Dfa, mode: Mode = Mode.AND) -> Dfa:
    """Reachable part of the product automaton, numbered in BFS order."""
    if a.alphabet_size != b.alphabet_size:
        raise AlphabetMismatch(
            f"alphabets differ: {a.alphabet_size} vs {b.alphabet_size}"
        )
    k = a.alphabet_size
    da, db = a.delta, b.delta
    fa, fb = a.accepting, b.accepting
    start = (a.start, b.start)
    index = {start: 0}
    order = [start]
    delta: list[list[int]] = []
    accepting = []
    i = 0
    while i < len(order):
        p, q = order[i]
        if mode is Mode.AND:
            ok = p in fa and q in fb
        else:
            ok = p in fa or q in fb
        if ok:
            accepting.append(i)
        rp, rq = da[p], db[q]
        row = []
        for s in range(k):
            pair = (rp[s], rq[s])
            j = index.get(pair)
            if j is None:
                j = len(order)
                index[pair] = j
                order.append(pair)
            row.append(j)
        delta.append(row)
        i += 1
    return _make(k, 0, delta, accepting)


def complement(a: Dfa) -> Dfa:
    accepting = frozenset(range(a.state_count)) - a.accepting
    return _make(a.alphabet_size, a.start, a.delta, accepting)


def canonicalize(a: Dfa) -> Dfa:
    """Renumber reachable states in BFS order (symbols ascending).

    Unreachable states are dropped, so two automata have equal canonical
    forms exactly when their reachable parts are isomorphic.
    """
    index = {a.start: 0}
    order = [a.start]
    i = 0
    while i < len(order):
        for t in a.delta[order[i]]:
            if t not in index:
                index[t] = len(order)
                order.append(t)
        i += 1
    delta = [[index[t] for t in a.delta[q]] for q in order]
    accepting = [index[q] for q in order if q in a.accepting]
    return _make(a.alphabet_size, 0, delta, accepting)


def _hopcroft(delta: Sequence[Sequence[int]], accepting: frozenset[int], k: int) -> list[int]:
    """Return the coarsest stable partition as a block id per state."""
    m = len(delta)
    preimage: list[list[list[int]]] = [[[] for _ in range(m)] for _ in range(k)]
    for q, row in enumerate(delta):
        for a, t in enumerate(row):
            preimage[a][t].append(q)

    finals = set(accepting)
    others = set(range(m)) - finals
    blocks: list[set[int]] = [b for b in (finals, others) if b]
    block_of = [0] * m
    for i, b in enumerate(blocks):
        for q in b:
            block_of[q] = i
    if len(blocks) < 2:
        return block_of

    work = [0 if len(blocks[0]) <= len(blocks[1]) else 1]
    in_work = set(work)
    while work:
        b = work.pop()
        in_work.discard(b)
        splitter = tuple(blocks[b])
        for a in range(k):
            pre = preimage[a]
            hit: dict[int, list[int]] = {}
            for q in splitter:
                for p in pre[q]:
                    y = block_of[p]
                    members = hit.get(y)
                    if members is None:
                        hit[y] = [p]
                    else:
                        members.append(p)
            for y, members in hit.items():
                old = blocks[y]
                if len(members) == len(old):
                    continue
                new = set(members)
                old -= new
                z = len(blocks)
                blocks.append(new)
                for p in members:
                    block_of[p] = z
                if y in in_work or len(new) <= len(old):
                    work.append(z)
                    in_work.add(z)
                else:
                    work.append(y)
                    in_work.add(y)
    return block_of


def minimize(a: Dfa) -> Dfa:
    """Minimal complete DFA for L(a), canonically numbered (Hopcroft)."""
    a = canonicalize(a)
    block_of = _hopcroft(a.delta, a.accepting, a.alphabet_size)
    n_blocks = max(block_of) + 1
    rep = [-1] * n_blocks
    for q, b in enumerate(block_of):
        if rep[b] < 0:
            rep[b] = q
    delta = [[block_of[t] for t in a.delta[rep[b]]] for b in range(n_blocks)]
    accepting = {block_of[q] for q in a.accepting}
    return canonicalize(_make(a.alphabet_size, block_of[a.start], delta, accepting))


def trim(a: Dfa) -> tuple[Dfa, int]:
    """Merge every non-live state into one explicit dead state.

    Returns the canonical result together with its number of live states
    (the dead state is not counted).
    """
    live = a.live_states()
    if not live:
        raise LanguageEmpty("no accepting state is reachable")
    ordered = sorted(live)
    index = {q: i for i, q in enumerate(ordered)}
    dead = len(ordered)
    delta = [[index.get(t, dead) for t in a.delta[q]] for q in ordered]
    if any(dead in row for row in delta):
        delta.append([dead] * a.alphabet_size)
    accepting = [index[q] for q in ordered if q in a.accepting]
    trimmed = canonicalize(_make(a.alphabet_size, index[a.start], delta, accepting))
    return trimmed, len(ordered)


def accepts(a: Dfa, w: Iterable[int]) -> bool:
    return a.accepts(w)


def equivalent(a: Dfa, b: Dfa) -> bool:
    """Language equality, decided by comparing minimal canonical forms."""
    return a.alphabet_size == b.alphabet_size and minimize(a) == minimize(b)
