"""Finite / polynomial / exponential growth of a regular language.

Everything works on the live part of the automaton.  A strongly connected
component carries a cycle if it has more than one state or a self-loop.
The language is infinite iff some live component carries a cycle; it grows
exponentially iff some such component has a state with two outgoing edges
that stay inside the component.  At such a branch state the two cycles
begin with different symbols, so their labels cannot commute.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .automata import Dfa, Word, trim
from .errors import NoBirecurrentState, NotFinite


class GrowthClass(Enum):
    FINITE = "Finite"
    POLYNOMIAL = "Polynomial"
    EXPONENTIAL = "Exponential"


@dataclass(frozen=True)
class Birecurrent:
    state: int
    x0: Word
    x1: Word


@dataclass(frozen=True)
class GrowthReport:
    growth: GrowthClass
    max_word_length: int | None = None
    cycles: list[tuple[Word, Word]] = field(default_factory=list)
    birecurrent: Birecurrent | None = None
    # the trimmed automaton all state indices refer to
    dfa: Dfa | None = field(default=None, compare=False, repr=False)


def _live_graph(a: Dfa) -> tuple[Dfa, list[bool]]:
    t, _ = trim(a)
    live = [q != t.dead for q in range(t.state_count)]
    return t, live


def strongly_connected_components(a: Dfa, live: list[bool]) -> list[int]:
    """Component id per state (-1 for non-live states), iterative Tarjan."""
    m = a.state_count
    comp = [-1] * m
    low = [0] * m
    num = [-1] * m
    on_stack = [False] * m
    stack: list[int] = []
    counter = 0
    n_comp = 0
    for root in range(m):
        if not live[root] or num[root] >= 0:
            continue
        work = [(root, 0)]
        num[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            q, i = work[-1]
            row = a.delta[q]
            if i < len(row):
                work[-1] = (q, i + 1)
                t = row[i]
                if not live[t]:
                    continue
                if num[t] < 0:
                    num[t] = low[t] = counter
                    counter += 1
                    stack.append(t)
                    on_stack[t] = True
                    work.append((t, 0))
                elif on_stack[t]:
                    low[q] = min(low[q], num[t])
                continue
            work.pop()
            if work:
                p = work[-1][0]
                low[p] = min(low[p], low[q])
            if low[q] == num[q]:
                while True:
                    s = stack.pop()
                    on_stack[s] = False
                    comp[s] = n_comp
                    if s == q:
                        break
                n_comp += 1
    return comp


def _inner_edges(a: Dfa, comp: list[int], q: int) -> list[int]:
    """Symbols on edges from ``q`` that stay in its component."""
    c = comp[q]
    return [s for s, t in enumerate(a.delta[q]) if comp[t] == c]


def _shortest_path(a: Dfa, src: int, dst_pred, allowed) -> Word | None:
    """Lexicographically least shortest word leading from ``src`` to a state
    satisfying ``dst_pred``, moving only through ``allowed`` states."""
    if dst_pred(src):
        return ()
    parent: dict[int, tuple[int, int]] = {src: (-1, -1)}
    queue = deque([src])
    while queue:
        q = queue.popleft()
        for s, t in enumerate(a.delta[q]):
            if t in parent or not allowed(t):
                continue
            parent[t] = (q, s)
            if dst_pred(t):
                path = []
                while t != src:
                    t, s2 = parent[t]
                    path.append(s2)
                return tuple(reversed(path))
            queue.append(t)
    return None


def _cycle_via(a: Dfa, comp: list[int], q: int, first: int) -> Word:
    """Shortest cycle at ``q`` starting with symbol ``first``."""
    c = comp[q]
    t = a.delta[q][first]
    rest = _shortest_path(a, t, lambda s: s == q, lambda s: comp[s] == c)
    assert rest is not None
    return (first,) + rest


def _birecurrent(a: Dfa, comp: list[int]) -> Birecurrent | None:
    for q in range(a.state_count):
        if comp[q] < 0:
            continue
        symbols = _inner_edges(a, comp, q)
        if len(symbols) < 2:
            continue
        cycles = sorted((_cycle_via(a, comp, q, s) for s in symbols), key=lambda w: (len(w), w))
        return Birecurrent(q, cycles[0], cycles[1])
    return None


def _has_cycle(a: Dfa, comp: list[int]) -> bool:
    sizes: dict[int, int] = {}
    for c in comp:
        if c >= 0:
            sizes[c] = sizes.get(c, 0) + 1
    for q, c in enumerate(comp):
        if c >= 0 and (sizes[c] > 1 or q in a.delta[q]):
            return True
    return False


def _longest(a: Dfa, live: list[bool]) -> int:
    # live graph is acyclic here; longest path from start by memoized DFS
    best: dict[int, int] = {}
    order: list[int] = []
    seen = set()
    stack = [(a.start, False)]
    while stack:
        q, done = stack.pop()
        if done:
            order.append(q)
            continue
        if q in seen:
            continue
        seen.add(q)
        stack.append((q, True))
        for t in a.delta[q]:
            if live[t] and t not in seen:
                stack.append((t, False))
    for q in order:  # reverse topological order
        tails = [best[t] + 1 for t in a.delta[q] if live[t]]
        if q in a.accepting:
            tails.append(0)
        best[q] = max(tails)
    return best[a.start]


def _simple_cycles(a: Dfa, comp: list[int], live: list[bool]) -> list[tuple[Word, Word]]:
    sizes: dict[int, int] = {}
    for c in comp:
        if c >= 0:
            sizes[c] = sizes.get(c, 0) + 1
    cyclic = {c for q, c in enumerate(comp) if c >= 0 and (sizes[c] > 1 or q in a.delta[q])}
    found: list[tuple[Word, Word]] = []
    for c in sorted(cyclic):
        y = _shortest_path(a, a.start, lambda s: comp[s] == c, lambda s: live[s])
        assert y is not None
        s = a.run(y)
        x = _cycle_via(a, comp, s, _inner_edges(a, comp, s)[0])
        found.append((y, x))
    return found


def _analyse(a: Dfa) -> tuple[Dfa, list[bool], list[int]]:
    t, live = _live_graph(a)
    return t, live, strongly_connected_components(t, live)


def classify(a: Dfa) -> GrowthReport:
    """Growth class of L(a) with its witness.

    Raises :class:`LanguageEmpty` when nothing is accepted.  State indices
    in the report refer to ``report.dfa``, the trimmed automaton.
    """
    t, live, comp = _analyse(a)
    if not _has_cycle(t, comp):
        return GrowthReport(GrowthClass.FINITE, max_word_length=_longest(t, live), dfa=t)
    bi = _birecurrent(t, comp)
    if bi is not None:
        return GrowthReport(GrowthClass.EXPONENTIAL, birecurrent=bi, dfa=t)
    return GrowthReport(GrowthClass.POLYNOMIAL, cycles=_simple_cycles(t, comp, live), dfa=t)


def longest_word(a: Dfa) -> int:
    """Length of the longest accepted word of a finite language."""
    t, live, comp = _analyse(a)
    if _has_cycle(t, comp):
        raise NotFinite("language is infinite")
    return _longest(t, live)


def birecurrent_witness(a: Dfa) -> tuple[int, Word, Word]:
    """A branch state ``q`` of the trimmed automaton and two cycle labels at
    ``q`` beginning with different symbols."""
    t, _, comp = _analyse(a)
    bi = _birecurrent(t, comp)
    if bi is None:
        raise NoBirecurrentState("no state has two distinct cycles; growth is not exponential")
    return bi.state, bi.x0, bi.x1
