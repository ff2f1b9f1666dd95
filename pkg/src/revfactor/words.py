"""Infinite words through finite prefixes.

Aperiodic witnesses are images of the Thue-Morse word under a morphism
``0 -> x0, 1 -> x1`` whose images label two cycles at the same state and do
not commute.  Such an image is never ultimately periodic; here that can
only be spot-checked through :func:`min_period` on a long prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automata import Dfa, Word
from .avoidance import AvoidanceSpec, avoid_check, build_direct
from .errors import (
    AlphabetMismatch,
    EmptyWord,
    InvalidPattern,
    NoInfinitePath,
    NotExponential,
    WitnessInvalid,
)
from .growth import GrowthClass, _analyse, _cycle_via, _has_cycle, _inner_edges, _shortest_path, classify

DEFAULT_PERIOD_FLOOR = 100


def thue_morse(n: int) -> Word:
    """First ``n`` symbols of the Thue-Morse word 0110100110010110..."""
    return tuple(bin(i).count("1") & 1 for i in range(n))


@dataclass(frozen=True)
class Morphism:
    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if any(len(w) == 0 for w in self.images):
            raise InvalidPattern("morphism images must be nonempty")

    @property
    def k_src(self) -> int:
        return len(self.images)

    def __call__(self, w: Sequence[int]) -> Word:
        return apply_morphism(self, w)


def apply_morphism(m: Morphism, w: Sequence[int]) -> Word:
    out: list[int] = []
    for a in w:
        if not 0 <= a < m.k_src:
            raise AlphabetMismatch(f"symbol {a} has no image under a {m.k_src}-symbol morphism")
        out.extend(m.images[a])
    return tuple(out)


def image_prefix(m: Morphism, source: Sequence[int], n: int) -> Word:
    """First ``n`` symbols of the image of ``source``, which must be long enough."""
    out: list[int] = []
    for a in source:
        if len(out) >= n:
            break
        out.extend(m.images[a])
    if len(out) < n:
        raise ValueError("source word too short for the requested prefix")
    return tuple(out[:n])


def min_period(w: Sequence[int]) -> int:
    """Smallest ``p >= 1`` with ``w[i] == w[i + p]`` wherever both exist."""
    n = len(w)
    if n == 0:
        raise EmptyWord("period of the empty word is undefined")
    border = [0] * n
    k = 0
    for i in range(1, n):
        while k and w[i] != w[k]:
            k = border[k - 1]
        if w[i] == w[k]:
            k += 1
        border[i] = k
    return n - border[-1]


@dataclass(frozen=True)
class EventualPeriodicWord:
    """The infinite word ``preperiod period period ...``."""

    preperiod: Word
    period: Word

    def __post_init__(self) -> None:
        if not self.period:
            raise EmptyWord("period must be nonempty")

    def prefix(self, n: int) -> Word:
        out = list(self.preperiod[:n])
        while len(out) < n:
            out.extend(self.period)
        return tuple(out[:n])


def _thue_morse_image(x0: Word, x1: Word, n: int) -> Word:
    m = Morphism((x0, x1))
    return image_prefix(m, thue_morse(n // min(len(x0), len(x1)) + 1), n)


def aperiodic_word(
    a: Dfa,
    n: int,
    period_floor: int | None = DEFAULT_PERIOD_FLOOR,
) -> Word:
    """Length-``n`` factor of an accepted infinite aperiodic path of ``a``.

    The word is the image of Thue-Morse under the two cycle labels of a
    birecurrent state; reaching that state from the start and then reading
    the word is verified to stay accepted.
    """
    report = classify(a)
    if report.growth is not GrowthClass.EXPONENTIAL:
        raise NotExponential(f"language has {report.growth.value} growth")
    assert report.birecurrent is not None and report.dfa is not None
    bi = report.birecurrent
    t = report.dfa
    w = _thue_morse_image(bi.x0, bi.x1, n)
    entry = _shortest_path(t, t.start, lambda s: s == bi.state, lambda s: s != t.dead)
    if entry is None or not t.accepts(entry + w):
        raise WitnessInvalid("aperiodic witness leaves the language")
    _check_period(w, period_floor)
    return w


def _check_period(w: Word, floor: int | None) -> None:
    # the floor is only meaningful for prefixes much longer than itself
    if floor is not None and len(w) >= 10 * floor and min_period(w) <= floor:
        raise WitnessInvalid(f"witness prefix has period {min_period(w)} <= {floor}")


def aperiodic_witness(
    spec: AvoidanceSpec,
    n: int,
    images: tuple[Sequence[int], Sequence[int]] | None = None,
    dfa: Dfa | None = None,
    period_floor: int | None = DEFAULT_PERIOD_FLOOR,
) -> Word:
    """Length-``n`` prefix of an aperiodic infinite word avoiding reversed
    factors of length >= ``spec.ell``.

    By default the morphism comes from a birecurrent state of the minimal
    automaton (``dfa`` if given, otherwise built directly).  ``images``
    overrides it with an explicit pair of noncommuting words.  The result is
    always checked with :func:`avoid_check`.
    """
    if images is None:
        if dfa is None:
            dfa = build_direct(spec)[0]
        w = aperiodic_word(dfa, n, period_floor)
    else:
        x0, x1 = (tuple(x) for x in images)
        if x0 + x1 == x1 + x0:
            raise InvalidPattern("morphism images commute; the image would be periodic")
        w = _thue_morse_image(x0, x1, n)
        _check_period(w, period_floor)
    if not avoid_check(w, spec.ell):
        raise WitnessInvalid("witness contains a factor together with its reversal")
    return w


def periodic_witness(a: Dfa, verify_factor: int = 4) -> EventualPeriodicWord:
    """An ultimately periodic infinite path ``y x x x ...`` through ``a``.

    ``y`` is the least shortest word reaching a state on a cycle, and ``x``
    the least shortest cycle at that state.  Every prefix up to
    ``verify_factor * (|y| + |x|)`` symbols is checked to be accepted.
    """
    t, live, comp = _analyse(a)
    if not _has_cycle(t, comp):
        raise NoInfinitePath("the language is finite")
    sizes: dict[int, int] = {}
    for c in comp:
        if c >= 0:
            sizes[c] = sizes.get(c, 0) + 1

    def on_cycle(q: int) -> bool:
        return comp[q] >= 0 and (sizes[comp[q]] > 1 or q in t.delta[q])

    y = _shortest_path(t, t.start, on_cycle, lambda q: live[q])
    assert y is not None
    s = t.run(y)
    x = min((_cycle_via(t, comp, s, b) for b in _inner_edges(t, comp, s)), key=lambda w: (len(w), w))
    result = EventualPeriodicWord(y, x)
    q = t.start
    for i, b in enumerate(result.prefix(verify_factor * (len(y) + len(x)))):
        q = t.delta[q][b]
        if q not in t.accepting:
            raise WitnessInvalid(f"prefix of length {i + 1} of the periodic witness is rejected")
    return result
