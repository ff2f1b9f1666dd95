"""Languages of words avoiding reversed factors.

``L(k, ell)`` is the set of words over {0..k-1} in which no factor of length
at least ``ell`` occurs together with its reversal.  Two independent routes
build its minimal DFA:

* :func:`build_by_intersection` intersects, for every length-``ell`` word
  ``x``, the language of words that miss ``x`` or miss its reversal;
* :func:`build_direct` explores the states (factors seen, recent suffix)
  breadth first and then minimizes.

:func:`avoid_check` and :func:`brute_count` are the DFA-free oracles.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .automata import Dfa, Mode, complement, from_transitions, minimize, pattern_dfa, product
from .errors import CapExceeded, EnumerationTooLarge, InvalidSpec

log = logging.getLogger(__name__)

DEFAULT_CAP = 2**20
DEFAULT_MAX_TERMS = 32
ENUMERATION_BOUND = 2**22


@dataclass(frozen=True)
class AvoidanceSpec:
    k: int
    ell: int
    cap: int = DEFAULT_CAP

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidSpec(f"alphabet size must be >= 1, got {self.k}")
        if self.ell < 2:
            raise InvalidSpec(f"ell must be >= 2, got {self.ell}")
        if self.k**self.ell > self.cap:
            raise CapExceeded(f"k^ell = {self.k ** self.ell} exceeds cap {self.cap}")


def _check_ell(ell: int) -> None:
    if ell < 2:
        raise InvalidSpec(f"ell must be >= 2, got {ell}")


def avoid_check(w: Sequence[int], ell: int) -> bool:
    """True iff no factor of ``w`` of length >= ell has its reversal in ``w``.

    A long factor and its reversal always contain a length-``ell`` factor
    and its reversal, so only length-``ell`` windows are inspected.
    """
    _check_ell(ell)
    w = tuple(w)
    factors = {w[i : i + ell] for i in range(len(w) - ell + 1)}
    return not any(f[::-1] in factors for f in factors)


def avoid_check_naive(w: Sequence[int], ell: int) -> bool:
    """Same predicate as :func:`avoid_check`, checking every length >= ell."""
    _check_ell(ell)
    w = tuple(w)
    n = len(w)
    factors = {w[i:j] for i in range(n) for j in range(i + ell, n + 1)}
    return not any(f[::-1] in factors for f in factors)


def intersection_terms(spec: AvoidanceSpec) -> list[tuple[int, ...]]:
    """Words ``x`` of length ell with ``x <= reversed(x)``, in lexicographic order."""
    return [
        x
        for x in itertools.product(range(spec.k), repeat=spec.ell)
        if x <= x[::-1]
    ]


def _term(x: tuple[int, ...], k: int) -> Dfa:
    """Minimal DFA for words that miss ``x`` or miss its reversal."""
    rx = x[::-1]
    if x == rx:
        return minimize(complement(pattern_dfa(x, k)))
    return minimize(
        product(complement(pattern_dfa(x, k)), complement(pattern_dfa(rx, k)), Mode.OR)
    )


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("REVFACTOR_THREADS", "1")))
    except ValueError:
        return 1


def build_by_intersection(spec: AvoidanceSpec, max_terms: int = DEFAULT_MAX_TERMS) -> Dfa:
    """Minimal DFA of L(k, ell) as an iterated intersection of per-word terms."""
    terms = intersection_terms(spec)
    if len(terms) > max_terms:
        raise CapExceeded(
            f"{len(terms)} intersection terms exceed the limit of {max_terms}; "
            f"use the direct construction for k={spec.k}, ell={spec.ell}"
        )
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            dfas = list(pool.map(lambda x: _term(x, spec.k), terms))
    else:
        dfas = [_term(x, spec.k) for x in terms]

    acc = dfas[0]
    for x, t in zip(terms[1:], dfas[1:]):
        acc = minimize(product(acc, t, Mode.AND))
        log.debug("after term %s: %d states", "".join(map(str, x)), acc.state_count)
    return acc


def build_direct(
    spec: AvoidanceSpec,
    progress: Callable[[int], None] | None = None,
) -> tuple[Dfa, int]:
    """Breadth-first construction over (factors seen, last ell-1 symbols).

    Returns the minimized DFA and the number of live states reached before
    minimization.  ``progress`` is called with the number of states expanded
    every 10000 states.
    """
    k, ell = spec.k, spec.ell
    n_codes = k**ell
    window = k ** (ell - 1)
    # bit of the reversed code for every factor code
    forbid = [0] * n_codes
    for code in range(n_codes):
        digits = [(code // k**i) % k for i in range(ell)]
        rev = 0
        for d in digits:
            rev = rev * k + d
        forbid[code] = 1 << rev

    start = (0, 0, 0)  # (seen bitmask, suffix length, suffix value)
    index = {start: 0}
    order = [start]
    delta: list[list[int]] = []
    needs_dead = False
    i = 0
    while i < len(order):
        seen, slen, sval = order[i]
        row = []
        for a in range(k):
            if slen < ell - 1:
                nxt = (seen, slen + 1, sval * k + a)
            else:
                code = sval * k + a
                if (seen | (1 << code)) & forbid[code]:
                    needs_dead = True
                    row.append(-1)
                    continue
                nxt = (seen | (1 << code), slen, code % window)
            j = index.get(nxt)
            if j is None:
                j = len(order)
                index[nxt] = j
                order.append(nxt)
            row.append(j)
        delta.append(row)
        i += 1
        if progress is not None and i % 10000 == 0:
            progress(i)

    live = len(order)
    accepting = range(live)
    if needs_dead:
        delta = [[live if t < 0 else t for t in row] for row in delta]
        delta.append([live] * k)
    raw = from_transitions(k, 0, delta, accepting)
    if progress is not None:
        progress(live)
    log.debug("direct construction: %d live states before minimization", live)
    return minimize(raw), live


def build(spec: AvoidanceSpec, method: str = "direct") -> Dfa:
    if method == "direct":
        return build_direct(spec)[0]
    if method == "intersect":
        return build_by_intersection(spec)
    raise InvalidSpec(f"unknown method {method!r}")


def _words_passing(k: int, ell: int, n: int) -> Iterator[tuple[int, ...]]:
    # failing is inherited by every extension, so failing prefixes are cut
    stack: list[tuple[int, ...]] = [()]
    while stack:
        w = stack.pop()
        if len(w) == n:
            yield w
            continue
        for a in range(k - 1, -1, -1):
            v = w + (a,)
            if avoid_check(v, ell):
                stack.append(v)


def brute_count(
    spec: AvoidanceSpec,
    n: int,
    prune: bool = True,
    bound: int = ENUMERATION_BOUND,
) -> int:
    """Number of length-``n`` words passing :func:`avoid_check`.

    With ``prune`` the enumeration skips extensions of failing prefixes;
    otherwise every word of ``Σ_k^n`` is tested.
    """
    k, ell = spec.k, spec.ell
    if k**n > bound:
        raise EnumerationTooLarge(f"{k}^{n} words exceed the enumeration bound {bound}")
    if prune:
        return sum(1 for _ in _words_passing(k, ell, n))
    return sum(1 for w in itertools.product(range(k), repeat=n) if avoid_check(w, ell))
