"""Exact word counts, minimal linear recurrences and growth rates.

Counts come from iterating the state-occupancy vector of the live part of
the automaton with Python integers.  Recurrences are synthesized modulo
several word-sized primes (Berlekamp-Massey), lifted by Chinese
remaindering and then checked exactly against every available term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .automata import Dfa, trim
from .errors import (
    InsufficientTerms,
    LanguageEmpty,
    NoRealRootAboveOne,
    NoRecurrenceFound,
    NotConverged,
    RootCrossCheckFailed,
)

# 62-bit primes (2**62 - c); tests confirm primality
PRIMES = tuple(
    2**62 - c for c in (57, 87, 117, 143, 153, 167, 171, 195, 203, 273, 287, 317)
)


@dataclass(frozen=True)
class IntegerSequence:
    terms: tuple[int, ...]
    source: str = ""

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, n: int) -> int:
        return self.terms[n]


@dataclass(frozen=True)
class LinearRecurrence:
    """``r(n) = sum(coeffs[i-1] * r(n-i) for i in 1..order)`` for ``n >= valid_from``."""

    coeffs: tuple[int | Fraction, ...]
    valid_from: int
    confirmations: int = 0  # primes on which the order was observed as minimal

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def characteristic(self) -> list[int]:
        """Integer coefficients of the characteristic polynomial, highest degree first."""
        poly = [Fraction(1)] + [-Fraction(c) for c in self.coeffs]
        scale = 1
        for c in poly:
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
        return [int(c * scale) for c in poly]

    def holds_at(self, terms: Sequence[int], n: int) -> bool:
        if n < self.order:
            return False
        return terms[n] == sum(c * terms[n - i - 1] for i, c in enumerate(self.coeffs))

    def holds_on(self, terms: Sequence[int], start: int | None = None) -> bool:
        lo = self.valid_from if start is None else start
        return all(self.holds_at(terms, n) for n in range(max(lo, self.order), len(terms)))

    def extend(self, terms: Sequence[int], n: int) -> list[int]:
        """Continue ``terms`` to length ``n`` using the recurrence."""
        out = list(terms)
        while len(out) < n:
            out.append(sum(c * out[-i - 1] for i, c in enumerate(self.coeffs)))
        return out


def count_sequence(a: Dfa, n_max: int) -> IntegerSequence:
    """``r(0..n_max)``, the number of accepted words of each length."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    try:
        t, _ = trim(a)
    except LanguageEmpty:
        return IntegerSequence((0,) * (n_max + 1), "empty language")
    live = [q for q in range(t.state_count) if q != t.dead]
    pos = {q: i for i, q in enumerate(live)}
    rows: list[list[tuple[int, int]]] = []
    for q in live:
        mult: dict[int, int] = {}
        for s in t.delta[q]:
            if s in pos:
                mult[pos[s]] = mult.get(pos[s], 0) + 1
        rows.append(sorted(mult.items()))
    final = [pos[q] for q in live if q in t.accepting]

    occ = [0] * len(live)
    occ[pos[t.start]] = 1
    terms = []
    for n in range(n_max + 1):
        terms.append(sum(occ[i] for i in final))
        if n == n_max:
            break
        nxt = [0] * len(live)
        for i, v in enumerate(occ):
            if v:
                for j, m in rows[i]:
                    nxt[j] += v * m
        occ = nxt
    return IntegerSequence(tuple(terms), "dfa")


def berlekamp_massey(seq: Sequence[int], p: int) -> list[int]:
    """Shortest connection polynomial ``C`` (``C[0] = 1``) of ``seq`` mod ``p``.

    ``sum(C[i] * seq[n - i]) == 0 (mod p)`` for all ``n >= len(C) - 1``.
    """
    s = [x % p for x in seq]
    c = [1]
    b = [1]
    length = 0
    shift = 1
    last = 1
    for n, x in enumerate(s):
        d = x
        for i in range(1, length + 1):
            d += c[i] * s[n - i]
        d %= p
        if d == 0:
            shift += 1
            continue
        coef = d * pow(last, p - 2, p) % p
        old = list(c)
        need = len(b) + shift
        if len(c) < need:
            c.extend([0] * (need - len(c)))
        for i, bi in enumerate(b):
            c[i + shift] = (c[i + shift] - coef * bi) % p
        if 2 * length <= n:
            length = n + 1 - length
            b = old
            last = d
            shift = 1
        else:
            shift += 1
    c = c[: length + 1] + [0] * max(0, length + 1 - len(c))
    return c


def _crt(residues: Sequence[int], primes: Sequence[int]) -> tuple[int, int]:
    x, mod = 0, 1
    for r, p in zip(residues, primes):
        t = (r - x) * pow(mod, -1, p) % p
        x += mod * t
        mod *= p
    return x, mod


def _symmetric(x: int, mod: int) -> int:
    return x - mod if x > mod // 2 else x


def rational_reconstruction(x: int, mod: int) -> Fraction | None:
    """Fraction ``u/v`` with ``u = x v (mod mod)`` and ``|u|, v <= sqrt(mod/2)``."""
    bound = math.isqrt(mod // 2)
    r0, r1 = mod, x % mod
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _verify(terms: Sequence[int], coeffs: Sequence[int | Fraction], start: int) -> bool:
    d = len(coeffs)
    for n in range(max(start, d), len(terms)):
        if terms[n] != sum(c * terms[n - i - 1] for i, c in enumerate(coeffs)):
            return False
    return True


def find_recurrence(
    seq: IntegerSequence | Sequence[int],
    tail_start: int = 0,
    max_order: int | None = None,
    n_primes: int = 4,
    slack: int = 4,
) -> LinearRecurrence:
    """Minimal-order integer recurrence satisfied by ``seq[tail_start:]``.

    The returned ``valid_from`` starts at ``tail_start + order`` and is then
    pushed back as long as the recurrence keeps holding.
    """
    terms = tuple(seq.terms if isinstance(seq, IntegerSequence) else seq)
    tail = terms[tail_start:]
    if max_order is not None and len(tail) < 2 * max_order + slack:
        raise InsufficientTerms(
            f"{len(tail)} tail terms cannot certify order up to {max_order}"
        )
    if len(tail) < slack + 2:
        raise InsufficientTerms(f"only {len(tail)} tail terms")

    used = list(PRIMES[:n_primes])
    k = 0
    while True:
        polys = [berlekamp_massey(tail, p) for p in used]
        order = max(len(c) - 1 for c in polys)
        if 2 * order + slack > len(tail) or (max_order is not None and order > max_order):
            raise NoRecurrenceFound(
                f"recurrence order would be at least {order} with {len(tail)} tail terms"
            )
        good = [(p, c) for p, c in zip(used, polys) if len(c) - 1 == order]
        primes = [p for p, _ in good]
        coeffs: list[int | Fraction] = []
        rational: list[Fraction | None] = []
        for i in range(1, order + 1):
            x, mod = _crt([(-c[i]) % p for p, c in good], primes)
            coeffs.append(_symmetric(x, mod))
            rational.append(rational_reconstruction(x, mod))
        if _verify(tail, coeffs, 0):
            break
        if all(r is not None for r in rational):
            frac = [r for r in rational if r is not None]
            if _verify(tail, frac, 0):
                coeffs = [int(r) if r.denominator == 1 else r for r in frac]
                break
        k += 1
        extra = PRIMES[n_primes + (k - 1) * n_primes : n_primes + k * n_primes]
        if not extra:
            raise NoRecurrenceFound("coefficient reconstruction failed on every prime set")
        used.extend(extra)

    start = tail_start + order
    while start - 1 >= order and terms[start - 1] == sum(
        c * terms[start - 2 - i] for i, c in enumerate(coeffs)
    ):
        start -= 1
    return LinearRecurrence(tuple(coeffs), start, confirmations=len(good))


def _horner_sign(poly: Sequence[int], x: Fraction) -> int:
    # sign of v^d * P(u/v), v > 0
    u, v = x.numerator, x.denominator
    acc = poly[0]
    vp = 1
    for c in poly[1:]:
        vp *= v
        acc = acc * u + c * vp
    return (acc > 0) - (acc < 0)


def _deflate_at_one(poly: list[int]) -> list[int]:
    while len(poly) > 1 and sum(poly) == 0:
        out = [poly[0]]
        for c in poly[1:-1]:
            out.append(out[-1] + c)
        poly = out
    return poly


def _fujiwara_bound(poly: Sequence[int]) -> Fraction:
    lead = abs(poly[0])
    d = len(poly) - 1
    best = 0.0
    for i, c in enumerate(poly[1:], start=1):
        if c:
            scale = 2 if i == d else 1
            best = max(best, (abs(c) / (lead * scale)) ** (1.0 / i))
    return Fraction(math.ceil(2 * best * 256) + 1, 256)


def root_bracket(
    poly: Sequence[int],
    precision: int = 30,
    bound: int | Fraction | None = None,
) -> tuple[Fraction, Fraction]:
    """Interval ``(lo, hi)`` of width below ``10**-(precision + 2)`` around the
    largest real root above 1 of the integer polynomial ``poly``.

    The grid ``bound, bound - 2**-8, ...`` is scanned downward for the first
    sign change, which is then bisected with exact rational arithmetic.
    """
    p = _deflate_at_one([int(c) for c in poly])
    if len(p) < 2:
        raise NoRealRootAboveOne("polynomial has no root other than 1")
    hi = Fraction(bound) if bound is not None else _fujiwara_bound(p)
    if hi <= 1:
        raise NoRealRootAboveOne(f"search bound {hi} is not above 1")
    step = Fraction(1, 256)
    s_hi = _horner_sign(p, hi)
    if s_hi == 0:
        return hi, hi
    while True:
        lo = max(hi - step, Fraction(1))
        s_lo = _horner_sign(p, lo)  # nonzero at 1 after deflation
        if s_lo == 0:
            return lo, lo
        if s_lo != s_hi:
            break
        if lo == 1:
            raise NoRealRootAboveOne("no sign change of the polynomial above 1")
        hi, s_hi = lo, s_lo

    width = Fraction(1, 10 ** (precision + 2))
    while hi - lo >= width:
        mid = (lo + hi) / 2
        s = _horner_sign(p, mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _ratio_check(terms: Sequence[int], alpha: Fraction, precision: int, window: int = 8) -> None:
    last = [n for n in range(len(terms) - window - 1, len(terms) - 1) if n >= 0 and terms[n]]
    if len(last) < 2:
        return
    ratios = [Fraction(terms[n + 1], terms[n]) for n in last]
    gap = max(abs(a - b) for a, b in zip(ratios, ratios[1:]))
    tol = 10 * gap + Fraction(1, 10**precision)
    if abs(alpha - ratios[-1]) > tol:
        raise RootCrossCheckFailed(
            f"root {float(alpha):.12g} disagrees with observed ratio {float(ratios[-1]):.12g}"
        )


def largest_real_root(
    rec: LinearRecurrence | Sequence[int],
    precision: int = 30,
    bound: int | Fraction | None = None,
    seq: IntegerSequence | Sequence[int] | None = None,
) -> Decimal:
    """Largest real root above 1 of the characteristic polynomial, rounded to
    ``precision`` decimal places.

    ``rec`` is a recurrence or a coefficient list (highest degree first).
    When ``seq`` is given the root is compared with the growth ratio of its
    last terms, and :class:`RootCrossCheckFailed` is raised on disagreement.
    """
    poly = rec.characteristic() if isinstance(rec, LinearRecurrence) else list(rec)
    lo, hi = root_bracket(poly, precision, bound)
    mid = (lo + hi) / 2
    if seq is not None:
        terms = seq.terms if isinstance(seq, IntegerSequence) else seq
        _ratio_check(terms, mid, precision)
    with localcontext() as ctx:
        ctx.prec = precision + 20
        value = Decimal(mid.numerator) / Decimal(mid.denominator)
        return value.quantize(Decimal(1).scaleb(-precision))


def growth_constant(
    seq: IntegerSequence | Sequence[int],
    alpha: Decimal | Fraction | float | str,
    tolerance: float | Decimal | None = None,
    digits: int = 50,
) -> tuple[Decimal, Decimal]:
    """Estimate ``c`` in ``r(n) ~ c * alpha**n`` from the last term.

    Returns ``(c, uncertainty)`` where the uncertainty is the change of the
    estimate between the last two terms.
    """
    terms = seq.terms if isinstance(seq, IntegerSequence) else tuple(seq)
    n = len(terms) - 1
    if n < 1:
        raise InsufficientTerms("need at least two terms")
    with localcontext() as ctx:
        ctx.prec = digits
        if isinstance(alpha, Fraction):
            a = Decimal(alpha.numerator) / Decimal(alpha.denominator)
        else:
            a = Decimal(str(alpha)) if isinstance(alpha, float) else Decimal(alpha)
        if a <= 1:
            raise ValueError("alpha must exceed 1")
        c_n = Decimal(terms[n]) / a**n
        c_prev = Decimal(terms[n - 1]) / a ** (n - 1)
        unc = abs(c_n - c_prev)
        if tolerance is not None and unc > Decimal(str(tolerance)):
            raise NotConverged(f"estimate moved by {unc:.3e} between the last two terms")
        return +c_n, +unc
