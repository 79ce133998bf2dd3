"""Permutations of point sets, monotone subsequences and the tail-bound evaluators."""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _all_perms
from math import comb, factorial
from typing import List, Optional, Sequence, Tuple

import mpmath

from .errors import DuplicateCoordinate, TooLarge, UpsetError

ORACLE_MAX_M = 9
_PREC_BITS = 256


class Permutation(tuple):
    """A permutation of 1..m stored as its one-line notation."""

    def __new__(cls, values: Sequence[int] = ()):
        self = super().__new__(cls, values)
        if sorted(self) != list(range(1, len(self) + 1)):
            raise UpsetError(f"not a permutation of 1..{len(self)}: {list(values)}")
        return self

    @classmethod
    def _trusted(cls, values) -> "Permutation":
        # caller guarantees bijectivity
        return tuple.__new__(cls, values)

    def reverse(self) -> "Permutation":
        return Permutation(self[::-1])


def perm_of(points: Sequence) -> Permutation:
    """Rank of each point's y among all y's, points taken in x order."""
    pts = sorted((p[0], p[1]) for p in points)
    if len({x for x, _ in pts}) != len(pts):
        raise DuplicateCoordinate("two points share an x coordinate")
    if len({y for _, y in pts}) != len(pts):
        raise DuplicateCoordinate("two points share a y coordinate")
    order = sorted(range(len(pts)), key=lambda i: pts[i][1])
    ranks = [0] * len(pts)
    for r, i in enumerate(order, 1):
        ranks[i] = r
    return Permutation._trusted(ranks)


def lis(seq: Sequence) -> int:
    """Length of the longest strictly increasing subsequence (patience sorting)."""
    tails: List = []
    for v in seq:
        i = bisect_left(tails, v)
        if i == len(tails):
            tails.append(v)
        else:
            tails[i] = v
    return len(tails)


def lds(seq: Sequence) -> int:
    """Length of the longest strictly decreasing subsequence."""
    return lis([-v for v in seq])


def longest_monotone(seq: Sequence) -> int:
    return max(lis(seq), lds(seq))


@lru_cache(maxsize=None)
def _monotone_histogram(m: int) -> Tuple[int, ...]:
    # hist[L] = number of permutations of 1..m whose longest monotone run is L
    hist = [0] * (m + 1)
    for p in _all_perms(range(1, m + 1)):
        hist[longest_monotone(p)] += 1
    return tuple(hist)


def exact_monotone_probability(m: int, ell: int) -> Fraction:
    """P(max(lis, lds) >= ell) for a uniform permutation of 1..m, by enumeration."""
    if m > ORACLE_MAX_M:
        raise TooLarge(f"enumeration limited to m <= {ORACLE_MAX_M}, got {m}")
    if not 1 <= ell <= m:
        raise UpsetError(f"need 1 <= ell <= m, got ell={ell}, m={m}")
    hist = _monotone_histogram(m)
    return Fraction(sum(hist[ell:]), factorial(m))


def union_bound(m: int, ell: int, capped: bool = True) -> Fraction:
    """C(m, ell) * 2 / ell!, optionally capped at 1."""
    if ell < 1:
        raise UpsetError(f"need ell >= 1, got {ell}")
    value = Fraction(2 * comb(m, ell), factorial(ell))
    return min(Fraction(1), value) if capped else value


@dataclass(frozen=True)
class BoundParams:
    n: int
    m: int
    ell: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "ell", self.n // 12)
        if self.n < 12 or self.m < 1:
            raise UpsetError(f"need n >= 12 and m >= 1, got n={self.n}, m={self.m}")


@dataclass
class ChainStep:
    name: str
    value: mpmath.mpf
    applies: bool = True


@dataclass
class ChainReport:
    m: int
    ell: int
    n: int
    steps: List[ChainStep]
    precondition_met: bool
    monotone: bool

    @property
    def precondition_unmet(self) -> bool:
        return not self.precondition_met


def stirling_chain(m: int, ell: int, n: Optional[int] = None) -> ChainReport:
    """Evaluate each link of the union-bound chain at 256-bit precision.

    Steps: the union bound, its falling-factorial form, the Stirling estimate
    2 m^l / (l/e)^(2l), the rewritten 2 (m e^2 / l^2)^l, then 2 * 4^-l and
    8 * 4^-(n/12).  The last two only hold when l >= 2 e sqrt(m); they are
    still reported, flagged as not applicable, when it fails.  ``n`` defaults
    to 12 * ell.
    """
    if ell < 1:
        raise UpsetError(f"need ell >= 1, got {ell}")
    if n is None:
        n = 12 * ell
    with mpmath.workprec(_PREC_BITS):
        e = mpmath.e
        falling = 1
        for i in range(ell):
            falling *= max(m - i, 0)
        steps = [
            ChainStep("union_bound", mpmath.mpf(2 * comb(m, ell)) / factorial(ell)),
            ChainStep("falling_factorial", 2 * mpmath.mpf(falling) / mpmath.mpf(factorial(ell)) ** 2),
            ChainStep("stirling", 2 * mpmath.mpf(m) ** ell / (mpmath.mpf(ell) / e) ** (2 * ell)),
            ChainStep("rewritten", 2 * (m * e ** 2 / mpmath.mpf(ell) ** 2) ** ell),
        ]
        met = ell >= 2 * e * mpmath.sqrt(m)
        steps.append(ChainStep("claim_bound", 2 * mpmath.power(4, -ell), met))
        steps.append(ChainStep("theorem_tail", 8 * mpmath.power(4, -mpmath.mpf(n) / 12), met))
        slack = mpmath.mpf(2) ** (-_PREC_BITS + 16)
        monotone = all(
            b.value >= a.value * (1 - slack)
            for a, b in zip(steps, steps[1:])
            if a.applies and b.applies
        )
    return ChainReport(m, ell, n, steps, bool(met), monotone)


@dataclass(frozen=True)
class Threshold:
    n: int
    m_max: int
    tail: mpmath.mpf
    boundary_flag: bool
    candidates: Tuple[int, ...]


def theorem_threshold(n: int) -> Threshold:
    """Largest point count floor((n / 48e)^2) covered by the theorem, and its tail 8 * 4^(-n/12).

    The square is bracketed with interval arithmetic; if the bracket straddles
    an integer the flag is raised and both floors are reported.
    """
    if n < 4:
        raise UpsetError(f"need n >= 4, got {n}")
    iv = mpmath.iv
    old = iv.prec
    iv.prec = _PREC_BITS
    try:
        sq = (iv.mpf(n) / (48 * iv.e)) ** 2
        lo, hi = int(mpmath.floor(sq.a)), int(mpmath.floor(sq.b))
    finally:
        iv.prec = old
    with mpmath.workprec(_PREC_BITS):
        tail = 8 * mpmath.power(4, -mpmath.mpf(n) / 12)
    return Threshold(n, lo, tail, lo != hi, tuple(sorted({lo, hi})))
