"""Free cumulants and moments of the main character.

The r-th free cumulant counts the color classes of a single block with r
lower legs: ``kappa_r = (1/2) * sum C(r, p)`` over ``p + q = r`` with
``p = q (mod s)``.  Three routes to it are provided (orbit brute force,
binomial sum, root-of-unity sum) together with the moment-cumulant
machinery over noncrossing partitions.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Sequence

from . import partitions as pc
from .series import FormalSeries

INF = math.inf
LITERAL_NC_LIMIT = 10


@dataclass(frozen=True)
class CumulantSequence:
    """kappa_1..kappa_R; ``kind`` is ``"free"`` or ``"classical"``."""

    values: tuple
    kind: str = "free"
    origin: str = ""

    def __post_init__(self):
        if self.kind not in ("free", "classical"):
            raise ValueError(f"kind must be 'free' or 'classical', got {self.kind!r}")
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self):
        return len(self.values)

    def at(self, r: int):
        """kappa_r (1-based)."""
        if not 1 <= r <= len(self.values):
            raise IndexError(f"cumulant order {r} not available (have 1..{len(self.values)})")
        return self.values[r - 1]


def _same_mod(p: int, q: int, s) -> bool:
    return p == q if s == INF else (p - q) % s == 0


def kappa_binomial(r: int, s) -> int:
    if r < 1:
        raise ValueError("r must be at least 1")
    total = sum(comb(r, p) for p in range(r + 1) if _same_mod(p, r - p, s))
    return total // 2


def kappa_bruteforce(r: int, s) -> int:
    """Swap-orbits of leg colorings of one r-leg lower block satisfying the congruence."""
    if r < 1:
        raise ValueError("a block needs at least one leg")
    if r > 20:
        raise ValueError("brute force limited to r <= 20")
    orbits = set()
    for coloring in product((0, 1), repeat=r):
        black = sum(coloring)
        # lower legs carry sign -1 on both counts
        if _same_mod(-black, -(r - black), s):
            swapped = tuple(1 - c for c in coloring)
            orbits.add(min(coloring, swapped))
    return len(orbits)


def kappa_roots(r: int, s: int) -> float:
    if s == INF:
        raise ValueError("the root-of-unity form needs finite s")
    w = cmath.exp(2j * math.pi / s)
    total = sum((w ** k + w ** (-k)) ** r for k in range(1, s + 1))
    return (total / (2 * s)).real


def character_cumulants(s, R: int) -> CumulantSequence:
    return CumulantSequence(tuple(kappa_binomial(r, s) for r in range(1, R + 1)), "free",
                            f"character s={'inf' if s == INF else s}")


def _moment_recursion(kappas: Sequence, R: int, zero, one) -> list:
    """m_0..m_R from free cumulants by first-block decomposition.

    m_n = sum_j kappa_j [y^{n-j}] M(y)^j with M the moment series.
    """
    m = [one]
    for n in range(1, R + 1):
        series = FormalSeries.of(m, n - 1)
        power = FormalSeries.of((one,), n - 1)
        total = zero
        for j in range(1, n + 1):
            power = power * series
            total = total + kappas[j - 1] * power[n - j]
        m.append(total)
    return m


def _moments_literal(kappas: Sequence, R: int, zero, one) -> list:
    m = [one]
    for r in range(1, R + 1):
        total = zero
        for p in pc.enumerate_nc(0, r):
            term = one
            for b in p.blocks:
                term = term * kappas[len(b) - 1]
            total = total + term
        m.append(total)
    return m


def _unit(values):
    if all(isinstance(v, (int, Fraction)) for v in values):
        return 0, 1
    return 0.0, 1.0


def moments_from_free_cumulants(kappas: CumulantSequence, R: int) -> list:
    """m_0..m_R; literal sum over NC(r) for r <= 10 cross-checked against the recursion."""
    if kappas.kind != "free":
        raise ValueError("expected free cumulants")
    if R > len(kappas):
        raise ValueError(f"need {R} cumulants, have {len(kappas)}")
    zero, one = _unit(kappas.values)
    rec = _moment_recursion(kappas.values, R, zero, one)
    lit = _moments_literal(kappas.values, min(R, LITERAL_NC_LIMIT), zero, one)
    exact = isinstance(zero, int)
    for r, (a, b) in enumerate(zip(rec, lit)):
        ok = a == b if exact else abs(a - b) <= 1e-9 * max(1.0, abs(a))
        if not ok:
            raise ArithmeticError(f"moment m_{r}: recursion {a} != literal {b}")
    return rec


def free_cumulants_from_moments(moments: Sequence, R: int) -> CumulantSequence:
    """Invert :func:`moments_from_free_cumulants`; ``moments[0]`` must be m_0 = 1."""
    if moments[0] != 1:
        raise ValueError("moments must start with m_0 = 1")
    if R > len(moments) - 1:
        raise ValueError(f"need moments up to order {R}")
    zero, one = _unit(moments[: R + 1])
    kappas = []
    for n in range(1, R + 1):
        series = FormalSeries.of(moments[:n], n - 1)
        power = FormalSeries.of((one,), n - 1)
        lower = zero
        for j in range(1, n):
            power = power * series
            lower = lower + kappas[j - 1] * power[n - j]
        kappas.append(moments[n] - lower)
    return CumulantSequence(tuple(kappas), "free")


def classical_moments_from_cumulants(cumulants: CumulantSequence, R: int) -> list:
    """m_0..m_R summing over all set partitions (recursion on the block of the first element)."""
    if R > len(cumulants):
        raise ValueError(f"need {R} cumulants, have {len(cumulants)}")
    zero, one = _unit(cumulants.values)
    m = [one]
    for n in range(1, R + 1):
        total = zero
        for j in range(1, n + 1):
            total = total + comb(n - 1, j - 1) * cumulants.values[j - 1] * m[n - j]
        m.append(total)
    return m


def character_moments(s, R: int) -> list[int]:
    """m_0..m_R of the main character: moments of the free law with cumulants kappa_binomial."""
    if R == 0:
        return [1]
    return moments_from_free_cumulants(character_cumulants(s, R), R)


def table_rows(s, R: int, kind: str = "free") -> list[tuple[int, int, int]]:
    """(r, kappa_r, m_r) for r = 1..R."""
    if R == 0:
        return []
    kappas = CumulantSequence(character_cumulants(s, R).values, kind)
    if kind == "free":
        m = moments_from_free_cumulants(kappas, R)
    else:
        m = classical_moments_from_cumulants(kappas, R)
    return [(r, kappas.at(r), m[r]) for r in range(1, R + 1)]
