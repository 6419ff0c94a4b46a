"""Sparse integer linear maps between tensor powers of C^{2n}.

The basis letters ``(i, a)`` with ``1 <= i <= n`` and ``a in {1, 2}`` are
encoded as the integers ``2 * (i - 1) + (a - 1)``, so the bar operation
``(i, a) -> (i, 3 - a)`` is ``x ^ 1``.  A map is stored as a dict from
``(input word, output word)`` to a nonzero integer coefficient.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from . import colored as cd
from .colored import ColoredPartition
from .errors import ArityMismatchError


def letter(i: int, a: int) -> int:
    return 2 * (i - 1) + (a - 1)


def unletter(x: int) -> tuple[int, int]:
    return x // 2 + 1, x % 2 + 1


def bar(x: int) -> int:
    return x ^ 1


@dataclass(frozen=True)
class TensorMap:
    n: int
    in_arity: int
    out_arity: int
    entries: dict = field(compare=False, hash=False)

    def __post_init__(self):
        for (u, v), c in self.entries.items():
            if len(u) != self.in_arity or len(v) != self.out_arity:
                raise ValueError(f"entry key {(u, v)} does not match arities ({self.in_arity}, {self.out_arity})")
            if c == 0:
                raise ValueError("zero coefficients must not be stored")

    def __eq__(self, other):
        if not isinstance(other, TensorMap):
            return NotImplemented
        return (self.n, self.in_arity, self.out_arity) == (other.n, other.in_arity, other.out_arity) \
            and self.entries == other.entries

    __hash__ = None

    def __len__(self):
        return len(self.entries)

    def scaled(self, c: int) -> TensorMap:
        if c == 0:
            return TensorMap(self.n, self.in_arity, self.out_arity, {})
        return TensorMap(self.n, self.in_arity, self.out_arity, {k: c * v for k, v in self.entries.items()})

    def apply(self, word: Sequence[int]) -> dict[tuple[int, ...], int]:
        """Image of the basis vector ``e_word`` as a sparse vector."""
        word = tuple(word)
        return {v: c for (u, v), c in self.entries.items() if u == word}

    def is_scalar(self) -> bool:
        return self.in_arity == 0 and self.out_arity == 0

    def scalar(self) -> int:
        if not self.is_scalar():
            raise ValueError("map is not a scalar")
        return self.entries.get(((), ()), 0)


def build_t(cp: ColoredPartition, n: int) -> TensorMap:
    """The map attached to a colored diagram.

    A word assignment contributes 1 when every block has a letter ``I``
    carried by its black legs with ``bar(I)`` on its white legs.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    k, size = cp.upper, cp.size
    blocks = cp.base.blocks
    flips = [[(x - 1, cp.colors[x - 1] == "w") for x in b] for b in blocks]
    entries = {}
    word = [0] * size
    for letters in product(range(2 * n), repeat=len(blocks)):
        for legs, lt in zip(flips, letters):
            for pos, white in legs:
                word[pos] = lt ^ 1 if white else lt
        entries[(tuple(word[:k]), tuple(word[k:]))] = 1
    return TensorMap(n, k, size - k, entries)


def map_tensor(t1: TensorMap, t2: TensorMap) -> TensorMap:
    if t1.n != t2.n:
        raise ArityMismatchError("maps live over different n")
    entries = {}
    for (u1, v1), c1 in t1.entries.items():
        for (u2, v2), c2 in t2.entries.items():
            entries[(u1 + u2, v1 + v2)] = c1 * c2
    return TensorMap(t1.n, t1.in_arity + t2.in_arity, t1.out_arity + t2.out_arity, entries)


def map_compose(t2: TensorMap, t1: TensorMap) -> TensorMap:
    """``t2 ∘ t1``."""
    if t1.n != t2.n:
        raise ArityMismatchError("maps live over different n")
    if t1.out_arity != t2.in_arity:
        raise ArityMismatchError(f"cannot compose: {t1.out_arity} outputs into {t2.in_arity} inputs")
    by_input: dict[tuple, list] = {}
    for (v, w), c in t2.entries.items():
        by_input.setdefault(v, []).append((w, c))
    entries: dict = {}
    for (u, v), c1 in t1.entries.items():
        for w, c2 in by_input.get(v, ()):
            key = (u, w)
            entries[key] = entries.get(key, 0) + c1 * c2
    entries = {key: c for key, c in entries.items() if c}
    return TensorMap(t1.n, t1.in_arity, t2.out_arity, entries)


def map_adjoint(t: TensorMap) -> TensorMap:
    return TensorMap(t.n, t.out_arity, t.in_arity, {(v, u): c for (u, v), c in t.entries.items()})


def contract(t1: TensorMap, t2: TensorMap) -> int:
    """Full bilinear contraction ``sum_key t1[key] * t2[key]``."""
    if (t1.n, t1.in_arity, t1.out_arity) != (t2.n, t2.in_arity, t2.out_arity):
        raise ArityMismatchError("contraction needs maps of the same shape")
    small, big = (t1, t2) if len(t1) <= len(t2) else (t2, t1)
    e = big.entries
    return sum(c * e.get(key, 0) for key, c in small.entries.items())


def xi_vector(s: int, n: int) -> TensorMap:
    """``sum_I e_I^{⊗s}`` as a map from the scalars."""
    return TensorMap(n, 0, s, {((), (x,) * s): 1 for x in range(2 * n)})


@dataclass
class FunctorReport:
    passed: bool
    checks: list[str]
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"pass": self.passed, "checks": self.checks, "witness": self.witness}


def _first_difference(a: TensorMap, b: TensorMap):
    for key in set(a.entries) | set(b.entries):
        if a.entries.get(key, 0) != b.entries.get(key, 0):
            return {"key": [list(key[0]), list(key[1])],
                    "left": a.entries.get(key, 0), "right": b.entries.get(key, 0)}
    return None


def functor_check(cp1: ColoredPartition, cp2: ColoredPartition, n: int, _cache: dict | None = None) -> FunctorReport:
    """Check tensor and (when composable) composition laws for the diagram-to-map assignment.

    The composition checked is ``cp2 ∘ cp1`` (cp1 on top).  The diagram side
    returns a circle count ``c``; the map side must equal ``(2n)^c`` times the
    map of the composed diagram, or vanish when the diagram composition does.
    """
    cache = {} if _cache is None else _cache

    def T(cp):
        if cp not in cache:
            cache[cp] = build_t(cp, n)
        return cache[cp]

    checks = []
    lhs = T(cd.tensor(cp1, cp2))
    rhs = map_tensor(T(cp1), T(cp2))
    checks.append("tensor")
    if lhs != rhs:
        return FunctorReport(False, checks, {"law": "tensor", **_first_difference(lhs, rhs)})
    if cp1.lower == cp2.upper:
        checks.append("compose")
        diagram, circles = cd.compose(cp2, cp1)
        got = map_compose(T(cp2), T(cp1))
        want = TensorMap(n, cp1.upper, cp2.lower, {}) if diagram is None else T(diagram).scaled((2 * n) ** circles)
        if got != want:
            return FunctorReport(False, checks, {"law": "compose", "circles": circles,
                                                 **_first_difference(got, want)})
    checks.append("adjoint")
    if map_adjoint(T(cp1)) != T(cd.adjoint(cp1)):
        return FunctorReport(False, checks, {"law": "adjoint", **_first_difference(map_adjoint(T(cp1)), T(cd.adjoint(cp1)))})
    return FunctorReport(True, checks)


# Gram matrices -------------------------------------------------------------

def gram_matrix(diagrams: Sequence[ColoredPartition], n: int) -> list[list[int]]:
    shapes = {(d.upper, d.lower) for d in diagrams}
    if len(shapes) > 1:
        raise ArityMismatchError(f"diagrams of mixed shapes {sorted(shapes)}")
    maps = [build_t(d, n) for d in diagrams]
    size = len(maps)
    g = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            g[i][j] = g[j][i] = contract(maps[i], maps[j])
    return g


def bareiss(matrix: Sequence[Sequence[int]]) -> tuple[int, int]:
    """Rank and determinant of an integer matrix by fraction-free elimination.

    The determinant is returned for square input (0 when singular) and is
    1 for the empty matrix.
    """
    a = [list(map(int, row)) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    sign = 1
    prev = 1
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        pivot = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if pivot is None:
            continue
        if pivot != rank:
            a[rank], a[pivot] = a[pivot], a[rank]
            sign = -sign
        piv = a[rank][c]
        for r in range(rank + 1, rows):
            for cc in range(c + 1, cols):
                a[r][cc] = (a[r][cc] * piv - a[r][c] * a[rank][cc]) // prev
            a[r][c] = 0
        prev = piv
        rank += 1
    if rows != cols:
        return rank, 0
    det = sign * a[rows - 1][cols - 1] if rows and rank == rows else (1 if rows == 0 else 0)
    return rank, det


def gram_rank(diagrams: Sequence[ColoredPartition], n: int) -> int:
    return bareiss(gram_matrix(diagrams, n))[0]


def gram_det(diagrams: Sequence[ColoredPartition], n: int) -> int:
    return bareiss(gram_matrix(diagrams, n))[1]


def gram_report(diagrams: Sequence[ColoredPartition], n: int) -> dict:
    g = gram_matrix(diagrams, n)
    rank, det = bareiss(g)
    return {
        "order": [d.ident() for d in diagrams],
        "matrix": [[str(x) for x in row] for row in g],
        "rank": rank,
        "det": str(det),
    }


def dumps_gram(report: dict) -> str:
    return json.dumps(report, separators=(",", ":"))
