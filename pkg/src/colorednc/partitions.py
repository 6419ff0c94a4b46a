"""Uncolored set partitions between two rows of legs.

Legs are numbered ``1..k`` along the upper row (left to right) and
``k+1..k+l`` along the lower row (left to right).  Reading the boundary
of the strip as a circle visits the upper legs left to right and then
the lower legs right to left; noncrossing-ness is checked in that
circular order.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ArityMismatchError, BoundExceededError

DEFAULT_MAX_LEGS = 16
MAX_LEGS_ENV = "COLOREDNC_MAX_LEGS"


def max_legs_bound() -> int:
    """Enumeration bound on ``k + l``; overridable by environment variable."""
    value = os.environ.get(MAX_LEGS_ENV)
    if value is None:
        return DEFAULT_MAX_LEGS
    return int(value)


def _check_bound(k: int, l: int, bound: int | None) -> None:
    if k < 0 or l < 0:
        raise ValueError(f"leg counts must be nonnegative, got ({k}, {l})")
    limit = max_legs_bound() if bound is None else bound
    if k + l > limit:
        raise BoundExceededError(f"k + l = {k + l} exceeds the bound {limit}")


@dataclass(frozen=True)
class Partition:
    upper: int
    lower: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        legs = [x for b in blocks for x in b]
        if any(len(b) == 0 for b in blocks):
            raise ValueError("blocks must be nonempty")
        if sorted(legs) != list(range(1, self.upper + self.lower + 1)):
            raise ValueError(f"blocks {blocks} do not partition legs 1..{self.upper + self.lower}")

    @property
    def size(self) -> int:
        return self.upper + self.lower

    def is_upper(self, leg: int) -> bool:
        return leg <= self.upper

    def block_sizes(self) -> list[int]:
        return sorted(len(b) for b in self.blocks)

    def block_of(self) -> dict[int, int]:
        """Map each leg to the index of its block."""
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    def to_json(self) -> dict:
        return {"upper": self.upper, "lower": self.lower, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data: dict) -> Partition:
        return cls(int(data["upper"]), int(data["lower"]), tuple(tuple(b) for b in data["blocks"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def circular_position(p: Partition, leg: int) -> int:
    """Position of ``leg`` when the boundary is read as a circle."""
    if leg <= p.upper:
        return leg - 1
    return p.upper + p.upper + p.lower - leg


def leg_at_position(k: int, l: int, pos: int) -> int:
    if pos < k:
        return pos + 1
    return 2 * k + l - pos


def is_noncrossing(p: Partition) -> bool:
    pos = [sorted(circular_position(p, x) for x in b) for b in p.blocks]
    owner = {}
    for i, b in enumerate(pos):
        for x in b:
            owner[x] = i
    # a block crosses another iff some leg of the other lies strictly between
    # two consecutive legs of it while another leg of the other lies outside
    for i, b in enumerate(pos):
        if len(b) < 2:
            continue
        for a, c in zip(b, b[1:]):
            inside = {owner[x] for x in range(a + 1, c)}
            for j in inside:
                if any(x < a or x > c for x in pos[j]):
                    return False
    return True


def identity(m: int = 1) -> Partition:
    """The identity partition on ``m`` strands."""
    return Partition(m, m, tuple((i, m + i) for i in range(1, m + 1)))


def cap() -> Partition:
    """The pair partition with two lower legs."""
    return Partition(0, 2, ((1, 2),))


def cup() -> Partition:
    """The pair partition with two upper legs."""
    return Partition(2, 0, ((1, 2),))


def one_block(k: int, l: int) -> Partition:
    n = k + l
    return Partition(k, l, (tuple(range(1, n + 1)),) if n else ())


def empty() -> Partition:
    return Partition(0, 0, ())


@lru_cache(maxsize=None)
def _nc_linear(n: int, even_only: bool) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All noncrossing partitions of ``0..n-1`` (positions on a line).

    The block holding position 0 is placed first; each gap it leaves is
    filled independently.
    """
    if n == 0:
        return ((),)
    out = []

    def members(last, chosen):
        # ``chosen`` is the block of 0 so far; each extension closes a gap
        if not even_only or len(chosen) % 2 == 0:
            yield chosen
        for nxt in range(last + 1, n):
            yield from members(nxt, chosen + (nxt,))

    for block in members(0, (0,)):
        if even_only and len(block) % 2:
            continue
        gaps = [(a + 1, b) for a, b in zip(block, block[1:] + (n,)) if b - a > 1]
        if even_only and any((b - a) % 2 for a, b in gaps):
            continue
        partial = [(block,)]
        for lo, hi in gaps:
            fills = _nc_linear(hi - lo, even_only)
            partial = [acc + tuple(tuple(x + lo for x in blk) for blk in fill)
                       for acc in partial for fill in fills]
        out.extend(partial)
    return tuple(out)


def enumerate_nc(k: int, l: int, even_only: bool = False, bound: int | None = None) -> list[Partition]:
    """All noncrossing partitions of ``(k, l)`` legs in canonical order."""
    _check_bound(k, l, bound)
    return list(_enumerate_nc(k, l, even_only))


@lru_cache(maxsize=256)
def _enumerate_nc(k: int, l: int, even_only: bool) -> tuple[Partition, ...]:
    result = []
    for blocks in _nc_linear(k + l, even_only):
        legs = tuple(tuple(leg_at_position(k, l, x) for x in b) for b in blocks)
        result.append(Partition(k, l, legs))
    result.sort(key=lambda p: p.blocks)
    return tuple(result)


def tensor(p: Partition, q: Partition) -> Partition:
    """Place ``q`` to the right of ``p``."""
    k1, l1, k2 = p.upper, p.lower, q.upper
    k = k1 + k2

    def move_p(x):
        return x if x <= k1 else x + k2

    def move_q(x):
        return k1 + x if x <= k2 else k + l1 + (x - k2)

    blocks = tuple(tuple(move_p(x) for x in b) for b in p.blocks)
    blocks += tuple(tuple(move_q(x) for x in b) for b in q.blocks)
    return Partition(k, l1 + q.lower, blocks)


def tensor_all(parts: Iterable[Partition]) -> Partition:
    result = empty()
    for p in parts:
        result = tensor(result, p)
    return result


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def compose(q: Partition, p: Partition) -> tuple[Partition, int]:
    """Stack ``p`` on top of ``q``, gluing p's lower row to q's upper row.

    Returns the induced partition on p's upper and q's lower legs, and the
    number of closed components left inside the glued middle row.
    """
    if p.lower != q.upper:
        raise ArityMismatchError(f"cannot compose: p has {p.lower} lower legs, q has {q.upper} upper legs")
    k, l, m = p.upper, p.lower, q.lower
    # nodes: 0..k-1 top, k..k+l-1 middle, k+l..k+l+m-1 bottom
    uf = _UnionFind(k + l + m)
    for b in p.blocks:
        nodes = [x - 1 for x in b]  # p's lower leg k+j sits at middle node k+j-1
        for x in nodes[1:]:
            uf.union(nodes[0], x)
    for b in q.blocks:
        nodes = [k + x - 1 for x in b]  # q's upper leg j -> middle node k+j-1, lower -> bottom
        for x in nodes[1:]:
            uf.union(nodes[0], x)
    groups: dict[int, list[int]] = {}
    for node in range(k + l + m):
        groups.setdefault(uf.find(node), []).append(node)
    blocks = []
    circles = 0
    for nodes in groups.values():
        outer = [x for x in nodes if x < k or x >= k + l]
        if not outer:
            circles += 1
            continue
        blocks.append(tuple(x + 1 if x < k else x - l + 1 for x in outer))
    return Partition(k, m, tuple(blocks)), circles


def adjoint(p: Partition) -> Partition:
    """Turn the partition upside down (rows exchanged, left-right kept)."""
    k, l = p.upper, p.lower

    def move(x):
        return x - k if x > k else l + x

    return Partition(l, k, tuple(tuple(move(x) for x in b) for b in p.blocks))


def rotate_left(p: Partition) -> Partition:
    """Move the leftmost upper leg down to become the leftmost lower leg."""
    if p.upper == 0:
        raise ValueError("rotate_left needs an upper leg; use rotate_right")
    k = p.upper

    def move(x):
        if x == 1:
            return k
        return x - 1 if x <= k else x

    return Partition(k - 1, p.lower + 1, tuple(tuple(move(x) for x in b) for b in p.blocks))


def rotate_right(p: Partition) -> Partition:
    """Inverse of :func:`rotate_left`: leftmost lower leg moves up."""
    if p.lower == 0:
        raise ValueError("rotate_right needs a lower leg; use rotate_left")
    k = p.upper

    def move(x):
        if x == k + 1:
            return 1
        return x + 1 if x <= k else x

    return Partition(k + 1, p.lower - 1, tuple(tuple(move(x) for x in b) for b in p.blocks))


def catalan(r: int) -> int:
    from math import comb

    return comb(2 * r, r) // (r + 1)


def from_blocks(k: int, l: int, blocks: Sequence[Sequence[int]]) -> Partition:
    return Partition(k, l, tuple(tuple(b) for b in blocks))
