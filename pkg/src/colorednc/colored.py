"""Black/white colored noncrossing partitions and the categories they form.

A colored partition carries one color per leg, written as a string over
``"b"``/``"w"`` indexed by leg.  Two colorings that differ by swapping the
colors of whole blocks are the same diagram; the stored representative
has the smallest leg of every block colored black.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable

from . import partitions as pc
from .errors import ArityMismatchError
from .partitions import Partition

INF = math.inf
_FLIP = str.maketrans("bw", "wb")


def flip(colors: str) -> str:
    return colors.translate(_FLIP)


@dataclass(frozen=True)
class ColoredPartition:
    base: Partition
    colors: str

    def __post_init__(self):
        if len(self.colors) != self.base.size:
            raise ValueError(f"need {self.base.size} colors, got {self.colors!r}")
        if set(self.colors) - {"b", "w"}:
            raise ValueError(f"colors must be over 'b'/'w', got {self.colors!r}")

    @property
    def upper(self) -> int:
        return self.base.upper

    @property
    def lower(self) -> int:
        return self.base.lower

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def blocks(self):
        return self.base.blocks

    def color(self, leg: int) -> str:
        return self.colors[leg - 1]

    def block_colors(self, block) -> str:
        return "".join(self.colors[x - 1] for x in block)

    def is_canonical(self) -> bool:
        return all(self.colors[b[0] - 1] == "b" for b in self.base.blocks)

    def key(self):
        return (self.base.upper, self.base.lower, self.base.blocks, self.colors)

    def ident(self) -> str:
        """Compact text id, e.g. ``0:4:1,4;2,3:bwwb``."""
        blocks = ";".join(",".join(map(str, b)) for b in self.base.blocks)
        return f"{self.upper}:{self.lower}:{blocks}:{self.colors}"

    def to_json(self) -> dict:
        data = self.base.to_json()
        data["colors"] = self.colors
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> ColoredPartition:
        return cls(Partition.from_json(data), str(data["colors"]))

    def __repr__(self):
        return f"ColoredPartition({self.ident()})"


def colored(k: int, l: int, blocks, colors: str, canonical: bool = True) -> ColoredPartition:
    cp = ColoredPartition(pc.from_blocks(k, l, blocks), colors)
    return canonicalize(cp) if canonical else cp


def canonicalize(cp: ColoredPartition) -> ColoredPartition:
    """Swap colors in every block whose smallest leg is white."""
    if cp.is_canonical():
        return cp
    colors = list(cp.colors)
    for b in cp.base.blocks:
        if colors[b[0] - 1] == "w":
            for x in b:
                colors[x - 1] = "w" if colors[x - 1] == "b" else "b"
    return ColoredPartition(cp.base, "".join(colors))


def signed_color_counts(cp: ColoredPartition, block) -> tuple[int, int]:
    """(black upper - black lower, white upper - white lower) within ``block``."""
    b = w = 0
    for x in block:
        sign = 1 if x <= cp.upper else -1
        if cp.colors[x - 1] == "b":
            b += sign
        else:
            w += sign
    return b, w


@dataclass(frozen=True)
class CategoryLabel:
    """Which diagram category: ``Ds`` with parameter ``s`` (``D_1`` is s=1), or ``DbarInf``."""

    kind: str
    s: float | int | None = None

    def __post_init__(self):
        if self.kind == "Ds":
            if self.s is None or not (self.s == INF or (isinstance(self.s, int) and self.s >= 1)):
                raise ValueError(f"Ds needs s in 1, 2, ... or inf, got {self.s!r}")
        elif self.kind == "DbarInf":
            if self.s is not None:
                raise ValueError("DbarInf takes no parameter")
        else:
            raise ValueError(f"unknown category kind {self.kind!r}")

    @property
    def even_blocks_only(self) -> bool:
        return self.kind == "DbarInf" or self.s == INF or self.s == 2

    def to_json(self) -> dict:
        if self.kind == "DbarInf":
            return {"kind": "DbarInf"}
        return {"kind": "Ds", "s": "inf" if self.s == INF else self.s}

    @classmethod
    def from_json(cls, data: dict) -> CategoryLabel:
        if data.get("kind") == "DbarInf":
            return DBAR_INF
        return D(parse_s(data["s"]))

    def __str__(self):
        if self.kind == "DbarInf":
            return "DbarInf"
        return f"D_{'inf' if self.s == INF else self.s}"


def parse_s(value) -> float | int:
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        value = int(value)
    if value == INF:
        return INF
    if int(value) != value or value < 1:
        raise ValueError(f"s must be a positive integer or 'inf', got {value!r}")
    return int(value)


def D(s) -> CategoryLabel:
    return CategoryLabel("Ds", parse_s(s))


DBAR_INF = CategoryLabel("DbarInf")


def _congruent(a: int, b: int, s) -> bool:
    if s == INF:
        return a == b
    return (a - b) % s == 0


def _alternating(colors: str) -> bool:
    return all(x != y for x, y in zip(colors, colors[1:]))


def _block_ok(cp: ColoredPartition, block, cat: CategoryLabel) -> bool:
    if cat.kind == "Ds":
        b, w = signed_color_counts(cp, block)
        return _congruent(b, w, cat.s)
    if len(block) % 2:
        return False
    up = "".join(cp.colors[x - 1] for x in block if x <= cp.upper)
    down = "".join(cp.colors[x - 1] for x in block if x > cp.upper)
    if not (_alternating(up) and _alternating(down)):
        return False
    return not up or not down or up[0] == down[0]


def is_member(cp: ColoredPartition, cat: CategoryLabel) -> bool:
    return pc.is_noncrossing(cp.base) and all(_block_ok(cp, b, cat) for b in cp.base.blocks)


@lru_cache(maxsize=None)
def _block_colorings(u: int, d: int, cat: CategoryLabel) -> tuple[str, ...]:
    """Admissible colorings (first leg black) of a block with u upper, d lower legs.

    Colors are listed in leg order: the upper legs left to right, then the
    lower legs left to right.
    """
    n = u + d
    block = tuple(range(1, n + 1))
    probe_base = Partition(u, d, (block,))
    out = []
    for tail in product("bw", repeat=n - 1):
        colors = "b" + "".join(tail)
        if _block_ok(ColoredPartition(probe_base, colors), block, cat):
            out.append(colors)
    return tuple(out)


def _block_shape(p: Partition, block) -> tuple[int, int]:
    u = sum(1 for x in block if x <= p.upper)
    return u, len(block) - u


def enumerate_category(k: int, l: int, cat: CategoryLabel, bound: int | None = None) -> list[ColoredPartition]:
    """All canonical members of the category with ``(k, l)`` legs."""
    result = []
    for p in pc.enumerate_nc(k, l, even_only=cat.even_blocks_only, bound=bound):
        choices = [_block_colorings(*_block_shape(p, b), cat) for b in p.blocks]
        if any(not c for c in choices):
            continue
        for pick in product(*choices):
            colors = [""] * p.size
            for b, cs in zip(p.blocks, pick):
                for x, c in zip(b, cs):
                    colors[x - 1] = c
            result.append(ColoredPartition(p, "".join(colors)))
    result.sort(key=ColoredPartition.key)
    return result


@lru_cache(maxsize=None)
def block_class_count(u: int, d: int, cat: CategoryLabel) -> int:
    """Number of color classes of one block with u upper and d lower legs.

    Counts black-leg choices per row with binomials instead of listing
    colorings, so it is independent of :func:`enumerate_category`.
    """
    if cat.kind == "DbarInf":
        return 1 if (u + d) % 2 == 0 and u + d > 0 else 0
    total = 0
    for bu in range(u + 1):
        for bd in range(d + 1):
            if _congruent(bu - bd, (u - bu) - (d - bd), cat.s):
                total += comb(u, bu) * comb(d, bd)
    assert total % 2 == 0
    return total // 2


def count_category(k: int, l: int, cat: CategoryLabel, bound: int | None = None) -> int:
    total = 0
    for p in pc.enumerate_nc(k, l, even_only=cat.even_blocks_only, bound=bound):
        term = 1
        for b in p.blocks:
            term *= block_class_count(*_block_shape(p, b), cat)
            if not term:
                break
        total += term
    return total


# diagram operations -------------------------------------------------------

def tensor(a: ColoredPartition, b: ColoredPartition) -> ColoredPartition:
    k1, k2 = a.upper, b.upper
    colors = a.colors[:k1] + b.colors[:k2] + a.colors[k1:] + b.colors[k2:]
    return canonicalize(ColoredPartition(pc.tensor(a.base, b.base), colors))


def adjoint(cp: ColoredPartition) -> ColoredPartition:
    k = cp.upper
    return canonicalize(ColoredPartition(pc.adjoint(cp.base), cp.colors[k:] + cp.colors[:k]))


def rotate_left_colored(cp: ColoredPartition) -> ColoredPartition:
    """Move the leftmost upper leg to the lower row, flipping its color."""
    base = pc.rotate_left(cp.base)
    k = cp.upper
    c = cp.colors
    return canonicalize(ColoredPartition(base, c[1:k] + flip(c[0]) + c[k:]))


def rotate_right_colored(cp: ColoredPartition) -> ColoredPartition:
    """Move the leftmost lower leg to the upper row, flipping its color."""
    base = pc.rotate_right(cp.base)
    k = cp.upper
    c = cp.colors
    return canonicalize(ColoredPartition(base, flip(c[k]) + c[:k] + c[k + 1:]))


def compose(q: ColoredPartition, p: ColoredPartition) -> tuple[ColoredPartition | None, int]:
    """Glue p's lower row to q's upper row.

    Each middle point ties the letter of p's block to that of q's block,
    possibly through a bar when the two colors there differ.  If the ties
    inside one connected piece contradict each other the composite map is
    zero and ``None`` is returned.  Otherwise the second value counts the
    closed pieces entirely inside the middle row.
    """
    if p.lower != q.upper:
        raise ArityMismatchError(f"cannot compose: p has {p.lower} lower legs, q has {q.upper} upper legs")
    k, l = p.upper, p.lower
    pb = p.base.blocks
    qb = q.base.blocks
    nb = len(pb) + len(qb)
    parent = list(range(nb))
    parity = [0] * nb  # letter(node) = letter(parent) xor parity

    def find(x):
        acc = 0
        root = x
        while parent[root] != root:
            acc ^= parity[root]
            root = parent[root]
        # path compression
        cur, cur_acc = x, acc
        while parent[cur] != cur:
            nxt, step = parent[cur], parity[cur]
            parent[cur], parity[cur] = root, cur_acc
            cur, cur_acc = nxt, cur_acc ^ step
        return root, acc

    p_owner = {}
    for i, b in enumerate(pb):
        for x in b:
            p_owner[x] = i
    q_owner = {}
    for i, b in enumerate(qb):
        for x in b:
            q_owner[x] = len(pb) + i
    pc_colors, qc_colors = p.colors, q.colors
    for j in range(1, l + 1):
        a, c = p_owner[k + j], q_owner[j]
        rel = (pc_colors[k + j - 1] != qc_colors[j - 1])
        ra, pa = find(a)
        rc, pc_ = find(c)
        if ra == rc:
            if pa ^ pc_ != rel:
                return None, 0
        else:
            parent[rc] = ra
            parity[rc] = pa ^ pc_ ^ rel
    roots = {find(i)[0] for i in range(nb)}
    new_colors = {}
    outer_blocks: dict[int, list[int]] = {}
    for leg in range(1, k + 1):
        root, par = find(p_owner[leg])
        c = pc_colors[leg - 1]
        new_colors[leg] = flip(c) if par else c
        outer_blocks.setdefault(root, []).append(leg)
    for leg in range(l + 1, q.size + 1):
        root, par = find(q_owner[leg])
        c = qc_colors[leg - 1]
        new_leg = k + leg - l
        new_colors[new_leg] = flip(c) if par else c
        outer_blocks.setdefault(root, []).append(new_leg)
    circles = len(roots - outer_blocks.keys())
    m = q.lower
    base = Partition(k, m, tuple(tuple(b) for b in outer_blocks.values()))
    colors = "".join(new_colors[x] for x in range(1, k + m + 1))
    return canonicalize(ColoredPartition(base, colors)), circles


# named diagrams ------------------------------------------------------------

def identity(m: int = 1) -> ColoredPartition:
    return ColoredPartition(pc.identity(m), "b" * (2 * m))


def cap() -> ColoredPartition:
    """Two lower legs joined, colored bw."""
    return ColoredPartition(pc.cap(), "bw")


def cup() -> ColoredPartition:
    """Two upper legs joined, colored bw."""
    return ColoredPartition(pc.cup(), "bw")


def one_block_black(s: int) -> ColoredPartition:
    """The single block with ``s`` lower legs, all black."""
    return ColoredPartition(pc.one_block(0, s), "b" * s)


def fork(x: int, s: int) -> ColoredPartition:
    """Single block with ``x`` white upper legs and ``s - x`` black lower legs."""
    return canonicalize(ColoredPartition(pc.one_block(x, s - x), "w" * x + "b" * (s - x)))


def dbar_generators() -> list[ColoredPartition]:
    """A finite generating set for the alternating even category.

    The bw pair as cap, cup and through-strand, plus the (2,2) block
    whose rows both read bw.
    """
    return [cap(), cup(), identity(1), ColoredPartition(pc.one_block(2, 2), "bwbw")]


def block_swap_generator() -> ColoredPartition:
    """The four-leg lower block colored bbww."""
    return ColoredPartition(pc.one_block(0, 4), "bbww")


def all_swaps(cp: ColoredPartition) -> Iterable[ColoredPartition]:
    """Every coloring obtained by swapping colors inside a subset of blocks."""
    blocks = cp.base.blocks
    for mask in product((False, True), repeat=len(blocks)):
        colors = list(cp.colors)
        for flipit, b in zip(mask, blocks):
            if flipit:
                for x in b:
                    colors[x - 1] = "w" if colors[x - 1] == "b" else "b"
        yield ColoredPartition(cp.base, "".join(colors))
