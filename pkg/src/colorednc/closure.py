"""Bounded category closure of a set of colored diagrams.

Starting from generators plus the bw cap, cup and through-strand, the
engine repeatedly applies adjoint, both rotations, tensor products and
"whiskered" compositions ``(id^a ⊗ y ⊗ id^b) ∘ x``.  The whiskered form
lets a small diagram cap a larger one in the middle, as the generation
arguments do, while every stored result stays within ``max_legs``.
Intermediate whiskered operands may reach ``intermediate_legs`` legs
(default ``2 * max_legs``).  Compositions whose map vanishes (color ties
contradict each other) contribute nothing.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from typing import Iterable

from . import colored as cd
from .colored import ColoredPartition
from .errors import ResourceLimitError

log = logging.getLogger(__name__)


def _whiskered(x: ColoredPartition, y: ColoredPartition, offset: int) -> ColoredPartition | None:
    a = offset
    b = x.lower - y.upper - a
    parts = []
    if a:
        parts.append(cd.identity(a))
    parts.append(y)
    if b:
        parts.append(cd.identity(b))
    op = parts[0]
    for part in parts[1:]:
        op = cd.tensor(op, part)
    result, _ = cd.compose(op, x)
    return result


def _unary(x: ColoredPartition):
    yield cd.adjoint(x)
    if x.upper:
        yield cd.rotate_left_colored(x)
    if x.lower:
        yield cd.rotate_right_colored(x)


def _binary(x, y, max_legs, intermediate_legs):
    if x.size + y.size <= max_legs:
        yield cd.tensor(x, y)
    # y caps (part of) x's lower row
    j, m, l = y.upper, y.lower, x.lower
    if j <= l and x.upper + l - j + m <= max_legs and 2 * (l - j) + j + m <= intermediate_legs:
        for offset in range(l - j + 1):
            r = _whiskered(x, y, offset)
            if r is not None:
                yield r


def base_diagrams() -> list[ColoredPartition]:
    return [cd.identity(1), cd.cap(), cd.cup()]


def closure(
    generators: Iterable[ColoredPartition],
    max_legs: int,
    max_iterations: int = 50,
    intermediate_legs: int | None = None,
    max_size: int = 200_000,
) -> set[ColoredPartition]:
    """Canonical diagrams with at most ``max_legs`` legs reachable from ``generators``."""
    if intermediate_legs is None:
        intermediate_legs = 2 * max_legs
    seeds = [cd.canonicalize(g) for g in generators] + base_diagrams()
    known: set[ColoredPartition] = {g for g in seeds if g.size <= max_legs}
    frontier = set(known)
    for it in range(max_iterations):
        found: set[ColoredPartition] = set()
        snapshot = list(known)
        for x in frontier:
            for r in _unary(x):
                found.add(r)
            for y in snapshot:
                found.update(_binary(x, y, max_legs, intermediate_legs))
                if y not in frontier:
                    found.update(_binary(y, x, max_legs, intermediate_legs))
        found = {r for r in found if r.size <= max_legs} - known
        log.debug("closure iteration %d: %d known, %d new", it, len(known), len(found))
        if not found:
            return known
        known |= found
        frontier = found
        if len(known) > max_size:
            raise ResourceLimitError(
                f"closure exceeded {max_size} diagrams", frontier_size=len(frontier))
    log.info("closure stopped after %d iterations without reaching a fixpoint", max_iterations)
    return known


def by_shape(diagrams: Iterable[ColoredPartition]) -> dict[tuple[int, int], list[ColoredPartition]]:
    out = defaultdict(list)
    for d in diagrams:
        out[(d.upper, d.lower)].append(d)
    return {key: sorted(v, key=ColoredPartition.key) for key, v in sorted(out.items())}


def compare_with_category(diagrams, cat: cd.CategoryLabel, max_legs: int) -> list[dict]:
    """Per-shape generated vs enumerated counts, plus whether the sets agree."""
    generated = by_shape(diagrams)
    rows = []
    for total in range(max_legs + 1):
        for k in range(total + 1):
            l = total - k
            expected = set(cd.enumerate_category(k, l, cat))
            got = set(generated.get((k, l), []))
            rows.append({
                "upper": k,
                "lower": l,
                "generated": len(got),
                "enumerated": len(expected),
                "match": got == expected,
            })
    return rows
