from __future__ import annotations

import math

import pytest

from colorednc import closure as cl
from colorednc import colored as cd
from colorednc.errors import ResourceLimitError

INF = math.inf


def test_base_only_gives_pair_diagrams():
    found = cl.closure([], 4)
    # identity, cap and cup alone generate the bw pair diagrams of the alternating category
    expected = {cp for total in range(5) for k in range(total + 1)
                for cp in cd.enumerate_category(k, total - k, cd.DBAR_INF)
                if all(len(b) == 2 for b in cp.blocks)}
    assert found == expected


def test_generators_reproduce_alternating_category():
    rows = cl.compare_with_category(cl.closure(cd.dbar_generators(), 4), cd.DBAR_INF, 4)
    assert all(r["match"] for r in rows), [r for r in rows if not r["match"]]


@pytest.mark.parametrize("s", [3, 4, 5])
def test_one_block_generates_ds(s):
    found = cl.closure(cd.dbar_generators() + [cd.one_block_black(s)], 5)
    rows = cl.compare_with_category(found, cd.D(s), 5)
    assert all(r["match"] for r in rows), [r for r in rows if not r["match"]]


def test_closure_stays_inside_category():
    found = cl.closure(cd.dbar_generators() + [cd.block_swap_generator()], 4)
    assert all(cd.is_member(cp, cd.D(INF)) for cp in found)
    assert all(cp.size <= 4 for cp in found)


def test_by_shape_groups_sorted():
    groups = cl.by_shape(cl.closure([], 2))
    assert list(groups) == sorted(groups)
    assert [cp.ident() for cp in groups[(0, 2)]] == ["0:2:1,2:bw"]


def test_resource_limit():
    with pytest.raises(ResourceLimitError) as info:
        cl.closure(cd.dbar_generators(), 6, max_size=10)
    assert info.value.frontier_size is not None
