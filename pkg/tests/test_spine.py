import itertools
import re
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skeinrep.spine import (
    SpecError,
    SurfaceSpec,
    all_trees,
    build_spine,
    dim,
    enumerate_colorings,
    tree_spine,
)


def verlinde(g, k, p):
    """Verlinde formula with S_ab = sqrt(2/r) sin(pi (a+1)(b+1) / r), r = p/2."""
    r = p // 2

    def S(a, b):
        return math.sqrt(2 / r) * math.sin(math.pi * (a + 1) * (b + 1) / r)

    total = 0.0
    for j in range(r - 1):
        term = S(0, j) ** (2 - 2 * g - len(k))
        for kk in k:
            term *= S(kk, j)
        total += term
    return round(total)


def level_admissible(a, b, c, p):
    # independent restatement: parity, triangle, level bound, color range
    return (
        max(a, b, c) <= p // 2 - 2
        and (a + b + c) % 2 == 0
        and a <= b + c
        and b <= a + c
        and c <= a + b
        and a + b + c <= 2 * p // 2 - 4
    )


def test_enumeration_examples():
    assert [c.as_dict() for c in enumerate_colorings(build_spine(SurfaceSpec(0, (1, 1, 1, 1), 6)))] == [{"e1": 0}]
    assert [c.as_dict() for c in enumerate_colorings(build_spine(SurfaceSpec(0, (1, 1, 1, 1), 8)))] == [
        {"e1": 0},
        {"e1": 2},
    ]
    assert dim(SurfaceSpec(0, (2, 2, 2, 2), 10)) == 2


def test_unstable_example():
    spec = SurfaceSpec.unstable(1, (2,), 8)
    assert [c.as_dict() for c in enumerate_colorings(build_spine(spec))] == [{"a1": 1}]


def test_five_odd_points_have_no_coloring():
    # total leg color odd: every trivalent coloring needs an even sum at each vertex
    for p in (8, 10, 12):
        assert dim(SurfaceSpec(0, (1, 1, 1, 1, 1), p)) == 0
        assert verlinde(0, (1, 1, 1, 1, 1), p) == 0


def test_spine_shapes():
    s = build_spine(SurfaceSpec(0, (1, 1, 1, 1), 8))
    assert len(s.edges) == 1 and len(s.vertices) == 2
    s = build_spine(SurfaceSpec(1, (1, 1), 8))
    assert len(s.edges) == 2 and len(s.vertices) == 2
    s = build_spine(SurfaceSpec(2, (1, 1), 8))
    # Euler count: internal edges = 3g + n - 3 + ... for a banded graph with n legs
    assert len(s.vertices) == 2 * 2 + 2 - 2
    assert len(s.edges) == 3 * 2 + 2 - 3


@pytest.mark.parametrize(
    "g,k,p,needle",
    [
        (0, (1, 1, 1), 8, "2g+n >= 4"),
        (0, (1, 1, 0, 1), 8, "positive"),
        (0, (1, 1, 1, 1), 7, "even"),
        (0, (1, 1, 1, 1), 4, ">= 6"),
        (0, (3, 1, 1, 1), 6, "max"),
        (-1, (1, 1, 1, 1, 1, 1), 8, "genus"),
        (1, (), 8, "n >= 1"),
    ],
)
def test_invalid_specs(g, k, p, needle):
    with pytest.raises(SpecError, match=re.escape(needle)):
        SurfaceSpec(g, k, p)


def test_shape_invariance_and_verlinde():
    for n in range(4, 7):
        for p in (6, 8, 10):
            for k in itertools.product(range(1, 3), repeat=n):
                if max(k) + 4 > p:
                    continue
                spec = SurfaceSpec(0, k, p)
                d = dim(spec)
                assert d == dim(spec, "balanced") == dim(spec, "right-comb")
                assert d == verlinde(0, k, p)


def test_all_trees_agree_on_five_points():
    spec = SurfaceSpec(0, (1, 2, 1, 2, 2), 10)
    counts = {len(enumerate_colorings(tree_spine(spec, t))) for t in all_trees(1, 4)}
    assert counts == {dim(spec)}


@pytest.mark.parametrize("g,k,p", [(1, (1, 1), 8), (1, (2, 2), 10), (2, (1, 1), 8), (1, (1, 1, 2), 10), (2, (2,), 8)])
def test_higher_genus_matches_verlinde(g, k, p):
    assert dim(SurfaceSpec(g, k, p)) == verlinde(g, k, p)


def test_exhaustive_admissibility():
    for n in (4, 5):
        for p in (8, 10):
            for k in itertools.product(range(1, 4), repeat=n):
                if max(k) + 4 > p:
                    continue
                spine = build_spine(SurfaceSpec(0, k, p))
                found = {c.colors for c in enumerate_colorings(spine)}
                for colors in itertools.product(range(4), repeat=len(spine.edges)):
                    from skeinrep.spine import Coloring

                    ok = all(level_admissible(*t, p) for t in Coloring(spine, colors).triples())
                    assert ok == (colors in found)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=4, max_size=6), st.sampled_from([8, 10, 12]))
def test_deterministic_order(k, p):
    spec = SurfaceSpec(0, tuple(k), p)
    a = [c.colors for c in enumerate_colorings(build_spine(spec))]
    b = [c.colors for c in enumerate_colorings(build_spine(SurfaceSpec(0, tuple(k), p)))]
    assert a == b == sorted(a)
