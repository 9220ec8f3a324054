import random

import pytest
from hypothesis import given, strategies as st

from cfguard.funnels import classify_funnel, ruler
from cfguard.geometry import sees
from cfguard.instances import GenConfig, gallery, gallery_base, random_weak_visibility_polygon
from cfguard.verification import v2p_verify
from cfguard.weakvis import (
    NotWeaklyVisible, colour_set, colour_weak_visibility, is_weakly_visible, log2_ceil,
    max_funnels, palette_bound,
)

from conftest import convex_ngon, random_interior_point


def wv(seed, n=None):
    n = n or random.Random(seed).randint(8, 40)
    return random_weak_visibility_polygon(GenConfig(seed=seed, kind="weakvis", n=n))


def test_convex_weakly_visible_from_every_edge():
    P = convex_ngon(7)
    assert all(is_weakly_visible(P, e) for e in range(P.n))


def test_funnel_weakly_visible_from_base():
    F = classify_funnel(gallery("fig3"))
    assert is_weakly_visible(F.polygon, F.base[0])


def test_fig5_weakly_visible_and_eight_funnels():
    P = gallery("fig5")
    e = gallery_base("fig5", P)
    assert is_weakly_visible(P, e)
    assert max_funnels(P, e).m == 8


def test_not_weakly_visible_raises():
    P = gallery("fig7b")
    e = next(e for e in range(P.n) if not is_weakly_visible(P, e))
    with pytest.raises(NotWeaklyVisible):
        max_funnels(P, e)


def test_funnel_has_one_max_funnel():
    F = classify_funnel(gallery("fig2"))
    mf = max_funnels(F.polygon, F.base[0])
    assert mf.m == 1 and mf.apices == [F.apex]


def test_colour_sets_disjoint():
    K = 5
    sets = [colour_set(j, K) for j in range(1, 5)]
    seen = set()
    for cs in sets:
        assert not set(cs.left) & set(cs.right)
        assert not seen & set(cs.colours)
        seen |= set(cs.colours)


@given(st.integers(0, 10 ** 6))
def test_max_funnel_structure(seed):
    P, e = wv(seed)
    mf = max_funnels(P, e)
    u, v = mf.base
    assert set(mf.membership) == set(range(P.n))
    assert all(len(fs) == mf.m for fs in (mf.membership[u], mf.membership[v]))
    # apices run clockwise from u
    keys = [(u - a) % P.n for a in mf.apices]
    assert keys == sorted(keys)
    # maximal by inclusion
    sets = [set(l) | set(r) for l, r in mf.chains]
    for i, a in enumerate(sets):
        assert not any(a < b for j, b in enumerate(sets) if j != i)
    # association: the highest set index among the funnels holding a vertex
    for w, fs in mf.membership.items():
        best = max(ruler(i + 1) for i in fs)
        assert ruler(mf.association[w] + 1) == best
        assert [ruler(i + 1) for i in fs].count(best) == 1


def test_fig5_set_indices_follow_ruler():
    P = gallery("fig5")
    mf = max_funnels(P, gallery_base("fig5", P))
    assert [mf.set_index(i) for i in range(mf.m)] == [1, 2, 1, 3, 1, 2, 1, 4]
    g = colour_weak_visibility(P, mf.base[0], mfs=mf)
    assert len(g.palette) == 2 * log2_ceil(P.n) * 4
    assert v2p_verify(P, g).ok


def test_single_funnel_colouring():
    F = classify_funnel(gallery("fig3"))
    P = F.polygon
    g = colour_weak_visibility(P, F.base[0])
    assert len(set(g.assignments.values())) <= 2 * log2_ceil(P.n)
    assert F.apex not in g.assignments
    assert v2p_verify(P, g).ok


@given(st.integers(0, 10 ** 6))
def test_colouring_verifies_and_avoids_apices(seed):
    P, e = wv(seed, random.Random(seed).randint(8, 30))
    mf = max_funnels(P, e)
    g = colour_weak_visibility(P, e, mfs=mf)
    assert not set(mf.apices) & set(g.assignments)
    assert len(set(g.assignments.values())) <= palette_bound(P.n, mf.m)
    assert v2p_verify(P, g).ok


@given(st.integers(0, 10 ** 6))
def test_visible_max_funnels_are_consecutive(seed):
    P, e = wv(seed)
    mf = max_funnels(P, e)
    o = random_interior_point(P, random.Random(seed))
    hit = [i for i, (l, r) in enumerate(mf.chains)
           if any(sees(P, o, P[w]) for w in set(l) | set(r) if w != mf.apices[i])]
    assert hit
    assert hit == list(range(hit[0], hit[-1] + 1))
