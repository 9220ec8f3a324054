from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cfguard.funnels import classify_funnel, guard_funnel_optimal
from cfguard.geometry import SimplePolygon, is_weakly_visible
from cfguard.instances import (
    GALLERY_BASE, GALLERY_IDS, GenConfig, RequirementsViolated, bowtie_labels,
    bowtie_with_bowls, gallery, gallery_base, generate, random_deep_funnel, random_funnel,
    random_simple_polygon, random_weak_visibility_polygon, tiny_funnels,
)


@pytest.mark.parametrize("name", GALLERY_IDS)
def test_gallery_polygons_are_simple_ccw(name):
    P = gallery(name)
    assert isinstance(P, SimplePolygon)
    assert P.area() > 0


@pytest.mark.parametrize("name", sorted(GALLERY_BASE))
def test_gallery_base_is_an_edge(name):
    P = gallery(name)
    e = gallery_base(name, P)
    # direction may flip when the ring is normalised to counter-clockwise
    assert set(P.edge(e)) == set(GALLERY_BASE[name])


def test_gallery_unknown_name():
    with pytest.raises(KeyError):
        gallery("nope")


def test_fig5_weakly_visible_from_base():
    P = gallery("fig5")
    assert is_weakly_visible(P, gallery_base("fig5", P))


@given(st.integers(0, 10 ** 6), st.integers(2, 9), st.integers(2, 9))
def test_random_funnel_chain_sizes(seed, k, m):
    F = random_funnel(GenConfig(seed=seed, kind="funnel", k=k, m=m))
    assert (len(F.left_chain), len(F.right_chain)) == (k, m)
    G = classify_funnel(F.polygon, F.base[0])
    assert G is not None and G.apex == F.apex


@given(st.integers(0, 10 ** 6), st.integers(2, 40))
def test_deep_funnel_needs_many_guards(seed, k):
    F = random_deep_funnel(GenConfig(seed=seed, kind="deep", k=k, m=k + 1))
    assert (len(F.left_chain), len(F.right_chain)) == (k, k + 1)
    # with balanced chains rising by at least 2.5 per vertex a guard covers a
    # bounded stretch of both
    assert len(guard_funnel_optimal(F)) >= (2 * k) // 6


@given(st.integers(0, 10 ** 6), st.integers(4, 30))
def test_random_weakvis(seed, n):
    P, e = random_weak_visibility_polygon(GenConfig(seed=seed, kind="weakvis", n=n))
    assert is_weakly_visible(P, e)


@given(st.integers(0, 10 ** 6), st.integers(3, 30))
def test_random_simple_has_n_vertices(seed, n):
    P = random_simple_polygon(GenConfig(seed=seed, n=n))
    assert P.n == n


@pytest.mark.parametrize("kind", ["funnel", "deep", "weakvis", "simple"])
def test_generate_is_deterministic(kind):
    cfg = GenConfig(seed=7, kind=kind, n=15)
    (P, b), (Q, c) = generate(cfg), generate(cfg)
    assert P.vertices == Q.vertices and b == c


def test_generate_rejects_unknown_kind():
    with pytest.raises(ValueError):
        generate(GenConfig(kind="star"))


def test_tiny_funnels_are_funnels():
    fs = list(tiny_funnels(6))
    assert fs
    for F in fs:
        assert F.polygon.n <= 6
        assert classify_funnel(F.polygon, F.base[0]) is not None


def test_bowtie_audit_passes_default():
    P = bowtie_with_bowls()
    labels = bowtie_labels(P)
    assert labels is not None and len(labels) == P.n


def test_bowtie_wide_doors_fail_audit():
    with pytest.raises(RequirementsViolated):
        bowtie_with_bowls(door_width=Fraction(1, 50))


def test_bowtie_rejects_nonpositive():
    with pytest.raises(ValueError):
        bowtie_with_bowls(door_width=0)
