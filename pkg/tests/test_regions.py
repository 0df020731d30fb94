import pytest
from hypothesis import given, settings, strategies as st

from helpers import face_links_bruteforce
from toric_entropy.errors import ArgumentError
from toric_entropy.gf2 import BitVector
from toric_entropy.regions import (
    Region,
    chain_region,
    links_region,
    orientation_region,
    rect_region,
    region_stats,
)
from toric_entropy.surface import h_link, v_link


def test_rect_2x2_on_k4(tori):
    s = tori(4)
    r = rect_region(s, 0, 0, 2, 2)
    stats = region_stats(s, r)
    assert r.size == 12
    assert stats.boundary_links == 8
    assert stats.bulk_sites_A == 1
    assert stats.bulk_sites_B == 7
    assert stats.boundary_sites == 8


def test_single_face_region(tori):
    s = tori(2)
    r = rect_region(s, 0, 0, 1, 1)
    assert set(r.links) == {h_link(2, 0, 0), v_link(2, 0, 0), h_link(2, 1, 0), v_link(2, 0, 1)}
    stats = region_stats(s, r)
    assert stats.boundary_links == 4
    assert stats.bulk_sites_A == 0


@pytest.mark.parametrize("k", range(3, 9))
def test_largest_rectangle(tori, k):
    s = tori(k)
    stats = region_stats(s, rect_region(s, 0, 0, k - 1, k - 1))
    assert stats.bulk_sites_A == (k - 2) ** 2
    assert stats.boundary_links == 4 * (k - 1)


@pytest.mark.parametrize("k", range(2, 6))
def test_rect_links_match_face_bruteforce(tori, k):
    s = tori(k)
    for i0 in range(k):
        for j0 in range(k):
            for a in range(1, k):
                for b in range(1, k):
                    r = rect_region(s, i0, j0, a, b)
                    assert set(r.links) == face_links_bruteforce(k, i0, j0, a, b)
                    stats = region_stats(s, r)
                    assert r.size == 2 * a * b + a + b
                    assert stats.boundary_links == 2 * a + 2 * b
                    assert stats.bulk_sites_A == (a - 1) * (b - 1)
                    assert stats.boundary_sites == stats.boundary_links


@pytest.mark.parametrize("a,b", [(0, 1), (1, 3), (3, 3), (2, 0)])
def test_rect_rejects_wrapping(tori, a, b):
    with pytest.raises(ArgumentError):
        rect_region(tori(3), 0, 0, a, b)


def test_rect_needs_torus():
    from helpers import cube_document
    from toric_entropy.surface import load_surface

    with pytest.raises(ArgumentError):
        rect_region(load_surface(cube_document()), 0, 0, 1, 1)


def test_chain_regions(tori):
    assert chain_region(tori(3), "row", 0).links == [0, 2, 4]
    s = tori(2)
    assert set(chain_region(s, "row", 0).links) == {h_link(2, 0, 0), h_link(2, 0, 1)}
    for k in range(2, 7):
        for index in range(k):
            assert chain_region(tori(k), "row", index).size == k
            assert chain_region(tori(k), "col", index).size == k


@pytest.mark.parametrize("orientation,index", [("row", 3), ("col", -1), ("diag", 0)])
def test_chain_errors(tori, orientation, index):
    with pytest.raises(ArgumentError):
        chain_region(tori(3), orientation, index)


def test_orientation_regions(tori):
    assert orientation_region(tori(2), "v").links == [1, 3, 5, 7]
    assert orientation_region(tori(3), "h").links == [0, 2, 4, 6, 8, 10, 12, 14, 16]
    for k in range(2, 6):
        v = orientation_region(tori(k), "v")
        assert v.size == k * k
        assert v.complement() == orientation_region(tori(k), "h")


def test_single_link_stats(tori):
    for k in (2, 3, 5):
        s = tori(k)
        stats = region_stats(s, links_region(s, [5]))
        assert stats.bulk_sites_A == 0
        assert stats.boundary_sites == 2


def test_vertical_stats_k3(tori):
    s = tori(3)
    stats = region_stats(s, orientation_region(s, "v"))
    assert (stats.bulk_sites_A, stats.bulk_sites_B, stats.boundary_sites) == (0, 0, 9)


def test_links_region_range(tori):
    with pytest.raises(ArgumentError, match="link 99 out of range"):
        links_region(tori(2), [0, 1, 99])


def test_mask_length_checked(tori):
    with pytest.raises(ArgumentError):
        Region(BitVector(3), tori(2))


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 5), st.data())
def test_complement_properties(tori, k, data):
    s = tori(k)
    links = data.draw(st.sets(st.integers(0, s.n_links - 1)))
    r = links_region(s, links)
    c = r.complement()
    assert c.complement() == r
    a, b = region_stats(s, r), region_stats(s, c)
    assert (a.bulk_sites_A, a.bulk_sites_B) == (b.bulk_sites_B, b.bulk_sites_A)
    assert a.boundary_sites == b.boundary_sites
    assert a.boundary_sites + a.bulk_sites_A + a.bulk_sites_B == s.n_sites
