import pytest
from hypothesis import given, strategies as st

from ellhall.lattice import (angle_compare, angle_key, canonical_path, delta,
                             det, enumerate_convex_paths, epsilon, in_cone,
                             interior_points, interior_points_pick,
                             interior_points_scan, is_canonical_path,
                             path_class, sl2_apply)

points = st.tuples(st.integers(-12, 12), st.integers(-12, 12)).filter(
    lambda v: v != (0, 0))


def test_delta_examples():
    assert delta((2, 4)) == 2
    assert delta((1, 0)) == 1
    assert delta((-6, 9)) == 3
    with pytest.raises(ValueError):
        delta((0, 0))


def test_epsilon_examples():
    assert epsilon((1, 0), (0, 1)) == 1
    assert epsilon((0, 1), (1, 0)) == -1
    assert epsilon((1, 2), (2, 1)) == -1
    with pytest.raises(ValueError):
        epsilon((1, 2), (2, 4))


@given(points, points)
def test_epsilon_antisymmetric(x, y):
    if det(x, y) != 0:
        assert epsilon(x, y) == -epsilon(y, x)


def test_interior_point_examples():
    assert interior_points((1, 0), (0, 1)) == 0
    assert interior_points((1, 0), (0, 4)) == 0
    assert interior_points((3, 0), (0, 3)) == 1
    with pytest.raises(ValueError):
        interior_points((1, 1), (2, 2))


@given(points, points)
def test_pick_equals_scan(x, y):
    if det(x, y) != 0:
        assert interior_points_pick(x, y) == interior_points_scan(x, y)


def test_angle_examples():
    assert angle_compare((0, 1), (1, 0)) == 1     # pi vs pi/2
    assert angle_compare((1, 1), (1, 2)) == -1
    assert angle_compare((3, 3), (1, 1)) == 0


@given(points, points, points)
def test_angle_total_preorder(x, y, z):
    if angle_compare(x, y) <= 0 and angle_compare(y, z) <= 0:
        assert angle_compare(x, z) <= 0


@given(points, points)
def test_angle_ties_are_rays(x, y):
    if angle_compare(x, y) == 0:
        assert det(x, y) == 0 and (x[0] * y[0] >= 0 and x[1] * y[1] >= 0)


def test_sl2_examples():
    ident = ((1, 0), (0, 1))
    assert sl2_apply(ident, (5, -3)) == (5, -3)
    assert sl2_apply(((0, -1), (1, 0)), (1, 0)) == (0, 1)
    assert sl2_apply(((1, 1), (0, 1)), (0, 1)) == (1, 1)
    with pytest.raises(ValueError):
        sl2_apply(((1, 0), (0, 2)), (1, 1))


class TestPaths:
    def test_enumeration_examples(self):
        assert enumerate_convex_paths((0, 1)) == [((0, 1),)]
        got = set(enumerate_convex_paths((1, 1)))
        assert got == {((1, 1),), ((0, 1), (1, 0))}
        got2 = set(enumerate_convex_paths((0, 2)))
        assert got2 == {((0, 2),), ((0, 1), (0, 1))}

    def test_partition_count_on_ray(self):
        # pure torsion class: one path per partition of the degree
        for d in (1, 2, 3, 4, 5):
            paths = enumerate_convex_paths((0, d))
            from ellhall.dvr_hall import partitions
            assert len(paths) == len(list(partitions(d)))

    def test_canonicalization(self):
        assert canonical_path([(1, 0), (0, 1)]) == ((0, 1), (1, 0))
        assert canonical_path([(0, 1), (0, 2), (1, 3)]) == ((0, 2), (0, 1), (1, 3))
        assert is_canonical_path(((0, 2), (0, 1), (1, 3)))
        assert not is_canonical_path(((0, 1), (0, 2)))
        with pytest.raises(ValueError):
            canonical_path([(0, 0)])

    def test_all_emitted_paths_canonical_and_on_target(self):
        for target in [(2, 1), (1, 2), (2, 2), (-1, 1)]:
            for cone in ("positive", "all"):
                if not in_cone(target, cone):
                    continue
                for p in enumerate_convex_paths(target, cone):
                    assert is_canonical_path(p)
                    assert path_class(p) == target
                    assert all(in_cone(s, cone) for s in p)

    def test_deterministic_order(self):
        assert enumerate_convex_paths((2, 1)) == enumerate_convex_paths((2, 1))

    @pytest.mark.parametrize("g", [((1, 1), (0, 1)), ((0, -1), (1, 0)),
                                   ((2, 1), (1, 1))])
    def test_sl2_invariance_full_plane(self, g):
        target = (1, 2)
        bound = 4
        paths = enumerate_convex_paths(target, "all", bound)
        image_target = sl2_apply(g, target)
        mapped = {canonical_path([sl2_apply(g, s) for s in p]) for p in paths}
        assert len(mapped) == len(paths)
        img_bound = max(sum(abs(s[0]) + abs(s[1]) for s in p) for p in mapped)
        # images are valid convex paths to the transformed target
        big = enumerate_convex_paths(image_target, "all", img_bound)
        assert mapped <= set(big)
        # and the count is preserved pulling back
        ginv = ((g[1][1], -g[0][1]), (-g[1][0], g[0][0]))
        back = {canonical_path([sl2_apply(ginv, s) for s in p]) for p in mapped}
        assert back == set(paths)
