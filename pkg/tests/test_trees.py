import pytest
from hypothesis import given, settings, strategies as st

import oracles
from anharmonic.trees import (
    EmbeddedTree, InvalidTree, ZERO, boundary_word, canonical_form, check_proposition1,
    count_filtered, decoration_families, double_symmetric_trees, enumerate_double_symmetric,
    enumerate_rooted_symmetric, plane_trees, quartic_tree, sector_labels,
)


@pytest.mark.parametrize("n", range(1, 8))
def test_rooted_symmetric_matches_brute_force(n):
    assert len(enumerate_rooted_symmetric(n)) == oracles.rooted_symmetric_count(n)


def test_rooted_symmetric_small_values():
    assert [len(enumerate_rooted_symmetric(n)) for n in range(1, 7)] == [1, 2, 2, 6, 6, 22]


def test_plane_trees_are_little_schroeder():
    # plane trees without unary nodes, counted by leaves
    assert [len(plane_trees(n)) for n in range(1, 8)] == [1, 1, 3, 11, 45, 197, 903]


@pytest.mark.parametrize("axes", [False, True])
@pytest.mark.parametrize("E", [2, 4, 6, 8, 10])
def test_double_symmetric_split_sets_match_brute_force(E, axes):
    got = {t.splits() for t in double_symmetric_trees(E, ends_on_axes=axes)}
    if E == 2:
        assert got == {frozenset()}
        return
    assert got == oracles.double_symmetric_split_sets(E, 0 if axes else -1)


@pytest.mark.parametrize("E,axes,count", [
    (4, False, 3), (4, True, 1), (8, False, 11), (8, True, 3),
    (12, False, 45), (12, True, 11), (16, False, 197), (16, True, 45),
])
def test_double_symmetric_counts(E, axes, count):
    assert len(enumerate_double_symmetric(E, axes)) == count


@pytest.mark.parametrize("E", [6, 8, 10])
def test_double_symmetric_trees_carry_node_involutions(E):
    for t in double_symmetric_trees(E):
        maps = t.symmetry_maps()
        assert maps is not None
        r, i = maps
        assert all(r[r[v]] == v and i[i[v]] == v for v in r)


def test_canonical_form_separates_rotation_classes():
    E = 7
    sets = list(oracles.all_split_sets(E))
    classes = {}
    for s in sets:
        rots = [oracles.image(s, lambda j, k=k: (j + k) % E, E) for k in range(E)]
        classes[s] = min(tuple(sorted(r)) for r in rots)
    forms = {s: canonical_form(EmbeddedTree.from_splits(E, s)) for s in sets}
    for a in sets:
        for b in sets:
            assert (forms[a] == forms[b]) == (classes[a] == classes[b])


def test_canonical_form_star_and_caterpillar():
    star = EmbeddedTree.build(4, [(j, 4) for j in range(4)])
    assert canonical_form(star) == "v(eee)"
    cat = EmbeddedTree.from_splits(4, [{1, 2}])
    assert canonical_form(cat) != canonical_form(star)


def test_chiral_pair_has_distinct_forms():
    E = 6
    t = EmbeddedTree.from_splits(E, [{1, 2}, {1, 2, 3}])
    m = EmbeddedTree.from_splits(E, oracles.image(t.splits(), lambda j: (-j) % E, E))
    assert canonical_form(t) != canonical_form(m)


def test_degree_two_vertices_ignored_unless_decorated():
    t = EmbeddedTree.from_splits(6, [{1, 2}])
    v, w = next(e for e in t.edges() if min(e) >= t.ends)
    s = t.subdivide(v, w, kind="o")
    assert canonical_form(s) == canonical_form(t)
    assert canonical_form(s, decorated=True) != canonical_form(t, decorated=True)


def test_invalid_trees_rejected():
    with pytest.raises(InvalidTree):
        EmbeddedTree(3, ((3,), (3,), (3,), (0, 1)), ("end",) * 3 + ("v",))
    with pytest.raises(InvalidTree):
        # crossing branches: ends 0,2 on one vertex and 1,3 on the other
        EmbeddedTree.build(4, [(0, 4), (2, 4), (1, 5), (3, 5), (4, 5)])
    with pytest.raises(InvalidTree):
        canonical_form("v(ee)")


_SETS8 = sorted(oracles.all_split_sets(8), key=sorted)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(_SETS8), st.integers(0, 7))
def test_canonical_form_invariant_under_relabelling(splits, shift):
    t = EmbeddedTree.from_splits(8, splits)
    u = t.relabel(shift)
    if t.is_double_symmetric() or u.is_double_symmetric():
        shift = 4
        u = t.relabel(shift)
    assert canonical_form(u) == canonical_form(t)
    assert boundary_word(u, shift % 8) == boundary_word(t, 0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(_SETS8), st.data())
def test_canonical_form_invariant_under_subdivision(splits, data):
    t = EmbeddedTree.from_splits(8, splits)
    edge = data.draw(st.sampled_from(sorted(t.edges())))
    assert canonical_form(t.subdivide(*edge)) == canonical_form(t)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(_SETS8))
def test_splits_round_trip(splits):
    assert EmbeddedTree.from_splits(8, splits).splits() == splits


def test_filtered_counts():
    assert count_filtered(4) == 2
    assert count_filtered(4, decorated=True) == 3
    assert count_filtered(6) == 4
    assert count_filtered(6, decorated=True) == 5
    with pytest.raises(ValueError):
        count_filtered(8)


def test_decoration_families_are_powers_of_two():
    from anharmonic.trees import admissible_trees

    for d in (4, 6):
        for t in admissible_trees(d):
            n = decoration_families(t)
            assert n >= 1 and n & (n - 1) == 0


@pytest.mark.parametrize("n", range(6))
def test_quartic_trees_satisfy_conditions(n):
    t = quartic_tree(n)
    rep = check_proposition1(t, 4)
    assert rep.ok, rep.details
    assert sum(k == "o" for k in t.kinds) == n
    assert t.symmetry_maps() is not None


def test_equal_labels_across_an_edge_flagged():
    t = quartic_tree(1)
    bad = list(t.face_labels)
    bad[2] = bad[1]
    rep = check_proposition1(t.with_labels(bad), 4)
    assert "b" in rep.violated


def test_o_vertex_on_zero_face_flagged():
    t = quartic_tree(0)
    rep = check_proposition1(t.with_kinds(t.kinds[:-1] + ("o",)), 4)
    assert "c" in rep.violated


def test_wrong_end_count_flagged():
    t = quartic_tree(0)
    assert "e" in check_proposition1(t, 6).violated


def test_sextic_alternation_flagged():
    labels = sector_labels(6)
    star = EmbeddedTree.build(8, [(j, 8) for j in range(8)], ["end"] * 8 + ["x"], labels)
    assert check_proposition1(star, 6).clauses["alternating"]
    odd = list(labels)
    odd[1] = ZERO
    rep = check_proposition1(star.with_labels(odd), 6)
    assert "alternating" in rep.violated
    with pytest.raises(ValueError):
        sector_labels(5)
