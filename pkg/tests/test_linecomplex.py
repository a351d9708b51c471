from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from anharmonic.linecomplex import (
    INF_GON, InfeasibleComplex, complex_from_tree, exponential_complex, propagate_labels,
    symmetric_complexes, validate_line_complex,
)
from anharmonic.trees import EmbeddedTree

SYMMETRIC = symmetric_complexes()


@pytest.mark.parametrize("arm", [1, 2, 3, 5])
def test_exponential_chain(arm):
    L = exponential_complex(arm)
    assert validate_line_complex(L).ok
    assert L.n_vertices == 2 * arm + 1
    assert L.face_kind == (INF_GON, INF_GON)
    assert L.kinds.count("o") + L.kinds.count("x") == L.n_vertices


def test_symmetric_instances_exist_and_validate():
    assert len(SYMMETRIC) == 2
    for L in SYMMETRIC:
        rep = validate_line_complex(L)
        assert rep.ok, rep.details
        assert L.q == 5
        assert sum(k == INF_GON for k in L.face_kind) == 12


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(range(len(SYMMETRIC))), st.data())
def test_labels_determined_by_one_face(i, data):
    L = SYMMETRIC[i]
    f = data.draw(st.integers(0, len(L.face_kind) - 1))
    again = propagate_labels(L, {f: L.face_label[f]})
    assert again.face_label == L.face_label


def test_conflicting_seeds_detected():
    L = SYMMETRIC[0]
    inf = [k for k in range(len(L.face_kind)) if L.face_kind[k] == INF_GON]
    f, g = inf[0], inf[1]
    wrong = next(b for b in L.base if b != L.face_label[g])
    rep = validate_line_complex(propagate_labels(L, {f: L.face_label[f], g: wrong}))
    assert not rep.ok
    assert {"distinct", "order"} & set(rep.violated)


def test_shifted_seed_changes_sector_values():
    # one seed fixes everything, so a different seed moves the sector values
    L = SYMMETRIC[0]
    f = next(k for k in range(len(L.face_kind)) if L.face_kind[k] == INF_GON)
    other = next(b for b in L.base if b != L.face_label[f])
    moved = propagate_labels(L, {f: other})
    assert validate_line_complex(moved).ok
    assert moved.face_label != L.face_label


def test_repeated_label_around_vertex():
    L = exponential_complex()
    rep = validate_line_complex(L.with_labels(("0", "0")))
    assert "distinct" in rep.violated


def test_repeated_base_label():
    L = exponential_complex()
    assert "distinct" in validate_line_complex(replace(L, base=("0", "0"))).violated


def test_same_kind_neighbours_not_bipartite():
    L = exponential_complex()
    u, _, w, _ = L.edges[0]
    kinds = list(L.kinds)
    kinds[w] = kinds[u]
    rep = validate_line_complex(replace(L, kinds=tuple(kinds)))
    assert "bipartite" in rep.violated


def test_broken_slot_detected():
    L = exponential_complex()
    slots = [list(r) for r in L.slots]
    u, su, _, _ = L.edges[0]
    slots[u][su] = None
    rep = validate_line_complex(replace(L, slots=tuple(map(tuple, slots))))
    assert "edges" in rep.violated


def test_closed_infinite_face_rejected():
    L = exponential_complex()
    rep = validate_line_complex(replace(L, face_open=(False, True)))
    assert "faces" in rep.violated


def test_infeasible_labels_raise():
    t = EmbeddedTree.build(2, [(0, 2), (2, 1)])
    with pytest.raises(InfeasibleComplex):
        complex_from_tree(t, ("0", "0"), ("0", "inf"))
