from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdaccs.cube_category import CubeMap, compose, enumerate_hom, transverse_degeneracy
from hdaccs.cubical_sets import (
    CellInstance,
    ComplexError,
    DeterminacyError,
    Edge,
    LabelledCubicalSet,
    check_action_closed,
    coskeleton_1,
    cube_skeleton,
    enumerate_shells,
    faces,
    freely_generate,
    is_isomorphic,
    presheaf_act,
    standard_cube,
    truncate,
)
from hdaccs.label_objects import TAU, Alphabet

A = Alphabet.from_names(["a", "b", "c"])


def test_standard_cube_counts():
    K = standard_cube(("a", "b"), alphabet=A)
    assert K.counts() == [4, 4, 1]
    by_coord = {}
    for k, e in K.edges.items():
        by_coord.setdefault(e.tgt ^ e.src, set()).add(e.label)
    assert by_coord == {1: {"a"}, 2: {"b"}}
    assert standard_cube(("a",), alphabet=A).counts() == [2, 1]
    assert standard_cube(("a", "b"), "hat", alphabet=A).counts() == [4, 4, 4]


@pytest.mark.parametrize("n", range(5))
def test_standard_cube_cell_counts(n):
    K = standard_cube(("a",) * n, alphabet=A)
    assert K.counts() == [comb(n, p) * 2 ** (n - p) for p in range(max(n, 0) + 1)][: len(K.counts())]


def test_truncate():
    K = standard_cube(("a", "b", "c"), alphabet=A)
    assert truncate(K, 1).counts() == [8, 12]
    assert truncate(K, K.max_dim) == K
    assert truncate(truncate(K, 2), 1) == truncate(K, 1)
    with pytest.raises(ComplexError):
        truncate(K, 4)


def test_closure_invariant_enforced():
    K = standard_cube(("a", "b", "c"), alphabet=A)
    bad = K.cells[3]
    with pytest.raises(ComplexError):
        K.with_(cells={2: frozenset(), 3: bad})


def test_box_coskeleton_of_square():
    K = cube_skeleton(("a", "b"), A)
    C = coskeleton_1(K, "box", 2)
    assert len(C.cells[2]) == 2
    assert {x.vertices for x in C.cells[2]} == {(0, 1, 2, 3), (0, 2, 1, 3)}
    T = coskeleton_1(cube_skeleton((TAU, TAU), A), "box", 2)
    assert (0, 2, 1, 3) in {x.vertices for x in T.cells[2]}
    assert truncate(C, 1) == K.with_(max_dim=1)


@pytest.mark.parametrize("n", [2, 3])
def test_hat_coskeleton_equals_free_hat_cube(n):
    K = cube_skeleton((TAU,) * n, A)
    C = coskeleton_1(K.with_(model="hat"), "hat", n)
    F = standard_cube((TAU,) * n, "hat", alphabet=A)
    assert C.cells == F.cells


def test_hat_coskeleton_counts_dimension_four():
    K = cube_skeleton((TAU,) * 4, A)
    C = coskeleton_1(K.with_(model="hat"), "hat", 4)
    assert C.counts() == [16, 32, 96, 528, 7128]


def test_enumerate_shells():
    K = standard_cube(("a", "b"), alphabet=A)
    assert enumerate_shells(K, 2) == []
    C = coskeleton_1(cube_skeleton(("a", "b", "c"), A), "box", 2)
    shells = enumerate_shells(C, 2)
    assert sum(1 for x in shells if x.vertices == tuple(range(8))) == 1
    U = cube_skeleton((TAU,) * 3, A).with_(model="hat")
    U2 = coskeleton_1(U, "hat", 2)
    assert len(enumerate_shells(U2, 2)) == len(enumerate_hom("hat", 3, 3))


def test_freely_generate():
    K = standard_cube(("a", "b"), alphabet=A)
    H = freely_generate(K, "hat")
    assert len(H.cells[2]) == 4
    assert truncate(H, 1).edges == K.edges and H.vertices == K.vertices
    assert freely_generate(standard_cube(("a",), alphabet=A), "hat").counts() == [2, 1]
    assert check_action_closed(H)
    with pytest.raises(ComplexError):
        freely_generate(H, "hat")


def test_freely_generate_detects_collisions():
    K = standard_cube(("a", "b"), alphabet=A)
    x = next(iter(K.cells[2]))
    swapped = presheaf_act(CubeMap(2, 2, (0, 2, 1, 3)), x)
    K2 = K.with_(cells={2: frozenset({x, swapped})})
    with pytest.raises(DeterminacyError):
        freely_generate(K2, "hat")


def test_presheaf_action():
    K = standard_cube(("a", "b"), alphabet=A)
    x = next(iter(K.cells[2]))
    assert presheaf_act(CubeMap.identity(2), x) == x
    y = presheaf_act(transverse_degeneracy(1, 2), x)
    # coordinate-1 edges of the pulled-back square carry a and b
    assert (K.edges[y.edges[0]].label, K.edges[y.edges[3]].label) == ("a", "b")
    with pytest.raises(ComplexError):
        presheaf_act(transverse_degeneracy(1, 2), x, model="box")


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_presheaf_functoriality(data):
    H = standard_cube(("a", "b", "c"), "hat", alphabet=A)
    p = data.draw(st.integers(2, 3))
    x = data.draw(st.sampled_from(sorted(H.cells[p])))
    q = data.draw(st.integers(1, p))
    r = data.draw(st.integers(1, q))
    mu = data.draw(st.sampled_from(enumerate_hom("hat", q, p)))
    nu = data.draw(st.sampled_from(enumerate_hom("hat", r, q)))
    assert presheaf_act(nu, presheaf_act(mu, x)) == presheaf_act(compose(nu, mu), x)


def test_isomorphism():
    K = standard_cube(("a", "b"), alphabet=A)
    assert is_isomorphic(K, K)
    at, ta = standard_cube(("a", TAU), alphabet=A), standard_cube((TAU, "a"), alphabet=A)
    assert not is_isomorphic(at, ta)
    assert is_isomorphic(at, ta, labels=False)
    hat_at, hat_ta = (standard_cube(w, "hat", alphabet=A) for w in (("a", TAU), (TAU, "a")))
    assert is_isomorphic(hat_at, hat_ta)


def test_determinacy_and_injectivity():
    for model in ("box", "sym"):
        K = standard_cube(("a", "b", "c"), model, alphabet=A)
        for p in range(2, 4):
            assert all(len(set(x.vertices)) == len(x.vertices) for x in K.cells[p])
    H = standard_cube(("a", "b"), "hat", alphabet=A)
    # transverse pullbacks have repeated vertices in the hat model
    assert any(len(set(x.vertices)) < 4 for x in H.cells[2])


def test_faces_are_cells():
    H = standard_cube(("a", "b", "c"), "hat", alphabet=A)
    for x in H.cells[3]:
        assert all(y in H.cells[2] for y in faces(x))


def test_bad_edges_rejected():
    with pytest.raises(ComplexError):
        LabelledCubicalSet("box", 1, A, {0: None}, {0: Edge(0, 1, "a")})
    with pytest.raises(ComplexError):
        LabelledCubicalSet("box", 1, A, {0: None, 1: None}, {0: Edge(0, 1, "zzz")})
    with pytest.raises(ComplexError):
        LabelledCubicalSet("box", 2, A, {0: None}, {}, {2: {CellInstance(2, (0, 0, 0, 0), (0, 0, 0, 0))}})
