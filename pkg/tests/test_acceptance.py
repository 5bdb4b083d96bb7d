"""One test per acceptance criterion, each within its time budget."""
import itertools
import time
from contextlib import contextmanager
from math import comb

from hdaccs.ccs_semantics import denote, directed_coskeleton, verify_cavavraiment
from hdaccs.ccs_syntax import parse_ccs
from hdaccs.cube_category import (
    CATEGORIES,
    CubeMap,
    check_moore_relations,
    compose_all,
    enumerate_hom,
    generators,
    is_shell_complete,
    monoid_closure,
    pas_assez_gd_counterexample,
    symmetry_map,
    transverse_degeneracy,
)
from hdaccs.cubical_sets import cube_skeleton, freely_generate, is_isomorphic, standard_cube
from hdaccs.flow_realization import check_maximal_label_invariance
from hdaccs.label_objects import Alphabet, EdgeLabelling, is_realizable, pull_back, realizable
from hdaccs.verify import CORPUS, suite_flow, suite_tensor


@contextmanager
def budget(name, seconds):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        took = time.perf_counter() - start
        print(f"{'PASS' if ok and took < seconds else 'FAIL'} {name} ({took:.2f}s, limit {seconds}s)")
    assert took < seconds, f"{name} took {took:.1f}s"


def test_criterion_01_hom_set_counts():
    with budget("criterion 1: hom-set counts", 1):
        s1, g1 = symmetry_map(1, 2), transverse_degeneracy(1, 2)
        assert set(enumerate_hom("hat", 2, 2)) == {CubeMap.identity(2), s1, g1, compose_all(s1, g1)}
        for n in range(5):
            for cat in CATEGORIES:
                assert len(enumerate_hom(cat, 0, n)) == 2 ** n
            assert len({len(enumerate_hom(cat, 1, n)) for cat in CATEGORIES}) == 1


def test_criterion_02_shell_completeness():
    with budget("criterion 2: shell-completeness", 60):
        for p, q in ((2, 2), (2, 3), (3, 3)):
            assert is_shell_complete("hat", p, q).complete
        box = is_shell_complete("box", 2, 2)
        assert not box.complete and CubeMap(2, 2, (0, 2, 1, 3)) in box.witnesses
        f = pas_assez_gd_counterexample()
        bar = is_shell_complete("bar", 3, 3)
        closure = monoid_closure(generators(3), 3)
        # Known to fail: the proposed counterexample equals s2 g2 s1 g1 s2, so it lies in
        # the closure and bar(3,3) = hat(3,3).  See the decisions ledger.
        assert not bar.complete, f"bar is shell-complete at (3,3); |closure| = {len(closure)}"
        assert f in bar.witnesses
        assert f not in closure


def test_criterion_03_relations():
    with budget("criterion 3: generator relations", 5):
        for n in range(2, 5):
            results = check_moore_relations(n)
            names = {r.name for r in results}
            assert any(name.startswith("s") and "d" in name for name in names)
            assert any(name.startswith("g") and "d" in name for name in names)
            assert all(r.ok for r in results), [r.name for r in results if not r.ok]


def test_criterion_04_directed_coskeleton_recovers_cubes():
    with budget("criterion 4: directed coskeleton of word cubes", 30):
        alphabet = Alphabet.from_names(["a"])
        letters = ("a", "~a", "tau")
        for n in range(1, 5):
            for w in itertools.product(letters, repeat=n):
                C = directed_coskeleton(cube_skeleton(w, alphabet), n)
                assert C.counts() == [comb(n, p) * 2 ** (n - p) for p in range(n + 1)]
                assert is_isomorphic(C, standard_cube(w, alphabet=alphabet))


def test_criterion_05_marked_coskeleton():
    with budget("criterion 5: marked coskeleton", 120):
        cases = [(("a",), ("~a",)), (("a", "b"), ("~a",)), (("a", "a"), ("~a",)),
                 (("a", "b"), ("~a", "~b")), (("a", "a"), ("~a", "~a"))]
        for m_word, n_word in cases:
            assert verify_cavavraiment(m_word, n_word).isomorphic
        r = verify_cavavraiment(("a", "a"), ("~a", "~a"))
        assert r.strictly_smaller
        # vertex order (0,0), (1,0), (0,1), (1,1); images (0,0,0,0), (1,0,1,0), (1,0,0,1), (1,1,1,1)
        assert any(x.vertices == (0, 0b0101, 0b1001, 0b1111) for x in r.extra_cells)


def test_criterion_06_free_hat_of_box_denotation():
    with budget("criterion 6: denotation corpus", 120):
        covered = set()
        for text in CORPUS:
            t = parse_ccs(text)
            covered |= {type(s).__name__ for s in _subterms(t)}
            fuels = range(1, 9) if "rec" in text else (8,)
            for fuel in fuels:
                box, hat = denote(t, "box", 3, fuel), denote(t, "hat", 3, fuel)
                assert box.converged == hat.converged
                assert is_isomorphic(freely_generate(box.complex, "hat"), hat.complex), (text, fuel)
        assert covered >= {"Nil", "Prefix", "Restrict", "Sum", "Par", "Rec", "Var"}
        assert len(CORPUS) >= 8


def _subterms(t):
    yield t
    for attr in ("body", "left", "right"):
        if hasattr(t, attr):
            yield from _subterms(getattr(t, attr))


def test_criterion_07_maximal_paths():
    with budget("criterion 7: maximal-path label invariance", 10):
        for text in CORPUS:
            for model in ("box", "hat"):
                assert check_maximal_label_invariance(denote(parse_ccs(text), model).complex), (text, model)


def test_criterion_08_boundary_flow():
    with budget("criterion 8: flow of the cube boundary", 5):
        checks = suite_flow()[:3]
        assert all(c.ok for c in checks), [c.name for c in checks if not c.ok]


def test_criterion_09_tensor_laws():
    with budget("criterion 9: tensor laws", 120):
        checks = suite_tensor()
        assert any("associativity" in c.name for c in checks)
        assert all(c.ok for c in checks), [c.name for c in checks if not c.ok]


def test_criterion_10_realizability_oracle():
    with budget("criterion 10: realizability oracle", 5):
        coord = EdgeLabelling(2, ("b", "a", "a", "b"))
        pulled = EdgeLabelling(2, ("a", "a", "b", "b"))
        distinct = EdgeLabelling(2, ("a", "b", "c", "d"))
        assert [realizable("hat", x) is not None for x in (coord, pulled, distinct)] == [True, True, False]
        assert [realizable("box", x) is not None for x in (coord, pulled, distinct)] == [True, False, False]
        for p in (1, 2, 3):
            for w in set(itertools.product("abc"[:p], repeat=p)):
                for nu in enumerate_hom("hat", p, p):
                    lam = pull_back(EdgeLabelling.of_word(w), nu)
                    assert is_realizable("hat", lam)
                    for q in range(1, p + 1):
                        for mu in enumerate_hom("hat", q, p):
                            assert is_realizable("hat", pull_back(lam, mu))
