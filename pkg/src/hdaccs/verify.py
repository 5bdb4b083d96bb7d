"""Verification suites driven by ``hdaccs verify``."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .ccs_semantics import denote, directed_coskeleton, tensor, verify_cavavraiment
from .ccs_syntax import parse_ccs
from .cube_category import (
    CubeMap,
    belongs_to,
    check_moore_relations,
    conj0_experiment,
    enumerate_hom,
    extremal_path_correspondence,
    faces_of,
    generators,
    is_shell_complete,
    monoid_closure,
    pas_assez_gd_counterexample,
)
from .cubical_sets import cube_skeleton, freely_generate, is_isomorphic, standard_cube, truncate
from .flow_realization import (
    bad_realization,
    check_maximal_label_invariance,
    class_count_table,
    labels_class_invariant,
    path_classes,
)
from .label_objects import Alphabet

# Terms covering every constructor; the last ones have non-converging recursion.
CORPUS = (
    "nil",
    "a.nil || ~a.nil",
    "(nu a)(a.nil || ~a.nil)",
    "a.nil + b.nil",
    "a.nil || b.nil",
    "a.b.nil || ~a.nil",
    "tau.a.nil || ~a.nil",
    "(a.nil + b.nil) || ~a.nil",
    "a.a.nil || ~a.~a.nil",
    "(nu b)(a.b.nil || ~b.nil)",
    "a.nil || ~a.nil || a.nil",
    "a.nil || (~a.nil || a.~a.nil)",
    "rec x. (a.nil || ~a.nil)",
    "rec x. a.x",
    "rec x. (a.x + b.nil)",
)

RECO_LETTERS = ("a", "~a", "tau")

TENSOR_PAIRS = tuple(
    dict.fromkeys(
        (w1[:m], w2[:n])
        for m in range(1, 4)
        for n in range(1, 5 - m)
        for w1, w2 in ((("a", "tau", "~a"), ("~a", "a", "tau")), (("a", "a", "a"), ("~a", "~a", "~a")))
    )
)
TENSOR_TRIPLES = (
    (("a",), ("~a",), ("a",)),
    (("a",), ("~a",), ("a", "~a")),
    (("a",), ("~a", "tau"), ("a",)),
    (("a", "tau"), ("~a",), ("a",)),
)


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.suite}: {self.name}{tail}"


def _table(f: CubeMap) -> str:
    return "(" + ",".join(map(str, f.table)) + ")"


def suite_shell() -> list[Check]:
    out = []
    for p, q in ((2, 2), (2, 3), (3, 3)):
        r = is_shell_complete("hat", p, q)
        out.append(Check("shell", f"hat shell-complete at ({p},{q})", r.complete, f"{r.shells} shells"))
    r = is_shell_complete("box", 2, 2)
    swap = CubeMap(2, 2, (0, 2, 1, 3))
    out.append(
        Check(
            "shell",
            "box not shell-complete at (2,2), swap among witnesses",
            not r.complete and swap in r.witnesses,
            "witnesses " + " ".join(map(_table, r.witnesses)),
        )
    )
    f = pas_assez_gd_counterexample()
    faces_ok = all(belongs_to("bar", g) for g in faces_of(f).values())
    out.append(Check("shell", "counterexample map has all faces in bar", faces_ok, _table(f)))
    r33 = is_shell_complete("bar", 3, 3)
    out.append(
        Check(
            "shell",
            "bar not shell-complete at (3,3), counterexample among witnesses",
            not r33.complete and f in r33.witnesses,
            f"{len(r33.witnesses)} witnesses",
        )
    )
    closure = monoid_closure(generators(3), 3)
    out.append(
        Check("shell", "counterexample map outside the closure of the generators on [3]", f not in closure,
              f"closure size {len(closure)}")
    )
    r44 = is_shell_complete("bar", 4, 4)
    hat44 = len(enumerate_hom("hat", 4, 4))
    out.append(
        Check(
            "shell",
            "bar not shell-complete at (4,4)",
            not r44.complete,
            f"{len(r44.witnesses)} witnesses, first {_table(r44.witnesses[0]) if r44.witnesses else '-'}, "
            f"|bar(4,4)|={len(enumerate_hom('bar', 4, 4))} |hat(4,4)|={hat44}",
        )
    )
    return out


def suite_moore() -> list[Check]:
    out = []
    for n in range(2, 5):
        bad = [r.name for r in check_moore_relations(n) if not r.ok]
        out.append(Check("moore", f"generator relations on [{n}]", not bad, ", ".join(bad)))
        rep = extremal_path_correspondence(n)
        out.append(Check("moore", f"extremal paths of [{n}] match permutations", rep.ok))
    return out


def suite_cosk() -> list[Check]:
    out = []
    alphabet = Alphabet.from_names(["a"])
    for n in range(1, 5):
        bad = []
        for w in itertools.product(RECO_LETTERS, repeat=n):
            C = directed_coskeleton(cube_skeleton(w, alphabet), n)
            S = standard_cube(w, "box", alphabet=alphabet)
            if C.cells != S.cells or not is_isomorphic(C, S):
                bad.append(w)
        out.append(Check("cosk", f"directed coskeleton recovers word cubes, n={n}", not bad, f"{3 ** n} words"))
    for mw, nw in ((("a",), ("~a",)), (("a", "b"), ("~a",)), (("a", "a"), ("~a",)), (("a", "a"), ("~a", "~a"))):
        r = verify_cavavraiment(mw, nw)
        out.append(
            Check("cosk", f"marked coskeleton matches free hat of directed one, {mw}/{nw}", r.isomorphic,
                  f"counts {r.free_counts}")
        )
    r = verify_cavavraiment(("a", "a"), ("~a", "~a"))
    target = (0, 5, 9, 15)
    out.append(
        Check(
            "cosk",
            "unmarked coskeleton strictly larger at (a,a)/(~a,~a)",
            r.strictly_smaller and any(x.vertices == target for x in r.extra_cells),
            f"unmarked {r.unmarked_counts} vs {r.free_counts}",
        )
    )
    return out


def suite_tensor() -> list[Check]:
    out = []
    alphabet = Alphabet.from_names(["a"])

    def cube(w):
        return standard_cube(w, "hat", alphabet=alphabet)

    for wx, wy in TENSOR_PAIRS:
        D = len(wx) + len(wy)
        X, Y = cube(wx), cube(wy)
        ok = is_isomorphic(tensor(X, Y, "hat", D), tensor(Y, X, "hat", D))
        out.append(Check("tensor", f"hat commutativity {wx} {wy}", ok))
    for wx, wy, wz in TENSOR_TRIPLES:
        D = len(wx) + len(wy) + len(wz)
        X, Y, Z = cube(wx), cube(wy), cube(wz)
        left = tensor(tensor(X, Y, "hat", D), Z, "hat", D)
        right = tensor(X, tensor(Y, Z, "hat", D), "hat", D)
        out.append(Check("tensor", f"hat associativity {wx} {wy} {wz}", is_isomorphic(left, right)))
    X = standard_cube(("a",), "box", D=2, alphabet=alphabet)
    T = standard_cube(("tau",), "box", D=2, alphabet=alphabet)
    lhs, rhs = tensor(X, T, "box", 2), tensor(T, X, "box", 2)
    out.append(
        Check(
            "tensor",
            "box commutativity fails for (a)/(tau)",
            not is_isomorphic(lhs, rhs) and is_isomorphic(lhs, rhs, labels=False),
        )
    )
    return out


def ccs_pairs(D: int = 3, fuel: int = 8):
    for text in CORPUS:
        t = parse_ccs(text)
        yield text, denote(t, "box", D, fuel), denote(t, "hat", D, fuel)


def suite_ccs() -> list[Check]:
    out = []
    for text, box, hat in ccs_pairs():
        ok = is_isomorphic(freely_generate(box.complex, "hat"), hat.complex)
        detail = f"hat {hat.complex.counts()}" + ("" if hat.converged else ", fuel exhausted")
        out.append(Check("ccs", f"free hat of box denotation = hat denotation: {text}", ok, detail))
        out.append(Check("ccs", f"maximal-path labels invariant: {text}", check_maximal_label_invariance(hat.complex)))
    return out


def suite_flow() -> list[Check]:
    out = []
    C = standard_cube(("tau",) * 3, "box")
    B = truncate(C, 2)
    F1, F2 = bad_realization(C), bad_realization(B)
    top = path_classes(F1, 0, 7)
    out.append(Check("flow", "boundary of [3] and [3] have equal class counts", class_count_table(F1) == class_count_table(F2)))
    out.append(Check("flow", "one class bottom to top in [3]", len(top) == 1, f"{next(iter(top)).size} paths"))
    shuffled = all(path_classes(F1, 0, 7, seed=s) == top for s in range(5))
    out.append(Check("flow", "classes independent of relation order", shuffled))
    bad = []
    for text, box, _ in ccs_pairs():
        K = box.complex
        H = freely_generate(K, "hat")
        if class_count_table(bad_realization(K)) != class_count_table(bad_realization(H)):
            bad.append(text)
        if not labels_class_invariant(bad_realization(K)):
            bad.append(text)
    out.append(Check("flow", "free hat extension keeps the flow of corpus terms", not bad, ", ".join(bad)))
    return out


def suite_conj0() -> list[Check]:
    r2 = conj0_experiment(2)
    r3 = conj0_experiment(3)
    return [
        Check("conj0", "n=2 relation classes match the monoid", r2.agree and r2.classes_sound,
              f"{r2.relation_classes} classes, monoid {r2.closure_size}"),
        Check("conj0", "n=3 relation classes are sound (exploratory)", r3.classes_sound,
              f"{r3.relation_classes} classes at length <= {r3.max_length}, monoid {r3.closure_size}"),
    ]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "shell": suite_shell,
    "moore": suite_moore,
    "cosk": suite_cosk,
    "tensor": suite_tensor,
    "ccs": suite_ccs,
    "flow": suite_flow,
    "conj0": suite_conj0,
}


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name]()
