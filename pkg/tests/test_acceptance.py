"""Acceptance gate: every contract criterion at its stated tolerance.

All arithmetic is exact integer arithmetic, so every comparison below is
exact equality; the only tolerances are the wall-clock budgets.  Each
criterion prints one PASS/FAIL line (visible with pytest -s).
"""

import itertools
import time

from prelie.algebra import composed_order, lie_bracket, operad_compose, relabel
from prelie.cli import main as cli_main
from prelie.decompose import (
    Decomposition,
    change_of_basis,
    decompose,
    f_action,
    f_action_sum,
    project_to_f,
)
from prelie.lyndon import (
    enumerate_basis,
    expand_basis_element,
    expand_monomial,
    leading_term,
    lyndon_permutations,
    parse_monomial,
)
from prelie.suites import run_suite
from prelie.trees import (
    degree,
    enumerate_f_trees,
    enumerate_trees,
    md_subtree,
    parse_tree,
    serialize_tree,
)
from oracles import rank_fraction


def _stamp(number, label, body):
    try:
        body()
    except BaseException:
        print(f"ACCEPTANCE {number} ({label}): FAIL")
        raise
    print(f"ACCEPTANCE {number} ({label}): PASS")


def test_criterion_1_counting():
    def body():
        started = time.perf_counter()
        for n in range(1, 8):
            labels = range(1, n + 1)
            assert len(enumerate_trees(labels)) == n ** (n - 1)
            expected_f = 1 if n == 1 else (n - 1) ** (n - 1)
            assert len(enumerate_f_trees(labels)) == expected_f
            fact = 1
            for k in range(1, n):
                fact *= k
            assert len(lyndon_permutations(labels)) == fact
        for n in range(1, 7):
            assert len(enumerate_basis(range(1, n + 1))) == n ** (n - 1)
        elapsed = time.perf_counter() - started
        assert elapsed < 10, f"counting took {elapsed:.1f}s, budget is 10s"

    _stamp(1, "counting", body)


GOLDEN_BRACKET = {"3(1(2),4)": 1, "3(1,2,4)": 1, "3(1,4(2))": 1,
                  "2(3(1,4))": -1}

GOLDEN_EXPANSIONS = {
    "[2(3),1]": {"2(1,3)": 1, "2(3(1))": 1, "1(2(3))": -1},
    "[2,1(3)]": {"2(1(3))": 1, "1(2,3)": -1, "1(3(2))": -1},
    "[3,1(2)]": {"3(1(2))": 1, "1(2,3)": -1, "1(2(3))": -1},
    "[3,[2,1]]": {"3(2(1))": 1, "2(1,3)": -1, "2(1(3))": -1,
                  "3(1(2))": -1, "1(2,3)": 1, "1(2(3))": 1},
    "[[3,1],2]": {"3(1,2)": 1, "3(1(2))": 1, "2(3(1))": -1,
                  "1(2,3)": -1, "1(3(2))": -1, "2(1(3))": 1},
}

GOLDEN_COMPOSITION = {"4(5(1,2))": 1, "4(2,5(1))": 1, "4(1,5(2))": 1,
                      "4(1,2,5)": 1}

GOLDEN_ACTION = {"2(3(1))": -1, "1(2(3))": 1}


def _by_text(x):
    return {serialize_tree(t): c for t, c in x.terms.items()}


def test_criterion_2_golden_examples():
    def body():
        got = lie_bracket(parse_tree("3(1,4)"), parse_tree("2"))
        assert _by_text(got) == GOLDEN_BRACKET
        for text, expected in GOLDEN_EXPANSIONS.items():
            assert _by_text(expand_monomial(parse_monomial(text))) == expected
        got = operad_compose(parse_tree("9(1,2)"), 9, parse_tree("4(5)"))
        assert _by_text(got) == GOLDEN_COMPOSITION
        got = f_action({1: 2, 2: 1, 3: 3}, parse_tree("1(2,3)"))
        assert _by_text(got) == GOLDEN_ACTION

    _stamp(2, "golden examples", body)


def test_criterion_3_triangular_change_of_basis():
    def body():
        started = time.perf_counter()
        for n in range(1, 6):
            labels = range(1, n + 1)
            words = enumerate_basis(labels)
            leaders = set()
            for word in words:
                expansion = expand_basis_element(word)
                lead, coeff = leading_term(expansion)
                roots = {t.root for t in word}
                assert coeff == 1
                assert degree(lead) == len(word)
                assert md_subtree(lead).vertices == roots
                for term in expansion.terms:
                    assert md_subtree(term).vertices <= roots
                leaders.add(lead)
                assert decompose(expansion) == Decomposition({word: 1})
            assert leaders == set(enumerate_trees(labels))
            assert len(leaders) == n ** (n - 1)
            assert change_of_basis(labels).determinant in (1, -1)
        elapsed = time.perf_counter() - started
        assert elapsed < 300, f"triangularity took {elapsed:.1f}s, budget 300s"

    _stamp(3, "triangular change of basis, n <= 5", body)


def test_criterion_4_composition_filtration():
    def body():
        started = time.perf_counter()
        for a in (1, 2, 3):
            for b in (1, 2, 3):
                i_labels = list(range(1, a + 1))
                j_labels = list(range(a + 1, a + b + 1))
                all_t = enumerate_trees(i_labels)
                all_s = enumerate_trees(j_labels)
                f_t = set(enumerate_f_trees(i_labels))
                f_s = set(enumerate_f_trees(j_labels))
                for t in all_t:
                    for i in i_labels:
                        order = composed_order(i_labels, i, j_labels)
                        for s in all_s:
                            bound = degree(t) + degree(s) - 1
                            degrees = [degree(relabel(term, order))
                                       for term in operad_compose(t, i, s).terms]
                            assert all(d <= bound for d in degrees)
                            if t in f_t and s in f_s:
                                assert set(degrees) == {1}
        elapsed = time.perf_counter() - started
        assert elapsed < 60, f"filtration took {elapsed:.1f}s, budget 60s"

    _stamp(4, "composition filtration and closure, sizes <= 3", body)


def test_criterion_5_identities_on_random_inputs():
    def body():
        for name in ("prelie-identity", "jacobi", "bracket-filtration"):
            report = run_suite(name, 4, seed=0)
            assert report.instances == 200
            assert report.ok, report.render()

    _stamp(5, "pre-Lie and Jacobi identities, bracket filtration", body)


def test_criterion_6_species_claims():
    def body():
        for n in range(1, 5):
            labels = list(range(1, n + 1))
            cob = change_of_basis(labels)
            for images in itertools.permutations(labels):
                pi = dict(zip(labels, images))
                full = cob.action_matrix(pi)
                direct = cob.intrinsic_action_matrix(pi)
                for word, column in full.items():
                    assert all(len(out) >= len(word) for out in column)
                    diagonal = {out: c for out, c in column.items()
                                if len(out) == len(word)}
                    assert diagonal == direct[word]
            f_trees = enumerate_f_trees(labels)
            for pi_images in itertools.permutations(labels):
                pi = dict(zip(labels, pi_images))
                for tau_images in itertools.permutations(labels):
                    tau = dict(zip(labels, tau_images))
                    composed = {k: pi[tau[k]] for k in labels}
                    for t in f_trees:
                        assert f_action(composed, t) == \
                            f_action_sum(pi, f_action(tau, t))
            pos = {t: k for k, t in enumerate(f_trees)}
            rows = []
            for t in enumerate_trees(labels):
                row = [0] * len(f_trees)
                for ft, c in project_to_f(t).terms.items():
                    row[pos[ft]] = c
                rows.append(row)
            expected = 1 if n == 1 else (n - 1) ** (n - 1)
            assert rank_fraction(rows) == expected

    _stamp(6, "permutation action block structure, n <= 4", body)


def test_cli_verify_all_passes():
    def body():
        assert cli_main(["verify", "--suite", "all", "--max-n", "4"]) == 0

    _stamp("CLI", "verify --suite all --max-n 4 exits 0", body)
