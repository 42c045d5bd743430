"""Batch property suites with reproducible pass/fail reports.

Each suite drives only the public operations, exhaustively up to `max_n`
where the check is exhaustive and with seeded sampling otherwise, and
reports every failure with a replayable set of inputs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .algebra import (
    TreeSum,
    composed_order,
    lie_bracket,
    operad_compose,
    prelie_product,
    relabel,
)
from .decompose import (
    change_of_basis,
    decompose,
    f_action,
    f_action_sum,
    project_to_f,
)
from .linalg import rank
from .lyndon import (
    enumerate_basis,
    expand_basis_element,
    expand_monomial,
    leading_term,
    lyndon_permutations,
    parse_monomial,
)
from .trees import (
    DomainError,
    degree,
    enumerate_f_trees,
    enumerate_trees,
    md_subtree,
    parse_tree,
    serialize_tree,
    set_partitions,
)


@dataclass(frozen=True)
class Failure:
    """One failing instance: the inputs to replay it, and what went wrong."""

    inputs: tuple[tuple[str, str], ...]
    detail: str

    def render(self) -> str:
        args = " ".join(f"{k}={v}" for k, v in self.inputs)
        return f"{args}: {self.detail}" if args else self.detail

    def as_json(self) -> dict:
        return {"inputs": dict(self.inputs), "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    instances: int
    failures: list[Failure]
    seconds: float

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_json(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "failures": [f.as_json() for f in self.failures],
            "seconds": round(self.seconds, 3),
        }

    def render(self) -> str:
        status = "ok" if self.ok else "FAIL"
        lines = [f"{self.suite:<20} {status:<4} instances={self.instances} "
                 f"failures={len(self.failures)} seconds={self.seconds:.2f}"]
        lines.extend("  " + f.render() for f in self.failures)
        return "\n".join(lines)


class _Collector:
    def __init__(self):
        self.instances = 0
        self.failures: list[Failure] = []

    def check(self, ok: bool, detail: str, **inputs) -> bool:
        self.instances += 1
        if not ok:
            self.failures.append(
                Failure(tuple((k, str(v)) for k, v in inputs.items()), detail))
        return ok


# --------------------------------------------------------------- helpers

def _random_labels(rng: random.Random, pool: list, size: int) -> list:
    picked = sorted(pool[:size])
    del pool[:size]
    return picked


def _random_tree_on(rng: random.Random, labels):
    return rng.choice(enumerate_trees(labels))


def _disjoint_random_trees(rng: random.Random, count: int, max_size: int):
    pool = list(range(1, 41))
    rng.shuffle(pool)
    out = []
    for _ in range(count):
        size = rng.randint(1, max_size)
        out.append(_random_tree_on(rng, _random_labels(rng, pool, size)))
    return out


# --------------------------------------------------------------- suites

def _suite_counts(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    for n in range(1, max_n + 1):
        labels = range(1, n + 1)
        col.check(len(enumerate_trees(labels)) == n ** (n - 1),
                  f"tree count != {n ** (n - 1)}", n=n, family="trees")
        expected_f = 1 if n == 1 else (n - 1) ** (n - 1)
        col.check(len(enumerate_f_trees(labels)) == expected_f,
                  f"f-tree count != {expected_f}", n=n, family="f-trees")
        fact = 1
        for k in range(1, n):
            fact *= k
        col.check(len(lyndon_permutations(labels)) == fact,
                  f"permutation count != {fact}", n=n, family="lyndon")
        total = 0
        for partition in set_partitions(range(1, n + 1)):
            ways = 1
            for k in range(1, len(partition)):
                ways *= k
            for block in partition:
                size = len(block)
                ways *= (size - 1) ** (size - 1) if size > 1 else 1
            total += ways
        col.check(total == n ** (n - 1),
                  f"word-count formula gave {total} != {n ** (n - 1)}",
                  n=n, family="formula")
        if n <= 6:
            col.check(len(enumerate_basis(labels)) == n ** (n - 1),
                      f"basis count != {n ** (n - 1)}", n=n, family="basis")
    return col


def _suite_prelie_identity(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    rng = random.Random(seed)
    for _ in range(200):
        x, y, z = _disjoint_random_trees(rng, 3, max_n)
        left = prelie_product(prelie_product(x, y), z) \
            - prelie_product(x, prelie_product(y, z))
        right = prelie_product(prelie_product(x, z), y) \
            - prelie_product(x, prelie_product(z, y))
        col.check(left == right, f"association defects differ: {left - right}",
                  x=x, y=y, z=z)
    return col


def _suite_jacobi(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    rng = random.Random(seed)
    for _ in range(200):
        x, y, z = _disjoint_random_trees(rng, 3, max_n)
        total = lie_bracket(lie_bracket(x, y), z) \
            + lie_bracket(lie_bracket(y, z), x) \
            + lie_bracket(lie_bracket(z, x), y)
        col.check(not total, f"cyclic sum is {total}", x=x, y=y, z=z)
    return col


def _suite_triangularity(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    for n in range(1, max_n + 1):
        words = enumerate_basis(range(1, n + 1))
        leaders = {}
        for word in words:
            name = " ".join(serialize_tree(t) for t in word)
            expansion = expand_basis_element(word)
            try:
                lead, c = leading_term(expansion)
            except DomainError as err:
                col.check(False, str(err), word=name)
                continue
            roots = {t.root for t in word}
            ok = (c == 1 and degree(lead) == len(word)
                  and md_subtree(lead).vertices == roots
                  and all(md_subtree(t).vertices <= roots
                          for t in expansion.terms))
            col.check(ok, f"leading term {lead} coeff {c}", word=name)
            leaders[word] = lead
        col.check(len(set(leaders.values())) == n ** (n - 1),
                  "leading trees do not exhaust the tree basis", n=n)
    return col


def _suite_change_of_basis(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    for n in range(1, max_n + 1):
        try:
            cob = change_of_basis(range(1, n + 1))
        except (DomainError, RuntimeError) as err:
            col.check(False, str(err), n=n)
            continue
        col.check(cob.determinant in (1, -1),
                  f"determinant {cob.determinant}", n=n)
        col.check(set(cob.leading.values()) == set(cob.trees),
                  "leading-tree bijection failed", n=n)
        for word, column in zip(cob.basis, cob.columns):
            name = " ".join(serialize_tree(t) for t in word)
            got = decompose(column)
            col.check(dict(got.coeffs) == {word: 1},
                      f"round trip gave {got}", word=name)
    return col


def _composition_cases(max_n: int):
    for a in range(1, max_n + 1):
        for b in range(1, max_n + 1):
            yield list(range(1, a + 1)), list(range(a + 1, a + b + 1))


def _suite_filtration(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    for i_labels, j_labels in _composition_cases(max_n):
        for t in enumerate_trees(i_labels):
            for i in i_labels:
                order = composed_order(i_labels, i, j_labels)
                site = next(v for v in t.iter_vertices() if v.root == i)
                for s in enumerate_trees(j_labels):
                    result = operad_compose(t, i, s)
                    expected_terms = len(s.labels) ** len(site.children)
                    bound = degree(t) + degree(s) - 1
                    got = [degree(relabel(term, order))
                           for term in result.terms]
                    ok = (len(result) == expected_terms
                          and all(d <= bound for d in got))
                    col.check(ok,
                              f"terms={len(result)} (want {expected_terms}), "
                              f"degrees {sorted(got)} vs bound {bound}",
                              t=t, i=i, s=s)
    return col


def _suite_f_closure(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    for i_labels, j_labels in _composition_cases(max_n):
        for t in enumerate_f_trees(i_labels):
            for i in i_labels:
                order = composed_order(i_labels, i, j_labels)
                for s in enumerate_f_trees(j_labels):
                    result = operad_compose(t, i, s)
                    got = {degree(relabel(term, order))
                           for term in result.terms}
                    col.check(got == {1}, f"degrees {sorted(got)}",
                              t=t, i=i, s=s)
    return col


def _suite_bracket_filtration(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    rng = random.Random(seed)
    for _ in range(200):
        t, y = _disjoint_random_trees(rng, 2, max_n)
        top = degree(t) + degree(y)
        got = [degree(term) for term in lie_bracket(t, y).terms]
        col.check(max(got) == top and all(d <= top for d in got),
                  f"degrees {sorted(got)} vs {top}", t=t, y=y)
    return col


def _suite_lie_degree(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    rng = random.Random(seed)
    for _ in range(100):
        pool = list(range(1, 25))
        rng.shuffle(pool)
        phi = _random_nonzero_sum(rng, _random_labels(rng, pool, rng.randint(1, max_n)))
        psi = _random_nonzero_sum(rng, _random_labels(rng, pool, rng.randint(1, max_n)))
        bracket = lie_bracket(phi, psi)
        expected = (decompose(phi).min_lie_degree()
                    + decompose(psi).min_lie_degree())
        ok = decompose(bracket).min_lie_degree() == expected
        if ok:
            # Re-read the degree under a random compatible order on the union.
            union = bracket.label_set
            positions = sorted(rng.sample(range(len(union)), len(phi.label_set)))
            mapping = _interleave(phi.label_set, psi.label_set, positions)
            moved = relabel(bracket, mapping)
            ok = decompose(moved).min_lie_degree() == expected
        col.check(ok, f"additivity failed for {phi} and {psi}",
                  phi=phi, psi=psi)
    return col


def _interleave(left_labels, right_labels, left_positions):
    size = len(left_labels) + len(right_labels)
    mapping = {}
    lefts = iter(sorted(left_labels))
    rights = iter(sorted(right_labels))
    wanted = set(left_positions)
    for pos in range(size):
        src = next(lefts) if pos in wanted else next(rights)
        mapping[src] = pos + 1
    return mapping


def _random_nonzero_sum(rng: random.Random, labels):
    trees = enumerate_trees(labels)
    while True:
        terms = {}
        for _ in range(rng.randint(1, 2)):
            terms[rng.choice(trees)] = rng.choice([-2, -1, 1, 2])
        x = TreeSum(labels, terms)
        if x:
            return x


def _permutations(labels):
    import itertools
    labels = list(labels)
    for images in itertools.permutations(labels):
        yield dict(zip(labels, images))


def _suite_sn_action(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    for n in range(1, max_n + 1):
        labels = list(range(1, n + 1))
        cob = change_of_basis(labels)
        for pi in _permutations(labels):
            name = ",".join(str(pi[k]) for k in labels)
            full = cob.action_matrix(pi)
            direct = cob.intrinsic_action_matrix(pi)
            for word in cob.basis:
                wname = " ".join(serialize_tree(t) for t in word)
                column = full[word]
                triangular = all(len(out) >= len(word) for out in column)
                diagonal = {out: c for out, c in column.items()
                            if len(out) == len(word)}
                col.check(triangular and diagonal == direct[word],
                          "block structure or diagonal mismatch",
                          perm=name, word=wname)
        f_trees = enumerate_f_trees(labels)
        for pi in _permutations(labels):
            for tau in _permutations(labels):
                composed = {k: pi[tau[k]] for k in labels}
                pname = ",".join(str(pi[k]) for k in labels)
                tname = ",".join(str(tau[k]) for k in labels)
                for t in f_trees:
                    col.check(
                        f_action(composed, t) == f_action_sum(pi, f_action(tau, t)),
                        "group law failed", perm=pname, then=tname, tree=t)
        f_pos = {t: k for k, t in enumerate(f_trees)}
        rows = []
        for t in cob.trees:
            image = project_to_f(t)
            row = [0] * len(f_trees)
            for ft, c in image.terms.items():
                row[f_pos[ft]] = c
            rows.append(row)
        expected_rank = 1 if n == 1 else (n - 1) ** (n - 1)
        col.check(rank(rows) == expected_rank,
                  f"projection rank != {expected_rank}", n=n)
    return col


_GOLDEN_SUMS = [
    ("bracket", "[3(1,4),2]",
     {"3(1(2),4)": 1, "3(1,2,4)": 1, "3(1,4(2))": 1, "2(3(1,4))": -1}),
    ("expansion", "[2(3),1]",
     {"2(1,3)": 1, "2(3(1))": 1, "1(2(3))": -1}),
    ("expansion", "[2,1(3)]",
     {"2(1(3))": 1, "1(2,3)": -1, "1(3(2))": -1}),
    ("expansion", "[3,1(2)]",
     {"3(1(2))": 1, "1(2,3)": -1, "1(2(3))": -1}),
    ("expansion", "[3,[2,1]]",
     {"3(2(1))": 1, "2(1,3)": -1, "2(1(3))": -1,
      "3(1(2))": -1, "1(2,3)": 1, "1(2(3))": 1}),
    ("expansion", "[[3,1],2]",
     {"3(1,2)": 1, "3(1(2))": 1, "2(3(1))": -1,
      "1(2,3)": -1, "1(3(2))": -1, "2(1(3))": 1}),
    ("composition", "9(1,2) o_9 4(5)",
     {"4(5(1,2))": 1, "4(2,5(1))": 1, "4(1,5(2))": 1, "4(1,2,5)": 1}),
    ("quotient-action", "perm 2,1,3 on 1(2,3)",
     {"2(3(1))": -1, "1(2(3))": 1}),
]


def _terms_by_text(x: TreeSum) -> dict:
    return {serialize_tree(t): c for t, c in x.terms.items()}


def _suite_golden_examples(max_n: int, seed: int) -> _Collector:
    col = _Collector()
    for kind, text, expected in _GOLDEN_SUMS:
        if kind == "composition":
            got = operad_compose(parse_tree("9(1,2)"), 9, parse_tree("4(5)"))
        elif kind == "quotient-action":
            got = f_action({1: 2, 2: 1, 3: 3}, parse_tree("1(2,3)"))
        else:
            got = expand_monomial(parse_monomial(text))
        col.check(_terms_by_text(got) == expected, f"got {got}",
                  kind=kind, input=text)
    rewritten = decompose(parse_tree("2(1,3)"))
    expected_words = {("2(3)", "1"): 1, ("2(3(1))",): -1, ("1(2(3))",): 1}
    col.check({tuple(serialize_tree(t) for t in w): c
               for w, c in rewritten.coeffs.items()} == expected_words,
              f"got {rewritten}", kind="rewrite", input="2(1,3)")
    col.check([serialize_tree(t) for t in enumerate_f_trees([1, 2, 3])]
              == ["1(2(3))", "1(2,3)", "1(3(2))", "2(3(1))"],
              "f-tree list on three labels changed", kind="enumeration",
              input="f-trees on {1,2,3}")
    col.check(len(enumerate_trees([1, 2, 3])) == 9,
              "tree list on three labels changed", kind="enumeration",
              input="trees on {1,2,3}")
    col.check(lyndon_permutations([1, 2, 3]) == ((3, 1, 2), (3, 2, 1)),
              "bracketing words on three letters changed", kind="enumeration",
              input="words on {1,2,3}")
    big = parse_tree("5(2(1,7),3,6(4))")
    col.check(md_subtree(big) == (frozenset({1, 2, 3, 5}), 4),
              f"got {md_subtree(big)}", kind="degree", input="5(2(1,7),3,6(4))")
    flat = parse_tree("2(3(1,4))")
    col.check(md_subtree(flat) == (frozenset({2}), 1),
              f"got {md_subtree(flat)}", kind="degree", input="2(3(1,4))")
    return col


_SUITES = {
    "counts": (_suite_counts, 7),
    "prelie-identity": (_suite_prelie_identity, 5),
    "jacobi": (_suite_jacobi, 5),
    "triangularity": (_suite_triangularity, 5),
    "change-of-basis": (_suite_change_of_basis, 5),
    "filtration": (_suite_filtration, 4),
    "f-closure": (_suite_f_closure, 4),
    "bracket-filtration": (_suite_bracket_filtration, 5),
    "lie-degree": (_suite_lie_degree, 3),
    "sn-action": (_suite_sn_action, 4),
    "golden-examples": (_suite_golden_examples, 7),
}


def suite_names() -> tuple[str, ...]:
    return tuple(_SUITES)


def hard_limit(name: str) -> int:
    if name not in _SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from "
                          f"{', '.join(_SUITES)}")
    return _SUITES[name][1]


def run_suite(name: str, max_n: int, seed: int = 0) -> SuiteReport:
    """Run one named suite up to `max_n` and report every failure.

    Deterministic given (name, max_n, seed).  `max_n` beyond the suite's
    hard limit is refused to keep memory and time bounded.
    """
    if name not in _SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from "
                          f"{', '.join(_SUITES)}")
    fn, limit = _SUITES[name]
    if max_n < 1:
        raise DomainError("max_n must be at least 1")
    if max_n > limit:
        raise DomainError(
            f"suite {name} is limited to max_n <= {limit}, got {max_n}")
    started = time.perf_counter()
    col = fn(max_n, seed)
    elapsed = time.perf_counter() - started
    failures = sorted(col.failures, key=lambda f: (f.inputs, f.detail))
    return SuiteReport(name, col.instances, failures, elapsed)
