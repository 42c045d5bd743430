"""Coordinates of tree sums in the bracket-word basis.

Every tree is the unique leading (maximal-degree) term of one basis word's
expansion, so repeated subtraction of expansions rewrites any sum of trees
in basis-word coordinates.  On top of that sit the Lie degree, the
projection onto first-level-increasing trees (the quotient by all
brackets), the permutation action on that quotient, and the full change of
basis matrix with its certificates.
"""

from __future__ import annotations

import functools
from typing import Iterable, Mapping

from .algebra import Summand, TreeSum, as_sum, relabel
from .lyndon import (
    BasisWord,
    check_basis_word,
    enumerate_basis,
    expand_basis_element,
    leading_term,
    lyndon_bracketing,
    lyndon_coordinates,
    serialize_monomial,
)
from .trees import (
    DomainError,
    RootedTree,
    degree,
    enumerate_trees,
    is_f_tree,
    label_set,
    serialize_tree,
)


@functools.lru_cache(maxsize=None)
def tree_to_basis_index(t: RootedTree) -> BasisWord:
    """The basis word whose expansion has `t` as leading term.

    A degree-1 tree is its own singleton word.  Otherwise remove the
    subtree hanging under the largest root-adjacent label that is smaller
    than the root, index both halves, and concatenate.
    """
    if degree(t) == 1:
        return (t,)
    below = [c for c in t.children if c.root < t.root]
    sub = max(below, key=lambda c: c.root)
    rest = RootedTree(t.root, tuple(c for c in t.children if c is not sub))
    return tree_to_basis_index(rest) + tree_to_basis_index(sub)


def _word_key(word: BasisWord):
    return (len(word), tuple(serialize_tree(t) for t in word))


class Decomposition:
    """Integer combination of basis words."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[BasisWord, int]):
        kept = {}
        for word, c in coeffs.items():
            if not isinstance(c, int) or isinstance(c, bool):
                raise DomainError(f"coefficient must be an integer, got {c!r}")
            if c:
                kept[tuple(word)] = c
        object.__setattr__(self, "coeffs", kept)

    def __setattr__(self, name, value):
        raise AttributeError("Decomposition is immutable")

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def items(self) -> list[tuple[BasisWord, int]]:
        """Terms sorted by word length, then by the trees' texts."""
        return sorted(self.coeffs.items(), key=lambda kv: _word_key(kv[0]))

    def min_lie_degree(self) -> int:
        if not self.coeffs:
            raise DomainError("the zero element has no Lie degree")
        return min(len(w) for w in self.coeffs)

    def expand(self, labels: Iterable[int] | None = None) -> TreeSum:
        """Re-expand the combination into a sum of trees."""
        if labels is None:
            covered: set = set()
            for word in self.coeffs:
                for t in word:
                    covered |= t.labels
            labels = sorted(covered)
        total = TreeSum.zero(labels)
        for word, c in self.coeffs.items():
            total = total + c * expand_basis_element(word)
        return total

    def __str__(self):
        if not self.coeffs:
            return "0"
        chunks = []
        for word, c in self.items():
            body = serialize_monomial(lyndon_bracketing(word))
            if abs(c) != 1:
                body = f"{abs(c)}*{body}"
            chunks.append(("-" if c < 0 else "+", body))
        sign, head = chunks[0]
        text = ("-" if sign == "-" else "") + head
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__

    def as_json(self) -> dict:
        return {"terms": [{"coeff": c,
                           "word": [serialize_tree(t) for t in word]}
                          for word, c in self.items()]}


def decompose(x: Summand) -> Decomposition:
    """Coordinates of `x` in the basis of bracket words.

    Triangular elimination: every round takes all maximal-degree terms of
    the residual, credits each term's basis word, and subtracts the word
    expansions; each round strictly lowers the maximal degree, so at most
    |S| rounds run.  Zero input gives the empty decomposition.
    """
    x = as_sum(x)
    coeffs: dict[BasisWord, int] = {}
    residual = x
    top = None
    while residual:
        degrees = {t: degree(t) for t in residual.terms}
        top = max(degrees.values())
        subtract = TreeSum.zero(x.label_set)
        round_words = set()
        for t, c in residual.terms.items():
            if degrees[t] != top:
                continue
            word = tree_to_basis_index(t)
            if word in round_words:
                raise RuntimeError(
                    f"two maximal-degree terms share the basis word "
                    f"{word!r}; the leading-term bijection is broken")
            round_words.add(word)
            coeffs[word] = coeffs.get(word, 0) + c
            subtract = subtract + c * expand_basis_element(word)
        residual = residual - subtract
        if residual and max(degree(t) for t in residual.terms) >= top:
            raise RuntimeError(
                f"elimination did not lower the maximal degree {top}; "
                f"residual {residual}")
    return Decomposition(coeffs)


def lie_degree(x: Summand) -> int:
    """Smallest word length carrying a nonzero coordinate; undefined at 0."""
    x = as_sum(x)
    if not x:
        raise DomainError("the zero element has no Lie degree")
    return decompose(x).min_lie_degree()


def project_to_f(x: Summand) -> TreeSum:
    """The class of `x` modulo all brackets, written in F-trees.

    Keeps exactly the length-1 words of the decomposition; every longer
    word is a bracket and dies in the quotient.
    """
    x = as_sum(x)
    singles = {word[0]: c for word, c in decompose(x).coeffs.items()
               if len(word) == 1}
    return TreeSum(x.label_set, singles)


@functools.lru_cache(maxsize=None)
def _project_tree(t: RootedTree) -> TreeSum:
    return project_to_f(TreeSum.from_tree(t))


def _check_permutation(pi: Mapping[int, int], labels: frozenset):
    for lbl in labels:
        if lbl not in pi:
            raise DomainError(f"permutation is not defined on label {lbl}")
    if {pi[lbl] for lbl in labels} != set(labels):
        raise DomainError("mapping must permute the label set onto itself")


def f_action(pi: Mapping[int, int], t: RootedTree) -> TreeSum:
    """Permutation action on the quotient: relabel, then project back.

    `pi` must permute the label set of `t`, and `t` must be increasing at
    the first level.
    """
    if not isinstance(t, RootedTree):
        raise DomainError(f"expected a RootedTree, got {t!r}")
    if not is_f_tree(t):
        raise DomainError(
            f"{t!r} is not increasing at the first level")
    _check_permutation(pi, t.labels)
    return _f_action_cached(tuple(sorted((l, pi[l]) for l in t.labels)), t)


@functools.lru_cache(maxsize=None)
def _f_action_cached(pairs: tuple, t: RootedTree) -> TreeSum:
    return project_to_f(relabel(t, dict(pairs)))


def f_action_sum(pi: Mapping[int, int], x: Summand) -> TreeSum:
    """Linear extension of f_action to sums of F-trees."""
    x = as_sum(x)
    _check_permutation(pi, frozenset(x.label_set))
    total = TreeSum.zero([pi[l] for l in x.label_set])
    for t, c in x.terms.items():
        total = total + c * f_action(pi, t)
    return total


def word_action(pi: Mapping[int, int], word: BasisWord) -> dict[BasisWord, int]:
    """Permutation action computed directly on the bracket word.

    Relabel each F-tree of the word, project each one back into F-trees of
    its new label set, multiply out by bilinearity, and rewrite every
    resulting bracketing in standard-bracketing coordinates.  The output
    words all have the input's length: this is the degree-preserving part
    of the action, with no detour through sums of trees on the whole set.
    """
    trees = check_basis_word(word)
    union: set = set()
    for t in trees:
        union |= t.labels
    _check_permutation(pi, frozenset(union))
    shape, count = _shape_of(lyndon_bracketing(trees), 0)
    assert count == len(trees)
    projections = [list(_project_tree(relabel(t, pi)).terms.items())
                   for t in trees]
    acc: dict[BasisWord, int] = {}

    def fill(position: int, factor: int, chosen: list):
        if position == len(trees):
            tree_by_letter = {t.root: t for t in chosen}
            letter_shape = _substitute(shape, [t.root for t in chosen])
            for letter_word, k in lyndon_coordinates(letter_shape):
                out = tuple(tree_by_letter[l] for l in letter_word)
                total = acc.get(out, 0) + factor * k
                if total:
                    acc[out] = total
                else:
                    acc.pop(out, None)
            return
        for tree, c in projections[position]:
            chosen.append(tree)
            fill(position + 1, factor * c, chosen)
            chosen.pop()

    fill(0, 1, [])
    return acc


def _shape_of(mono, counter: int):
    """Replace leaves by left-to-right position indices."""
    if isinstance(mono, RootedTree):
        return counter, counter + 1
    left, counter = _shape_of(mono[0], counter)
    right, counter = _shape_of(mono[1], counter)
    return (left, right), counter


def _substitute(shape, letters):
    if isinstance(shape, int):
        return letters[shape]
    return (_substitute(shape[0], letters), _substitute(shape[1], letters))


_CHANGE_OF_BASIS_LIMIT = 6


class ChangeOfBasis:
    """Expansion matrix of all basis words in the tree basis.

    Rows follow enumerate_trees, columns follow enumerate_basis.  The
    constructor certifies the unit leading coefficients and the bijection
    from columns to their leading trees, and reads the determinant off the
    triangular structure: it is the sign of that bijection as a
    permutation.
    """

    __slots__ = ("labels", "trees", "basis", "columns", "leading",
                 "determinant", "_tree_pos")

    def __init__(self, labels: Iterable[int]):
        s = label_set(labels)
        if not s:
            raise DomainError("need at least one label")
        if len(s) > _CHANGE_OF_BASIS_LIMIT:
            raise DomainError(
                f"change of basis is limited to {_CHANGE_OF_BASIS_LIMIT} "
                f"labels, got {len(s)}")
        trees = enumerate_trees(s)
        basis = enumerate_basis(s)
        if len(trees) != len(basis):
            raise RuntimeError(
                f"basis size {len(basis)} differs from tree count {len(trees)}")
        leading: dict[BasisWord, RootedTree] = {}
        columns = []
        for word in basis:
            expansion = expand_basis_element(word)
            lead, c = leading_term(expansion)
            if c != 1:
                raise RuntimeError(
                    f"leading coefficient of {word!r} is {c}, expected 1")
            if degree(lead) != len(word):
                raise RuntimeError(
                    f"leading degree of {word!r} is {degree(lead)}, "
                    f"expected {len(word)}")
            leading[word] = lead
            columns.append(expansion)
        if len(set(leading.values())) != len(trees):
            raise RuntimeError("leading trees do not exhaust the tree basis")
        tree_pos = {t: k for k, t in enumerate(trees)}
        perm = [tree_pos[leading[word]] for word in basis]
        object.__setattr__(self, "labels", s)
        object.__setattr__(self, "trees", trees)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "columns", tuple(columns))
        object.__setattr__(self, "leading", leading)
        object.__setattr__(self, "determinant", _permutation_sign(perm))
        object.__setattr__(self, "_tree_pos", tree_pos)

    def __setattr__(self, name, value):
        raise AttributeError("ChangeOfBasis is immutable")

    def entry(self, t: RootedTree, word: BasisWord) -> int:
        """Coefficient of tree `t` in the expansion of `word`."""
        return self.columns[self.basis.index(word)].coefficient(t)

    def dense(self) -> list[list[int]]:
        """Row-major integer matrix; rows trees, columns basis words."""
        return [[col.coefficient(t) for col in self.columns]
                for t in self.trees]

    def action_matrix(self, pi: Mapping[int, int]) -> dict[BasisWord, dict[BasisWord, int]]:
        """Per column: coordinates of the relabeled expansion.

        Block triangular in word length; the length-preserving part agrees
        with word_action.
        """
        _check_permutation(pi, frozenset(self.labels))
        return {word: dict(decompose(relabel(col, pi)).coeffs)
                for word, col in zip(self.basis, self.columns)}

    def intrinsic_action_matrix(self, pi: Mapping[int, int]) -> dict[BasisWord, dict[BasisWord, int]]:
        """Per column: the action computed directly on the words."""
        return {word: word_action(pi, word) for word in self.basis}


def _permutation_sign(perm: list[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def change_of_basis(labels: Iterable[int]) -> ChangeOfBasis:
    """Build and certify the full change of basis on this label set."""
    return ChangeOfBasis(labels)
