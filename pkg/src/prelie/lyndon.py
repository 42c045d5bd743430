"""Bracketed words of first-level-increasing trees and their expansion.

A basis word is a tuple of F-trees (trees of degree 1) on disjoint label
sets whose first entry carries the largest root.  Its standard bracketing
splits recursively in front of the second largest root; expanding every
bracket as a grafting commutator turns the word into an integer combination
of plain trees.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterable, Sequence, Union

from .algebra import TreeSum, as_sum, lie_bracket
from .linalg import solve_unique
from .trees import (
    DomainError,
    RootedTree,
    TreeSyntaxError,
    degree,
    enumerate_f_trees,
    is_f_tree,
    label_set,
    parse_tree_prefix,
    serialize_tree,
    set_partitions,
    _skip_ws,
)

# A bracket expression: either a tree leaf or a pair of sub-expressions.
LieMonomial = Union[RootedTree, tuple]

# A basis word: F-trees, disjoint labels, largest root first.
BasisWord = tuple


def enumerate_partitions(labels: Iterable[int]) -> tuple[tuple, ...]:
    """All set partitions of the label set, in a fixed generation order.

    Blocks are ascending and listed by minimum; there are Bell(n) results.
    """
    return tuple(set_partitions(label_set(labels)))


def monomial_leaves(m: LieMonomial) -> tuple[RootedTree, ...]:
    """The tree leaves of a bracket expression, left to right."""
    if isinstance(m, RootedTree):
        return (m,)
    left, right = m
    return monomial_leaves(left) + monomial_leaves(right)


def serialize_monomial(m: LieMonomial) -> str:
    if isinstance(m, RootedTree):
        return serialize_tree(m)
    left, right = m
    return f"[{serialize_monomial(left)},{serialize_monomial(right)}]"


def parse_monomial(text: str) -> LieMonomial:
    """Parse ``Monomial := Tree | "[" Monomial "," Monomial "]"``."""
    m, pos = parse_monomial_prefix(text, 0)
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise TreeSyntaxError("unexpected trailing input", pos)
    return m


def parse_monomial_prefix(text: str, pos: int) -> tuple[LieMonomial, int]:
    pos = _skip_ws(text, pos)
    if pos < len(text) and text[pos] == "[":
        left, pos = parse_monomial_prefix(text, pos + 1)
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] != ",":
            raise TreeSyntaxError("expected ',' in bracket", pos)
        right, pos = parse_monomial_prefix(text, pos + 1)
        pos = _skip_ws(text, pos)
        if pos >= len(text) or text[pos] != "]":
            raise TreeSyntaxError("expected ']'", pos)
        return (left, right), pos + 1
    return parse_tree_prefix(text, pos)


def _split_at_second_largest(items: Sequence, key):
    """Recursive standard bracketing: split in front of the second largest key."""
    if len(items) == 1:
        return items[0]
    tail = [key(x) for x in items[1:]]
    k = 1 + max(range(len(tail)), key=tail.__getitem__)
    return (_split_at_second_largest(items[:k], key),
            _split_at_second_largest(items[k:], key))


def lyndon_bracketing(word: Sequence[RootedTree]) -> LieMonomial:
    """Standard bracketing of a word of trees, compared by root label.

    The first tree must carry the strictly largest root.  On single-vertex
    trees this is the classical bracketing of a permutation whose first
    value is maximal.
    """
    trees = tuple(word)
    if not trees:
        raise DomainError("cannot bracket an empty word")
    roots = [t.root for t in trees]
    if len(set(roots)) != len(roots):
        raise DomainError(f"word has repeated root labels {sorted(roots)}")
    if roots[0] != max(roots):
        raise DomainError(
            f"first root {roots[0]} is not the largest of {sorted(roots)}")
    return _split_at_second_largest(trees, key=lambda t: t.root)


def lyndon_permutations(labels: Iterable[int]) -> tuple[tuple, ...]:
    """Orderings of the label set that start with the maximum.

    There are (n-1)! of them; their bracketings span the multilinear
    bracket space.
    """
    s = label_set(labels)
    if not s:
        return ()
    return tuple((s[-1],) + rest
                 for rest in itertools.permutations(s[:-1]))


def check_basis_word(word: Sequence[RootedTree]) -> tuple:
    """Validate a basis word; returns it as a tuple."""
    trees = tuple(word)
    if not trees:
        raise DomainError("a basis word needs at least one tree")
    seen: set = set()
    for t in trees:
        if not isinstance(t, RootedTree):
            raise DomainError(f"basis word entry must be a tree, got {t!r}")
        if not is_f_tree(t):
            raise DomainError(
                f"{t!r} is not increasing at the first level (degree "
                f"{degree(t)})")
        shared = seen & t.labels
        if shared:
            raise DomainError(
                f"basis word label sets overlap on {sorted(shared)}")
        seen |= t.labels
    roots = [t.root for t in trees]
    if roots[0] != max(roots):
        raise DomainError(
            f"first root {roots[0]} is not the largest of {sorted(roots)}")
    return trees


@functools.lru_cache(maxsize=None)
def _enumerate_basis(s: tuple) -> tuple[BasisWord, ...]:
    out = []
    for partition in set_partitions(s):
        pools = [enumerate_f_trees(part) for part in partition]
        for choice in itertools.product(*pools):
            top = max(range(len(choice)), key=lambda k: choice[k].root)
            rest = choice[:top] + choice[top + 1:]
            for perm in itertools.permutations(rest):
                out.append((choice[top],) + perm)
    return tuple(out)


def enumerate_basis(labels: Iterable[int]) -> tuple[BasisWord, ...]:
    """Every basis word on the label set: one per partition, choice of
    F-tree on each part, and ordering with the largest root first.

    There are n^(n-1) of them, as many as trees.
    """
    return _enumerate_basis(label_set(labels))


def expand_monomial(m: LieMonomial) -> TreeSum:
    """Multiply out a bracket expression into a sum of trees.

    A leaf stays itself; a pair becomes the bracket of its expansions.
    Leaf label sets must be pairwise disjoint.
    """
    if isinstance(m, RootedTree):
        return TreeSum.from_tree(m)
    if isinstance(m, tuple) and len(m) == 2:
        return lie_bracket(expand_monomial(m[0]), expand_monomial(m[1]))
    raise DomainError(f"not a bracket expression: {m!r}")


def expand_basis_element(word: Sequence[RootedTree]) -> TreeSum:
    """Expansion of the standard bracketing of a basis word."""
    return _expand_basis_cached(tuple(word))


@functools.lru_cache(maxsize=None)
def _expand_basis_cached(word: tuple) -> TreeSum:
    trees = check_basis_word(word)
    return expand_monomial(lyndon_bracketing(trees))


def leading_term(x) -> tuple[RootedTree, int]:
    """The unique maximal-degree term of a nonzero sum, with coefficient.

    Raises when the input is zero or the maximal-degree term is not unique.
    """
    x = as_sum(x)
    if not x:
        raise DomainError("the zero sum has no leading term")
    degrees = {t: degree(t) for t in x.terms}
    top = max(degrees.values())
    winners = [t for t, d in degrees.items() if d == top]
    if len(winners) != 1:
        raise DomainError(
            f"leading term is not unique: degree {top} is attained "
            f"by {len(winners)} terms")
    return winners[0], x.coefficient(winners[0])


def leading_word_roots(word: Sequence[RootedTree]) -> frozenset:
    """Root labels of a word's trees; the decreasing-subtree vertex set of
    its leading term."""
    return frozenset(t.root for t in word)


# ----------------------------------------------------------------------
# Bracket expressions over plain letters (used to rewrite a permuted
# bracketing back into standard-bracketing coordinates).

def bracket_words(m) -> dict[tuple, int]:
    """Expand a nested pair expression over letters via [u,v] = uv - vu."""
    if not isinstance(m, tuple):
        return {(m,): 1}
    left, right = (bracket_words(part) for part in m)
    out: dict[tuple, int] = {}
    for u, cu in left.items():
        for v, cv in right.items():
            for word, c in ((u + v, cu * cv), (v + u, -cu * cv)):
                total = out.get(word, 0) + c
                if total:
                    out[word] = total
                else:
                    out.pop(word, None)
    return out


def _letters_of(m) -> list:
    if not isinstance(m, tuple):
        return [m]
    return _letters_of(m[0]) + _letters_of(m[1])


@functools.lru_cache(maxsize=None)
def lyndon_coordinates(m) -> tuple[tuple[tuple, int], ...]:
    """Coordinates of a multilinear letter bracketing in the word basis.

    `m` is a nested pair expression in which every letter occurs exactly
    once.  Returns ((word, coefficient), ...) over words starting with the
    maximal letter, whose standard bracketings sum to `m`; coefficients are
    integers.
    """
    letters = _letters_of(m)
    if len(set(letters)) != len(letters):
        raise DomainError(f"letters repeat in {m!r}")
    ordered = sorted(letters)
    if len(ordered) == 1:
        return (((ordered[0],), 1),)
    words = tuple((ordered[-1],) + rest
                  for rest in itertools.permutations(ordered[:-1]))
    all_keys = sorted(itertools.permutations(ordered))
    key_index = {w: k for k, w in enumerate(all_keys)}
    columns = []
    for w in words:
        expansion = bracket_words(_split_at_second_largest(w, key=lambda x: x))
        col = [0] * len(all_keys)
        for word, c in expansion.items():
            col[key_index[word]] = c
        columns.append(col)
    target = [0] * len(all_keys)
    for word, c in bracket_words(m).items():
        target[key_index[word]] = c
    matrix = [[columns[j][k] for j in range(len(words))]
              for k in range(len(all_keys))]
    solution = solve_unique(matrix, target)
    out = []
    for w, c in zip(words, solution):
        if c:
            if c.denominator != 1:
                raise RuntimeError(
                    f"non-integer coordinate {c} for word {w}")
            out.append((w, int(c)))
    return tuple(out)
