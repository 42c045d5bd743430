"""Labelled rooted trees: canonical form, text format, enumeration, degree.

Trees carry pairwise distinct positive integer labels.  The canonical form
keeps the children of every vertex sorted by their root label, so structural
equality is tree identity and trees can be dict keys.

Text format: ``Tree := LABEL | LABEL "(" Tree ("," Tree)* ")"`` with optional
whitespace, e.g. ``"3(1,4)"`` is the tree rooted at 3 with children 1 and 4.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from typing import Iterable, Iterator, NamedTuple, Sequence


class DomainError(ValueError):
    """An input violates a documented precondition."""


class TreeSyntaxError(DomainError):
    """Malformed tree (or tree expression) text; `position` is the offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DuplicateLabelError(DomainError):
    """The same label occurs twice; `label` is the offender."""

    def __init__(self, label: int):
        super().__init__(f"duplicate label {label}")
        self.label = label


def label_set(labels: Iterable[int]) -> tuple[int, ...]:
    """Normalize an iterable of labels to an ascending tuple.

    Labels must be distinct integers >= 1.
    """
    seen = list(labels)
    for x in seen:
        if not isinstance(x, int) or isinstance(x, bool) or x < 1:
            raise DomainError(f"label must be a positive integer, got {x!r}")
    for lbl, count in Counter(seen).items():
        if count > 1:
            raise DuplicateLabelError(lbl)
    return tuple(sorted(seen))


class RootedTree:
    """Immutable labelled rooted tree in canonical form.

    `children` is sorted by child root label; `labels` is the frozenset of
    all vertex labels in the subtree.
    """

    __slots__ = ("root", "children", "labels", "_hash")

    def __init__(self, root: int, children: Iterable["RootedTree"] = ()):
        if not isinstance(root, int) or isinstance(root, bool) or root < 1:
            raise DomainError(f"label must be a positive integer, got {root!r}")
        kids = tuple(sorted(children, key=lambda c: c.root))
        for c in kids:
            if not isinstance(c, RootedTree):
                raise DomainError(f"child must be a RootedTree, got {c!r}")
        labels = frozenset((root,)).union(*(c.labels for c in kids))
        if len(labels) != 1 + sum(len(c.labels) for c in kids):
            counts = Counter(itertools.chain((root,), *(c.labels for c in kids)))
            raise DuplicateLabelError(min(l for l, k in counts.items() if k > 1))
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "children", kids)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_hash", hash((root, kids)))

    @classmethod
    def _build(cls, root: int, children: Sequence["RootedTree"],
               labels: frozenset) -> "RootedTree":
        # Fast path for enumeration: labels precomputed, disjointness known.
        self = object.__new__(cls)
        kids = tuple(sorted(children, key=lambda c: c.root))
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "children", kids)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_hash", hash((root, kids)))
        return self

    def __setattr__(self, name, value):
        raise AttributeError("RootedTree is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, RootedTree):
            return NotImplemented
        return (self._hash == other._hash and self.root == other.root
                and self.children == other.children)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return serialize_tree(self)

    def __len__(self):
        return len(self.labels)

    def iter_vertices(self) -> Iterator["RootedTree"]:
        """Yield every vertex (as a subtree) in preorder."""
        yield self
        for c in self.children:
            yield from c.iter_vertices()


def serialize_tree(t: RootedTree) -> str:
    """Canonical text of `t`; inverse of parse_tree."""
    if not t.children:
        return str(t.root)
    return f"{t.root}({','.join(serialize_tree(c) for c in t.children)})"


def parse_tree_prefix(text: str, pos: int = 0) -> tuple[RootedTree, int]:
    """Parse one tree starting at `pos`; return (tree, position after it)."""
    pos = _skip_ws(text, pos)
    root, pos = _parse_label(text, pos)
    pos = _skip_ws(text, pos)
    children = []
    if pos < len(text) and text[pos] == "(":
        pos += 1
        while True:
            child, pos = parse_tree_prefix(text, pos)
            children.append(child)
            pos = _skip_ws(text, pos)
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            if pos < len(text) and text[pos] == ")":
                pos += 1
                break
            raise TreeSyntaxError("expected ',' or ')'", pos)
    return RootedTree(root, children), pos


def parse_tree(text: str) -> RootedTree:
    """Parse the whole string as one tree in canonical-form syntax."""
    tree, pos = parse_tree_prefix(text, 0)
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise TreeSyntaxError("unexpected trailing input", pos)
    return tree


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_label(text: str, pos: int) -> tuple[int, int]:
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == start:
        raise TreeSyntaxError("expected a label", pos)
    value = int(text[start:pos])
    if value < 1:
        raise TreeSyntaxError("labels start at 1", start)
    return value, pos


class MDSubtree(NamedTuple):
    """The maximal decreasing connected subtree from the root."""

    vertices: frozenset
    degree: int


def md_subtree(t: RootedTree) -> MDSubtree:
    """Grow from the root along strictly label-decreasing edges.

    A child joins when its label is smaller than its (already included)
    parent's label.  `degree` is the vertex count of the result; the trees
    of degree 1 are exactly those increasing at the first level.
    """
    vertices = {t.root}
    stack = [t]
    while stack:
        node = stack.pop()
        for c in node.children:
            if c.root < node.root:
                vertices.add(c.root)
                stack.append(c)
    return MDSubtree(frozenset(vertices), len(vertices))


def degree(t: RootedTree) -> int:
    """Size of the maximal decreasing subtree from the root."""
    return md_subtree(t).degree


def is_f_tree(t: RootedTree) -> bool:
    """True when every child of the root has a larger label than the root."""
    return all(c.root > t.root for c in t.children)


def set_partitions(items: Sequence) -> Iterator[tuple[tuple, ...]]:
    """All partitions of `items` into unordered nonempty blocks.

    Items are inserted in the given order, so each block lists its members
    in input order and blocks are ordered by first member.  With ascending
    input this is the canonical form: blocks sorted by minimum.
    """
    elems = list(items)
    if not elems:
        return
    blocks: list[list] = []

    def grow(i: int) -> Iterator[tuple[tuple, ...]]:
        if i == len(elems):
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(elems[i])
            yield from grow(i + 1)
            b.pop()
        blocks.append([elems[i]])
        yield from grow(i + 1)
        blocks.pop()

    yield from grow(0)


@functools.lru_cache(maxsize=None)
def _trees_on(vertices: frozenset) -> tuple[RootedTree, ...]:
    """All rooted trees with vertex set `vertices`, grouped by root."""
    return tuple(t for r in sorted(vertices)
                 for t in _trees_rooted_at(vertices, r))


@functools.lru_cache(maxsize=None)
def _trees_rooted_at(vertices: frozenset, root: int) -> tuple[RootedTree, ...]:
    rest = sorted(vertices - {root})
    if not rest:
        return (RootedTree._build(root, (), vertices),)
    out = []
    for blocks in set_partitions(rest):
        for combo in itertools.product(
                *(_trees_on(frozenset(b)) for b in blocks)):
            out.append(RootedTree._build(root, combo, vertices))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _enumerate_trees(s: tuple[int, ...]) -> tuple[RootedTree, ...]:
    return tuple(sorted(_trees_on(frozenset(s)), key=serialize_tree))


@functools.lru_cache(maxsize=None)
def _enumerate_f_trees(s: tuple[int, ...]) -> tuple[RootedTree, ...]:
    out = []
    for r in s:
        rest = [x for x in s if x != r]
        if not rest:
            out.append(RootedTree(r))
            continue
        vertices = frozenset(s)
        for blocks in set_partitions(rest):
            choices = [tuple(t for t in _trees_on(frozenset(b)) if t.root > r)
                       for b in blocks]
            for combo in itertools.product(*choices):
                out.append(RootedTree._build(r, combo, vertices))
    return tuple(sorted(out, key=serialize_tree))


def enumerate_trees(labels: Iterable[int]) -> tuple[RootedTree, ...]:
    """All rooted trees on exactly this label set, sorted by their text.

    There are n^(n-1) of them on n labels; the empty set gives ().
    """
    return _enumerate_trees(label_set(labels))


def enumerate_f_trees(labels: Iterable[int]) -> tuple[RootedTree, ...]:
    """The trees increasing at the first level, sorted by their text.

    These are the trees of degree 1: every child of the root carries a
    larger label than the root.  There are (n-1)^(n-1) of them on n >= 2
    labels, one on a single label, none on the empty set.
    """
    return _enumerate_f_trees(label_set(labels))
