"""Integer linear combinations of trees and the operations on them.

The grafting product, the Lie bracket it induces, relabeling along a
bijection, and the partial compositions that substitute a tree for a vertex,
together with the label order those compositions induce.
"""

from __future__ import annotations

import itertools
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .trees import (
    DomainError,
    RootedTree,
    label_set,
    serialize_tree,
)


class LabelOverlapError(DomainError):
    """Two operands share labels that must be disjoint."""

    def __init__(self, shared):
        shared = sorted(shared)
        super().__init__(f"label sets overlap on {shared}")
        self.shared = tuple(shared)


class TreeSum:
    """Formal integer combination of trees on one fixed label set.

    Immutable; zero coefficients are never stored, and the zero element is
    the empty combination.  Arithmetic (+, -, integer *) stays on the same
    label set.
    """

    __slots__ = ("label_set", "_terms", "_hash")

    def __init__(self, labels: Iterable[int],
                 terms: Mapping[RootedTree, int] | None = None):
        lset = label_set(labels)
        expected = frozenset(lset)
        kept: dict[RootedTree, int] = {}
        for tree, coeff in (terms or {}).items():
            if not isinstance(tree, RootedTree):
                raise DomainError(f"term key must be a RootedTree, got {tree!r}")
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise DomainError(f"coefficient must be an integer, got {coeff!r}")
            if tree.labels != expected:
                raise DomainError(
                    f"term {tree!r} uses labels {sorted(tree.labels)}, "
                    f"expected {list(lset)}")
            if coeff:
                kept[tree] = coeff
        object.__setattr__(self, "label_set", lset)
        object.__setattr__(self, "_terms", kept)
        object.__setattr__(self, "_hash",
                           hash((lset, frozenset(kept.items()))))

    @classmethod
    def zero(cls, labels: Iterable[int] = ()) -> "TreeSum":
        return cls(labels, {})

    @classmethod
    def from_tree(cls, t: RootedTree) -> "TreeSum":
        return cls(t.labels, {t: 1})

    @property
    def terms(self) -> Mapping[RootedTree, int]:
        """Read-only tree -> nonzero coefficient view."""
        return MappingProxyType(self._terms)

    def coefficient(self, t: RootedTree) -> int:
        return self._terms.get(t, 0)

    def items(self) -> list[tuple[RootedTree, int]]:
        """Terms sorted by tree serialization."""
        return sorted(self._terms.items(), key=lambda kv: serialize_tree(kv[0]))

    def __setattr__(self, name, value):
        raise AttributeError("TreeSum is immutable")

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TreeSum):
            return NotImplemented
        return self.label_set == other.label_set and self._terms == other._terms

    def __hash__(self):
        return self._hash

    def __add__(self, other: "TreeSum") -> "TreeSum":
        if not isinstance(other, TreeSum):
            return NotImplemented
        if other.label_set != self.label_set:
            raise DomainError(
                f"cannot add sums on {list(self.label_set)} and "
                f"{list(other.label_set)}")
        merged = dict(self._terms)
        for tree, coeff in other._terms.items():
            merged[tree] = merged.get(tree, 0) + coeff
        return TreeSum(self.label_set, merged)

    def __sub__(self, other: "TreeSum") -> "TreeSum":
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, scalar: int) -> "TreeSum":
        if not isinstance(scalar, int) or isinstance(scalar, bool):
            return NotImplemented
        return TreeSum(self.label_set,
                       {t: scalar * c for t, c in self._terms.items()})

    __rmul__ = __mul__

    def __str__(self):
        if not self._terms:
            return "0"
        chunks = []
        for tree, coeff in self.items():
            body = serialize_tree(tree) if abs(coeff) == 1 \
                else f"{abs(coeff)}*{serialize_tree(tree)}"
            chunks.append(("-" if coeff < 0 else "+", body))
        head_sign, head = chunks[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__

    def as_json(self) -> dict:
        """The wire shape: label_set plus terms sorted by tree text."""
        return {
            "label_set": list(self.label_set),
            "terms": [{"coeff": c, "tree": serialize_tree(t)}
                      for t, c in self.items()],
        }


Summand = Union[RootedTree, TreeSum]


def as_sum(x: Summand) -> TreeSum:
    """Coerce a bare tree to the one-term sum; pass sums through."""
    if isinstance(x, RootedTree):
        return TreeSum.from_tree(x)
    if isinstance(x, TreeSum):
        return x
    raise DomainError(f"expected a RootedTree or TreeSum, got {x!r}")


def _check_disjoint(left: frozenset, right: frozenset):
    shared = left & right
    if shared:
        raise LabelOverlapError(shared)


def graft(t: RootedTree, y: RootedTree, at: int) -> RootedTree:
    """Attach the root of `y` as a new child of vertex `at` in `t`."""
    _check_disjoint(t.labels, y.labels)
    if at not in t.labels:
        raise DomainError(f"graft target {at} is not a vertex of {t!r}")
    return _graft_unchecked(t, y, at)


def _graft_unchecked(node: RootedTree, y: RootedTree, at: int) -> RootedTree:
    if node.root == at:
        return RootedTree(node.root, node.children + (y,))
    return RootedTree(node.root,
                      tuple(_graft_unchecked(c, y, at) if at in c.labels else c
                            for c in node.children))


def prelie_product(t: Summand, y: Summand) -> TreeSum:
    """Sum of all graftings of `y` onto the vertices of `t`.

    Extends bilinearly when either argument is a TreeSum.
    """
    left, right = as_sum(t), as_sum(y)
    _check_disjoint(frozenset(left.label_set), frozenset(right.label_set))
    combined = left.label_set + right.label_set
    acc: dict[RootedTree, int] = {}
    for lt, lc in left.terms.items():
        for rt, rc in right.terms.items():
            grafted = [_graft_unchecked(lt, rt, at) for at in sorted(lt.labels)]
            if len(set(grafted)) != len(grafted):
                raise RuntimeError(
                    f"graftings of {rt!r} on {lt!r} collided; "
                    "grafts at distinct vertices must be distinct trees")
            for z in grafted:
                acc[z] = acc.get(z, 0) + lc * rc
    return TreeSum(combined, acc)


def lie_bracket(t: Summand, y: Summand) -> TreeSum:
    """prelie_product(t, y) - prelie_product(y, t), extended bilinearly."""
    return prelie_product(t, y) - prelie_product(y, t)


def _check_relabeling(mapping: Mapping[int, int], labels: frozenset):
    for lbl in labels:
        if lbl not in mapping:
            raise DomainError(f"relabeling is not defined on label {lbl}")
    images = [mapping[lbl] for lbl in labels]
    if len(set(images)) != len(images):
        raise DomainError("relabeling is not injective on the label set")


def relabel(x: Summand, mapping: Mapping[int, int]):
    """Replace every vertex label via the bijection `mapping`.

    Returns a RootedTree for tree input, a TreeSum for sum input; trees are
    re-canonicalized, coefficients are preserved.
    """
    if isinstance(x, RootedTree):
        _check_relabeling(mapping, x.labels)
        return _relabel_tree(x, mapping)
    x = as_sum(x)
    _check_relabeling(mapping, frozenset(x.label_set))
    new_labels = [mapping[lbl] for lbl in x.label_set]
    return TreeSum(new_labels,
                   {_relabel_tree(t, mapping): c for t, c in x.terms.items()})


def _relabel_tree(node: RootedTree, mapping: Mapping[int, int]) -> RootedTree:
    return RootedTree(mapping[node.root],
                      [_relabel_tree(c, mapping) for c in node.children])


def operad_compose(t: Summand, i: int, s: Summand) -> TreeSum:
    """Substitute `s` for the vertex `i` of `t`, in all ways.

    One term per function from the child subtrees of `i` to the vertices of
    `s`: the vertex `i` is deleted, the root of `s` takes over its outgoing
    edge (or becomes the root when `i` was the root), and each former child
    of `i` is reattached at its assigned vertex of `s`.  Extends bilinearly.
    """
    left, right = as_sum(t), as_sum(s)
    if i not in left.label_set:
        raise DomainError(f"composition vertex {i} is not in {list(left.label_set)}")
    kept = frozenset(left.label_set) - {i}
    _check_disjoint(kept, frozenset(right.label_set))
    combined = sorted(kept | frozenset(right.label_set))
    acc: dict[RootedTree, int] = {}
    for lt, lc in left.terms.items():
        for rt, rc in right.terms.items():
            pieces = _compose_trees(lt, i, rt)
            for z in pieces:
                acc[z] = acc.get(z, 0) + lc * rc
    return TreeSum(combined, acc)


def _compose_trees(t: RootedTree, i: int, s: RootedTree) -> list[RootedTree]:
    site = next(n for n in t.iter_vertices() if n.root == i)
    incoming = site.children
    targets = sorted(s.labels)
    out = []
    for assign in itertools.product(targets, repeat=len(incoming)):
        core = s
        for child, target in zip(incoming, assign):
            core = _graft_unchecked(core, child, target)
        out.append(core if t.root == i else _replace_subtree(t, i, core))
    if len(set(out)) != len(out):
        raise RuntimeError(
            f"substitutions of {s!r} for vertex {i} of {t!r} collided; "
            "distinct reattachment maps must give distinct trees")
    return out


def _replace_subtree(node: RootedTree, i: int, replacement: RootedTree) -> RootedTree:
    return RootedTree(node.root,
                      tuple(replacement if c.root == i
                            else (_replace_subtree(c, i, replacement)
                                  if i in c.labels else c)
                            for c in node.children))


def composed_order(i_labels: Iterable[int], i: int,
                   j_labels: Iterable[int]) -> dict[int, int]:
    """Order on (I minus i) + J after composing at i, as a relabeling.

    Both sets keep their internal orders and every survivor x of I compares
    to the whole of J the way x compared to i.  Returned as the
    order-preserving map onto {1, ..., m}, ready for `relabel`, so degrees
    of composition results are read off in the right order.
    """
    iset = label_set(i_labels)
    jset = label_set(j_labels)
    if i not in iset:
        raise DomainError(f"composition vertex {i} is not in {list(iset)}")
    _check_disjoint(frozenset(iset) - {i}, frozenset(jset))
    sequence = [x for x in iset if x < i] + list(jset) + \
               [x for x in iset if x > i]
    return {lbl: pos for pos, lbl in enumerate(sequence, start=1)}
