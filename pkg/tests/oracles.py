"""Independent brute-force references used only by the tests.

Everything here deliberately avoids the library's own algorithms: trees are
re-enumerated from parent maps, decreasing subtrees by subset search, and
linear algebra is plain fraction Gaussian elimination.
"""

from fractions import Fraction
from itertools import chain, combinations, product

from prelie.trees import RootedTree


def trees_via_parent_maps(labels):
    """Every rooted tree on `labels`, found by filtering parent functions.

    A rooted tree with root r is a map parent: V\\{r} -> V whose iteration
    always reaches r.  Returns the set of canonical serializations.
    """
    labels = sorted(labels)
    found = set()
    for root in labels:
        others = [x for x in labels if x != root]
        for parents in product(labels, repeat=len(others)):
            pmap = dict(zip(others, parents))
            if not _all_reach_root(pmap, root):
                continue
            found.add(repr(_tree_from_parent_map(root, pmap)))
    return found


def _all_reach_root(pmap, root):
    for start in pmap:
        seen = set()
        v = start
        while v != root:
            if v in seen:
                return False
            seen.add(v)
            v = pmap[v]
    return True


def _tree_from_parent_map(root, pmap):
    children = {v: [] for v in chain([root], pmap)}
    for child, parent in pmap.items():
        children[parent].append(child)

    def build(v):
        return RootedTree(v, [build(c) for c in children[v]])

    return build(root)


def parent_map(t):
    """Label -> parent label for every non-root vertex of `t`."""
    out = {}
    stack = [t]
    while stack:
        node = stack.pop()
        for c in node.children:
            out[c.root] = node.root
            stack.append(c)
    return out


def max_decreasing_subset(t):
    """Largest root-containing, parent-closed, label-decreasing vertex set.

    Checks every subset of the vertices, so it is exponential and only fit
    for small trees.  Asserts the maximum is unique.
    """
    pmap = parent_map(t)
    labels = sorted(t.labels)
    rest = [x for x in labels if x != t.root]
    valid = []
    for k in range(len(rest) + 1):
        for combo in combinations(rest, k):
            subset = set(combo) | {t.root}
            if all(pmap[v] in subset and v < pmap[v] for v in combo):
                valid.append(subset)
    best = max(len(s) for s in valid)
    winners = [s for s in valid if len(s) == best]
    assert len(winners) == 1, f"non-unique maximal decreasing subset in {t!r}"
    return frozenset(winners[0])


def det_fraction(rows):
    """Determinant of a square integer matrix by fraction elimination."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def rank_fraction(rows):
    """Rank of an integer matrix by fraction elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        for r in range(rank + 1, len(m)):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def bracket_words(monomial):
    """Expand a nested-pair bracket over hashable letters into words.

    Uses [u, v] = uv - vu in the free associative algebra; returns a dict
    word tuple -> integer coefficient.
    """
    if not isinstance(monomial, tuple):
        return {(monomial,): 1}
    left, right = (bracket_words(m) for m in monomial)
    out = {}
    for (u, cu), (v, cv) in product(left.items(), right.items()):
        for word, c in ((u + v, cu * cv), (v + u, -cu * cv)):
            out[word] = out.get(word, 0) + c
            if out[word] == 0:
                del out[word]
    return out


def multilinear_lie_rank(monomials):
    """Rank of a family of multilinear bracket monomials, via their words."""
    keys = sorted({w for m in monomials for w in bracket_words(m)})
    index = {w: i for i, w in enumerate(keys)}
    rows = []
    for m in monomials:
        row = [0] * len(keys)
        for w, c in bracket_words(m).items():
            row[index[w]] = c
        rows.append(row)
    return rank_fraction(rows)


def random_tree(rng, labels):
    """Uniform rooted tree on `labels` drawn from a seeded RNG."""
    labels = list(labels)
    root = rng.choice(labels)
    others = [x for x in labels if x != root]
    while True:
        pmap = {v: rng.choice(labels) for v in others}
        if _all_reach_root(pmap, root):
            return _tree_from_parent_map(root, pmap)
