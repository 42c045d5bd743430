"""Exact arithmetic for labelled rooted trees.

Grafting products and the Lie bracket they induce, operadic substitution
with its degree filtration, the basis of bracketed words of first-level-
increasing trees, the triangular change of basis onto it, and the quotient
projection with its permutation action.  Everything is integer-exact and
verifiable by brute force at small sizes via the property suites.
"""

from .algebra import (
    LabelOverlapError,
    TreeSum,
    as_sum,
    composed_order,
    graft,
    lie_bracket,
    operad_compose,
    prelie_product,
    relabel,
)
from .decompose import (
    ChangeOfBasis,
    Decomposition,
    change_of_basis,
    decompose,
    f_action,
    f_action_sum,
    lie_degree,
    project_to_f,
    tree_to_basis_index,
    word_action,
)
from .lyndon import (
    enumerate_basis,
    enumerate_partitions,
    expand_basis_element,
    expand_monomial,
    leading_term,
    lyndon_bracketing,
    lyndon_permutations,
    monomial_leaves,
    parse_monomial,
    serialize_monomial,
)
from .suites import Failure, SuiteReport, hard_limit, run_suite, suite_names
from .trees import (
    DomainError,
    DuplicateLabelError,
    MDSubtree,
    RootedTree,
    TreeSyntaxError,
    degree,
    enumerate_f_trees,
    enumerate_trees,
    is_f_tree,
    label_set,
    md_subtree,
    parse_tree,
    serialize_tree,
    set_partitions,
)

__version__ = "0.1.0"
