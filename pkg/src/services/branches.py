"""
Structural taxonomy of rooted trees: pendant and internal paths, B_k and
B_k* branches, k-terminal vertices, and the degree-ordering checks.

An *arm* of a vertex x is a child c of degree 2 whose only child is a leaf,
i.e. a pendant path of length 2 hanging from x. A *long arm* is the same
with one more degree-2 vertex (a pendant path of length 3).
"""
import logging
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from .core import DomainError, Tree
from .enumeration import rooted_canonical_levels

logger = logging.getLogger(__name__)


class PendantPath(BaseModel):
    start: int
    length: int
    vertices: List[int]


class InternalPath(BaseModel):
    endpoints: Tuple[int, int]
    length: int
    vertices: List[int]


class PathDecomposition(BaseModel):
    pendant_paths: List[PendantPath] = Field(default_factory=list)
    internal_paths: List[InternalPath] = Field(default_factory=list)
    # set when the tree has no vertex of degree > 2
    degenerate: bool = False
    whole_path: List[int] = Field(default_factory=list)

    def pendant_lengths(self) -> List[int]:
        return sorted(p.length for p in self.pendant_paths)


class BranchProfile(BaseModel):
    root: int
    b_centers: Dict[int, List[int]] = Field(default_factory=dict)
    b_star_centers: Dict[int, List[int]] = Field(default_factory=dict)
    terminal_vertices: List[Tuple[int, int]] = Field(default_factory=list)
    # parent -> (n1, n2, n3, n4), only parents with at least one such child
    inventory: Dict[int, Tuple[int, int, int, int]] = Field(default_factory=dict)
    parent_of: Dict[int, int] = Field(default_factory=dict)

    def count(self, k: int) -> int:
        return len(self.b_centers.get(k, []))

    def star_count(self, k: int) -> int:
        return len(self.b_star_centers.get(k, []))

    def children_kinds(self, parent: int) -> List[Tuple[int, bool]]:
        """(k, starred) for every branch center whose parent is `parent`."""
        kinds = []
        for k, centers in self.b_centers.items():
            kinds.extend((k, False) for c in centers if self.parent_of[c] == parent)
        for k, centers in self.b_star_centers.items():
            kinds.extend((k, True) for c in centers if self.parent_of[c] == parent)
        return kinds


class PathWitness(BaseModel):
    leaves: Tuple[int, int]
    path: List[int]
    chain: List[int]


# -- paths --------------------------------------------------------------

def decompose_paths(tree: Tree) -> PathDecomposition:
    degrees = tree.degrees
    if tree.n < 3 or max(degrees) <= 2:
        if tree.n == 1:
            return PathDecomposition(degenerate=True, whole_path=[0])
        start = tree.leaves()[0]
        return PathDecomposition(degenerate=True, whole_path=tree.bfs_order(start))

    pendant, internal = [], []
    for x in range(tree.n):
        if degrees[x] <= 2:
            continue
        for w in tree.adjacency[x]:
            walk = [x, w]
            while degrees[walk[-1]] == 2:
                a, b = tree.adjacency[walk[-1]]
                walk.append(a if b == walk[-2] else b)
            end = walk[-1]
            if degrees[end] == 1:
                pendant.append(PendantPath(start=x, length=len(walk) - 1, vertices=walk))
            elif x < end:
                internal.append(InternalPath(endpoints=(x, end), length=len(walk) - 1, vertices=walk))
    return PathDecomposition(pendant_paths=pendant, internal_paths=internal)


# -- rooting ------------------------------------------------------------

def eccentricity(tree: Tree, v: int) -> int:
    order, parent = tree.rooted(v)
    depth = [0] * tree.n
    for w in order[1:]:
        depth[w] = depth[parent[w]] + 1
    return max(depth)


def auto_root(tree: Tree) -> int:
    """
    A maximum-degree vertex: the most central one, then the largest rooted
    canonical code, then the smallest id.
    """
    candidates = tree.max_degree_vertices()
    if len(candidates) == 1:
        return candidates[0]
    return min(
        candidates,
        key=lambda v: (eccentricity(tree, v), tuple(-x for x in rooted_canonical_levels(tree, v)), v),
    )


def resolve_root(tree: Tree, root) -> int:
    """Accept 'auto', None or a vertex id."""
    if root is None or root == "auto":
        return auto_root(tree)
    try:
        root = int(root)
    except (TypeError, ValueError):
        raise DomainError(f"Root must be 'auto' or a vertex id, got '{root}'.")
    if not 0 <= root < tree.n:
        raise DomainError(f"Root {root} is not a vertex of the tree.")
    return root


# -- branches -----------------------------------------------------------

def _is_arm(tree: Tree, parent: int, c: int) -> bool:
    if tree.degrees[c] != 2:
        return False
    a, b = tree.adjacency[c]
    tail = b if a == parent else a
    return tree.degrees[tail] == 1


def _is_long_arm(tree: Tree, parent: int, c: int) -> bool:
    if tree.degrees[c] != 2:
        return False
    a, b = tree.adjacency[c]
    tail = b if a == parent else a
    return _is_arm(tree, c, tail)


def classify_branches(tree: Tree, root: int) -> BranchProfile:
    if not 0 <= root < tree.n:
        raise DomainError(f"Root {root} is not a vertex of the tree.")
    degrees = tree.degrees
    order, parent = tree.rooted(root)
    children: List[List[int]] = [[] for _ in range(tree.n)]
    for v in order[1:]:
        children[parent[v]].append(v)
    has_big_child = [any(degrees[c] >= 3 for c in children[v]) for v in range(tree.n)]

    b_centers: Dict[int, List[int]] = {}
    b_star_centers: Dict[int, List[int]] = {}
    parent_of: Dict[int, int] = {}
    kind: Dict[int, Tuple[int, bool]] = {}

    for x in order[1:]:
        p = parent[x]
        kids = children[x]
        if degrees[x] == 2:
            if not has_big_child[p]:
                continue
            if degrees[kids[0]] == 1:
                kind[x] = (1, False)
            elif _is_arm(tree, x, kids[0]):
                kind[x] = (1, True)
        elif degrees[x] >= 3:
            k = len(kids)
            arms = sum(1 for c in kids if _is_arm(tree, x, c))
            if arms == k:
                kind[x] = (k, False)
            elif arms == k - 1 and sum(1 for c in kids if _is_long_arm(tree, x, c)) == 1:
                kind[x] = (k, True)
        if x in kind:
            k, starred = kind[x]
            (b_star_centers if starred else b_centers).setdefault(k, []).append(x)
            parent_of[x] = p

    terminal = []
    for x in order:
        kids = children[x]
        if degrees[x] < 3 or not kids:
            continue
        if all(c in kind for c in kids) and any(kind[c][0] == 1 for c in kids):
            terminal.append((x, degrees[x] - 1))

    inventory: Dict[int, List[int]] = {}
    for x, (k, starred) in kind.items():
        if not starred and 1 <= k <= 4:
            inventory.setdefault(parent_of[x], [0, 0, 0, 0])[k - 1] += 1

    return BranchProfile(
        root=root,
        b_centers={k: sorted(v) for k, v in sorted(b_centers.items())},
        b_star_centers={k: sorted(v) for k, v in sorted(b_star_centers.items())},
        terminal_vertices=sorted(terminal),
        inventory={p: tuple(c) for p, c in sorted(inventory.items())},
        parent_of=dict(sorted(parent_of.items())),
    )


# -- degree orderings ----------------------------------------------------

def signature_bfs_order(tree: Tree, root: int) -> List[int]:
    """
    BFS from root visiting children in decreasing order of their rooted
    signature (degree, then children's signatures, largest first).
    """
    order, parent = tree.rooted(root)
    signature: List[Optional[tuple]] = [None] * tree.n
    for v in reversed(order):
        kids = sorted((signature[w] for w in tree.adjacency[v] if w != parent[v]), reverse=True)
        signature[v] = (tree.degrees[v], tuple(kids))

    result = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        kids = [w for w in tree.adjacency[v] if w != parent[v]]
        kids.sort(key=lambda w: signature[w], reverse=True)
        result.extend(kids)
        queue.extend(kids)
    return result


def bfs_degree_order_violations(tree: Tree, root: int) -> List[Tuple[int, int]]:
    """Pairs (v_i, v_j), i < j in BFS order, both of degree >= 3 with d(v_i) < d(v_j)."""
    degrees = tree.degrees
    big = [v for v in signature_bfs_order(tree, root) if degrees[v] >= 3]
    violations = []
    for i, a in enumerate(big):
        for b in big[i + 1:]:
            if degrees[a] < degrees[b]:
                violations.append((a, b))
    return violations


def interleaved_chain(degrees: Sequence[int]) -> List[int]:
    """d(v_1), d(v_t), d(v_2), d(v_{t-1}), ... for interior degrees d(v_1)..d(v_t)."""
    chain = []
    i, j = 0, len(degrees) - 1
    while i <= j:
        chain.append(degrees[i])
        if i != j:
            chain.append(degrees[j])
        i += 1
        j -= 1
    return chain


def _non_decreasing(values: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


def _leaf_paths(tree: Tree, source: int) -> Dict[int, List[int]]:
    _, parent = tree.rooted(source)
    paths = {}
    for leaf in tree.leaves():
        if leaf <= source:
            continue
        path = [leaf]
        while path[-1] != source:
            path.append(parent[path[-1]])
        paths[leaf] = path[::-1]
    return paths


def path_degree_ordering_violations(tree: Tree) -> List[PathWitness]:
    """
    Leaf-to-leaf paths whose interleaved interior degree chain is not
    non-decreasing in either orientation.
    """
    degrees = tree.degrees
    witnesses = []
    for source in tree.leaves():
        for leaf, path in _leaf_paths(tree, source).items():
            interior = [degrees[v] for v in path[1:-1]]
            forward = interleaved_chain(interior)
            if _non_decreasing(forward) or _non_decreasing(interleaved_chain(interior[::-1])):
                continue
            witnesses.append(PathWitness(leaves=(source, leaf), path=path, chain=forward))
    return witnesses
