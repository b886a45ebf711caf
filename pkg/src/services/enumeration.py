"""
Isomorph-free generation of free trees.

Trees are produced as level sequences (depth of each vertex in DFS preorder)
by the Wright-Richmond-Odlyzko-McKay successor method: Beyer-Hedetniemi
rooted-tree successors, filtered to one rooting per free tree. The sequential
order starts at the path rooted at its centre and is the order in which the
successor function visits level sequences (lexicographically decreasing
within each root-subtree split).
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .core import DegreeSequence, DomainError, Tree, contribution_table, is_tree_degree_sequence

logger = logging.getLogger(__name__)

# Number of free trees of order n, n = 0..26 (OEIS A000055).
FREE_TREE_COUNTS = (
    1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320,
    48629, 123867, 317955, 823065, 2144505, 5623756, 14828074, 39299897,
    104636890, 279793450,
)


# -- level-sequence generator -----------------------------------------

def _next_rooted_tree(predecessor: List[int], p: Optional[int] = None) -> Optional[List[int]]:
    """One Beyer-Hedetniemi successor step."""
    if p is None:
        p = len(predecessor) - 1
        while predecessor[p] == 1:
            p -= 1
    if p == 0:
        return None

    q = p - 1
    while predecessor[q] != predecessor[p] - 1:
        q -= 1
    result = list(predecessor)
    for i in range(p, len(result)):
        result[i] = result[i - p + q]
    return result


def _split_tree(layout: List[int]) -> Tuple[List[int], List[int]]:
    """Split off the first subtree of the root: (left subtree, remainder)."""
    m = len(layout)
    seen_first = False
    for i in range(1, len(layout)):
        if layout[i] == 1:
            if seen_first:
                m = i
                break
            seen_first = True
    left = [level - 1 for level in layout[1:m]]
    rest = [0] + layout[m:]
    return left, rest


def _next_free_tree(candidate: List[int]) -> List[int]:
    """Advance candidate to the next level sequence that is a valid free-tree rooting."""
    left, rest = _split_tree(candidate)

    left_height = max(left)
    rest_height = max(rest)
    valid = rest_height >= left_height
    if valid and rest_height == left_height:
        if len(left) > len(rest):
            valid = False
        elif len(left) == len(rest) and left > rest:
            valid = False
    if valid:
        return candidate

    # jump past every rooting with an oversized first subtree
    p = len(left)
    new_candidate = _next_rooted_tree(candidate, p)
    if candidate[p] > 2:
        new_left, _ = _split_tree(new_candidate)
        suffix = range(1, max(new_left) + 2)
        new_candidate[-len(suffix):] = suffix
    return new_candidate


@dataclass(frozen=True)
class Partition:
    """
    Job `job` of `jobs`: the level sequences whose first `prefix_length`
    entries hash to `job` modulo `jobs`. Partitions of one stream are
    disjoint and together cover it.
    """
    job: int
    jobs: int
    prefix_length: int = 8

    def __post_init__(self):
        if self.jobs < 1 or not 0 <= self.job < self.jobs:
            raise DomainError(f"Invalid partition {self.job}/{self.jobs}.")
        if self.prefix_length < 1:
            raise DomainError("Partition prefix length must be positive.")

    @classmethod
    def split(cls, jobs: int, prefix_length: int = 8) -> List["Partition"]:
        return [cls(job, jobs, prefix_length) for job in range(jobs)]

    def contains(self, levels: Sequence[int]) -> bool:
        return hash(tuple(levels[:self.prefix_length])) % self.jobs == self.job

    @property
    def name(self) -> str:
        return f"job{self.job:03d}of{self.jobs:03d}"


def iter_level_sequences(n: int, partition: Optional[Partition] = None) -> Iterator[List[int]]:
    """
    Yield one level sequence per free tree of order n.
    Yielded lists are owned by the generator; copy before mutating.
    """
    if n < 1:
        raise DomainError(f"Tree order must be at least 1, got {n}.")
    if n == 1:
        if partition is None or partition.contains([0]):
            yield [0]
        return

    layout = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while layout is not None:
        layout = _next_free_tree(layout)
        if layout is not None:
            if partition is None or partition.contains(layout):
                yield layout
            layout = _next_rooted_tree(layout)


def enumerate_trees(n: int, partition: Optional[Partition] = None) -> Iterator[Tree]:
    for levels in iter_level_sequences(n, partition):
        yield Tree.from_level_sequence(levels)


def level_sequence_abc(levels: Sequence[int], table: Sequence[Sequence[float]]) -> float:
    """ABC index straight from a level sequence; table must cover degree len(levels) - 1."""
    n = len(levels)
    parent = [0] * n
    degree = [0] * n
    last = [0] * (n + 1)
    for i in range(1, n):
        depth = levels[i]
        p = last[depth - 1]
        parent[i] = p
        degree[p] += 1
        degree[i] += 1
        last[depth] = i
    total = 0.0
    for i in range(1, n):
        total += table[degree[i]][degree[parent[i]]]
    return total


# -- canonical form -----------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Canonical level sequence of a tree rooted at its (larger-coded) centroid."""
    levels: Tuple[int, ...]

    def hex(self) -> str:
        if max(self.levels) < 256:
            return bytes(self.levels).hex()
        return ".".join(format(level, "x") for level in self.levels)

    def to_tree(self) -> Tree:
        return Tree.from_level_sequence(self.levels)

    def __str__(self) -> str:
        return self.hex()


def rooted_canonical_levels(tree: Tree, root: int) -> Tuple[int, ...]:
    """
    Largest level sequence of the tree rooted at root: children's sub-sequences
    concatenated in decreasing lexicographic order.
    """
    order, parent = tree.rooted(root)
    forms: List[Optional[Tuple[int, ...]]] = [None] * tree.n
    for v in reversed(order):
        kids = [forms[w] for w in tree.adjacency[v] if w != parent[v]]
        kids.sort(reverse=True)
        form = [0]
        for kid in kids:
            form.extend(level + 1 for level in kid)
        forms[v] = tuple(form)
        for w in tree.adjacency[v]:
            if w != parent[v]:
                forms[w] = None
    return forms[root]


def centroids(tree: Tree) -> List[int]:
    if tree.n <= 2:
        return list(range(tree.n))
    order, parent = tree.rooted(0)
    size = [1] * tree.n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    result = []
    for v in range(tree.n):
        largest = tree.n - size[v]
        for w in tree.adjacency[v]:
            if w != parent[v]:
                largest = max(largest, size[w])
        if 2 * largest <= tree.n:
            result.append(v)
    return result


def canonical_code(tree: Tree) -> CanonicalCode:
    return CanonicalCode(max(rooted_canonical_levels(tree, c) for c in centroids(tree)))


# -- degree sequences ----------------------------------------------------

def _integer_partitions(total: int, largest: int) -> Iterator[List[int]]:
    """Partitions of total with parts <= largest, reverse lexicographic."""
    if total == 0:
        yield []
        return
    for part in range(min(total, largest), 0, -1):
        for tail in _integer_partitions(total - part, part):
            yield [part] + tail


def iter_tree_degree_sequences(n: int) -> Iterator[DegreeSequence]:
    """
    Every tree degree sequence of order n, from the star down to the path.
    Degrees minus one form a partition of n - 2.
    """
    if n < 1:
        raise DomainError(f"Tree order must be at least 1, got {n}.")
    if n == 1:
        yield DegreeSequence((0,))
        return
    for parts in _integer_partitions(n - 2, n - 2):
        values = [p + 1 for p in parts] + [1] * (n - len(parts))
        yield DegreeSequence(tuple(values))


def _assignments(slots: Sequence[int], pool: Counter) -> Iterator[List[int]]:
    """Distinct assignments of the pool's degrees to slots with degree >= slot minimum."""
    values = sorted(pool, reverse=True)
    assigned: List[int] = []

    def extend(i: int) -> Iterator[List[int]]:
        if i == len(slots):
            yield list(assigned)
            return
        for value in values:
            if pool[value] and value >= slots[i]:
                pool[value] -= 1
                assigned.append(value)
                yield from extend(i + 1)
                assigned.pop()
                pool[value] += 1

    yield from extend(0)


def enumerate_trees_with_degree_sequence(d: DegreeSequence, method: str = "assemble") -> Iterator[Tree]:
    """
    One tree per isomorphism class with degree multiset d.

    "assemble" lays the non-leaf degrees out on every skeleton tree (the tree
    left after deleting all leaves) and hangs the leaves back on;
    "filter" scans the full enumeration and is kept as an audit oracle.
    """
    if d.values == (0,):
        yield Tree(1, [[]])
        return
    if not is_tree_degree_sequence(d):
        raise DomainError(f"Degree sequence {d} is not realizable by a tree.")

    if method == "filter":
        target = d.values
        for tree in enumerate_trees(d.n):
            if tuple(sorted(tree.degrees, reverse=True)) == target:
                yield tree
        return
    if method != "assemble":
        raise DomainError(f"Unknown enumeration method '{method}'.")

    inner = d.non_leaf()
    if len(inner) <= 1:
        yield Tree.from_edges(d.n, ((0, i) for i in range(1, d.n)))
        return

    seen = set()
    k = len(inner)
    for skeleton in enumerate_trees(k):
        for degrees in _assignments(skeleton.degrees, Counter(inner)):
            edges = skeleton.edges()
            leaf = k
            for v in range(k):
                for _ in range(degrees[v] - skeleton.degrees[v]):
                    edges.append((v, leaf))
                    leaf += 1
            tree = Tree.from_edges(d.n, edges, validate=False)
            code = canonical_code(tree)
            if code not in seen:
                seen.add(code)
                yield tree
    logger.debug(f"Degree sequence {d}: {len(seen)} realizations")


def count_trees(n: int, partition: Optional[Partition] = None) -> int:
    return sum(1 for _ in iter_level_sequences(n, partition))


def abc_table_for(n: int):
    return contribution_table(max(1, n - 1))
