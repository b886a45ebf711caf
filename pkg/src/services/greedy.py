"""
Greedy trees: the BFS-layered, degree-sorted realization of a degree sequence.

The root takes the largest degree; vertices are then filled level by level,
children of a larger-degree vertex before those of a smaller one, always
handing out the largest remaining degrees first.
"""
import logging
from dataclasses import dataclass
from typing import List

from .core import DegreeSequence, DomainError, Tree, degree_sequence, is_tree_degree_sequence
from .enumeration import canonical_code

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GreedyLayout:
    tree: Tree
    bfs_order: List[int]
    level_of: List[int]

    @property
    def root(self) -> int:
        return self.bfs_order[0]

    def violations(self) -> List[str]:
        """Layout invariants that fail; empty for a well-formed greedy layout."""
        problems = []
        degrees = self.tree.degrees
        if degrees[self.root] != self.tree.max_degree():
            problems.append(f"root {self.root} does not have maximum degree")

        last_by_level = {}
        for v in self.bfs_order:
            level = self.level_of[v]
            if level in last_by_level and degrees[last_by_level[level]] < degrees[v]:
                problems.append(f"level {level}: degree {degrees[v]} of {v} follows a smaller one")
            last_by_level[level] = v

        # parents of consecutive same-level vertices must appear in BFS order
        _, parent = self.tree.rooted(self.root)
        position = {v: i for i, v in enumerate(self.bfs_order)}
        for a, b in zip(self.bfs_order[1:], self.bfs_order[2:]):
            if self.level_of[a] == self.level_of[b] and position[parent[a]] > position[parent[b]]:
                problems.append(f"children of {parent[b]} assigned before those of {parent[a]}")
        return problems


def build_greedy_tree(d: DegreeSequence) -> GreedyLayout:
    if d.values == (0,):
        return GreedyLayout(Tree(1, [[]]), [0], [0])
    if not is_tree_degree_sequence(d):
        raise DomainError(f"Degree sequence {d} is not realizable by a tree.")

    # vertex i receives the i-th largest degree; ids follow BFS order
    n = d.n
    level_of = [0] * n
    edges = []
    next_vertex = 1
    for v, degree in enumerate(d.values):
        for _ in range(degree if v == 0 else degree - 1):
            edges.append((v, next_vertex))
            level_of[next_vertex] = level_of[v] + 1
            next_vertex += 1
    tree = Tree.from_edges(n, edges)
    return GreedyLayout(tree, list(range(n)), level_of)


def is_greedy_layout(tree: Tree) -> bool:
    """
    True when the tree is isomorphic to the greedy tree of its own degree
    sequence. The greedy construction is deterministic up to isomorphism,
    so this is the same as some max-degree rooting admitting a greedy BFS
    assignment.
    """
    if tree.n == 1:
        return True
    greedy = build_greedy_tree(degree_sequence(tree))
    return canonical_code(tree) == canonical_code(greedy.tree)
