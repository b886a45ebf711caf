"""
Tree representation, degree bookkeeping and the atom-bond connectivity index.

ABC(G) is the sum over edges uv of f(d(u), d(v)) = sqrt((d(u) + d(v) - 2) / (d(u) d(v))).
Vertex ids are dense integers 0..n-1.
"""
import math
import logging
from collections import deque
from dataclasses import dataclass
from itertools import pairwise
from typing import Iterable, List, Literal, Optional, Sequence, Tuple

import networkx as nx

from .cache import cache_manager

logger = logging.getLogger(__name__)

TreeFormat = Literal["edges", "parents", "graph6"]
Edge = Tuple[int, int]


class DomainError(ValueError):
    """Raised when an input lies outside the domain of an operation."""
    pass


def edge_contribution(x: float, y: float) -> float:
    """f(x, y) for one edge whose end-vertices have degrees x and y."""
    if x < 1 or y < 1:
        raise DomainError(f"Degrees must be at least 1, got ({x}, {y}).")
    return math.sqrt((x + y - 2) / (x * y))


def contribution_table(max_degree: int) -> List[List[float]]:
    """
    Lookup table T[x][y] = f(x, y) for 1 <= x, y <= max_degree.
    Row and column 0 are unused (0.0). Tables are cached per size.
    """
    max_degree = max(1, max_degree)
    table = cache_manager.get("table", max_degree)
    if table is None:
        table = [[0.0] * (max_degree + 1)]
        for x in range(1, max_degree + 1):
            table.append([0.0] + [edge_contribution(x, y) for y in range(1, max_degree + 1)])
        cache_manager.set("table", max_degree, table)
    return table


class Tree:
    """
    Immutable undirected tree on n vertices.
    Adjacency lists are sorted; degrees are cached at construction.
    """
    __slots__ = ("n", "adjacency", "degrees")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]],
                 degrees: Optional[Sequence[int]] = None, validate: bool = True):
        self.n = n
        self.adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adjacency)
        if degrees is None:
            self.degrees = tuple(len(nbrs) for nbrs in self.adjacency)
        else:
            self.degrees = tuple(degrees)
        if validate:
            self.validate()

    # -- construction -------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], validate: bool = True) -> "Tree":
        if n < 1:
            raise DomainError("A tree needs at least one vertex.")
        adjacency: List[List[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"Edge ({u}, {v}) references a vertex outside 0..{n - 1}.")
            adjacency[u].append(v)
            adjacency[v].append(u)
        return cls(n, adjacency, validate=validate)

    @classmethod
    def from_parents(cls, parents: Sequence[int], validate: bool = True) -> "Tree":
        """
        Build from p_1..p_{n-1} where p_i < i is the parent of vertex i.
        The root is vertex 0.
        """
        n = len(parents) + 1
        for i, p in enumerate(parents, start=1):
            if not 0 <= p < i:
                raise DomainError(f"Parent of vertex {i} must be in 0..{i - 1}, got {p}.")
        return cls.from_edges(n, ((p, i) for i, p in enumerate(parents, start=1)), validate=validate)

    @classmethod
    def from_level_sequence(cls, levels: Sequence[int], validate: bool = False) -> "Tree":
        """Build from a depth sequence in DFS preorder (root at depth 0)."""
        n = len(levels)
        last = [0] * (n + 1)
        edges = []
        for i in range(1, n):
            depth = levels[i]
            edges.append((last[depth - 1], i))
            last[depth] = i
        return cls.from_edges(n, edges, validate=validate)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Tree":
        index = {node: i for i, node in enumerate(sorted(graph.nodes))}
        return cls.from_edges(len(index), ((index[a], index[b]) for a, b in graph.edges))

    # -- invariants ---------------------------------------------------

    def validate(self) -> None:
        if self.n < 1:
            raise DomainError("A tree needs at least one vertex.")
        if len(self.adjacency) != self.n:
            raise DomainError(f"Adjacency has {len(self.adjacency)} rows for n = {self.n}.")
        edge_ends = 0
        for v, nbrs in enumerate(self.adjacency):
            if self.degrees[v] != len(nbrs):
                raise DomainError(f"Cached degree of vertex {v} is {self.degrees[v]}, adjacency has {len(nbrs)}.")
            for a, b in pairwise(nbrs):
                if a == b:
                    raise DomainError(f"Duplicate edge ({v}, {a}).")
            for w in nbrs:
                if w == v:
                    raise DomainError(f"Self-loop at vertex {v}.")
                if not 0 <= w < self.n:
                    raise DomainError(f"Vertex {v} has neighbor {w} outside 0..{self.n - 1}.")
                if v not in self.adjacency[w]:
                    raise DomainError(f"Edge ({v}, {w}) is not symmetric.")
            edge_ends += len(nbrs)
        if edge_ends != 2 * (self.n - 1):
            raise DomainError(f"A tree on {self.n} vertices has {self.n - 1} edges, got {edge_ends // 2}.")
        if len(self.bfs_order(0)) != self.n:
            raise DomainError("Graph is not connected.")

    def recompute_degrees(self) -> Tuple[int, ...]:
        """Audit path: degrees straight from the adjacency lists."""
        return tuple(len(nbrs) for nbrs in self.adjacency)

    # -- access -------------------------------------------------------

    def edges(self) -> List[Edge]:
        """Edges (u, v) with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def leaves(self) -> List[int]:
        return [v for v in range(self.n) if self.degrees[v] == 1]

    def max_degree(self) -> int:
        return max(self.degrees)

    def max_degree_vertices(self) -> List[int]:
        top = self.max_degree()
        return [v for v in range(self.n) if self.degrees[v] == top]

    def bfs_order(self, root: int) -> List[int]:
        seen = [False] * self.n
        seen[root] = True
        order = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in self.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    order.append(w)
                    queue.append(w)
        return order

    def rooted(self, root: int) -> Tuple[List[int], List[int]]:
        """BFS order from root and the parent of every vertex (-1 for the root)."""
        if not 0 <= root < self.n:
            raise DomainError(f"Root {root} is not a vertex of the tree.")
        parent = [-1] * self.n
        order = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in self.adjacency[v]:
                if w != parent[v]:
                    parent[w] = v
                    order.append(w)
                    queue.append(w)
        return order, parent

    def children(self, root: int) -> List[List[int]]:
        _, parent = self.rooted(root)
        kids: List[List[int]] = [[] for _ in range(self.n)]
        for v in range(self.n):
            if parent[v] >= 0:
                kids[parent[v]].append(v)
        return kids

    # -- relabelling and interchange ---------------------------------

    def relabel(self, permutation: Sequence[int]) -> "Tree":
        """Vertex v of self becomes vertex permutation[v]."""
        if sorted(permutation) != list(range(self.n)):
            raise DomainError("Relabelling must be a permutation of 0..n-1.")
        return Tree.from_edges(self.n, ((permutation[u], permutation[v]) for u, v in self.edges()))

    def bfs_relabelled(self, root: int = 0) -> Tuple["Tree", List[int]]:
        """Relabel in BFS order from root; returns the tree and old -> new ids."""
        order, _ = self.rooted(root)
        mapping = [0] * self.n
        for new, old in enumerate(order):
            mapping[old] = new
        return self.relabel(mapping), mapping

    def parent_array(self, root: int = 0) -> List[int]:
        """p_1..p_{n-1} of the BFS-relabelled tree rooted at root."""
        relabelled, _ = self.bfs_relabelled(root)
        _, parent = relabelled.rooted(0)
        return parent[1:]

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tree) and self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Tree(n={self.n}, edges={self.edges()})"


class TreeBuilder:
    """
    Mutable adjacency used by constructions and transformations.
    Degrees are maintained incrementally; freeze() produces an immutable Tree.
    """

    def __init__(self, n: int = 0):
        self.adjacency: List[set] = [set() for _ in range(n)]
        self.degrees: List[int] = [0] * n

    @classmethod
    def from_tree(cls, tree: Tree) -> "TreeBuilder":
        builder = cls(tree.n)
        builder.adjacency = [set(nbrs) for nbrs in tree.adjacency]
        builder.degrees = list(tree.degrees)
        return builder

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def add_vertex(self) -> int:
        self.adjacency.append(set())
        self.degrees.append(0)
        return len(self.adjacency) - 1

    def add_child(self, parent: int) -> int:
        child = self.add_vertex()
        self.add_edge(parent, child)
        return child

    def add_edge(self, u: int, v: int) -> None:
        if u == v or v in self.adjacency[u]:
            raise DomainError(f"Cannot add edge ({u}, {v}).")
        self.adjacency[u].add(v)
        self.adjacency[v].add(u)
        self.degrees[u] += 1
        self.degrees[v] += 1

    def remove_edge(self, u: int, v: int) -> None:
        if v not in self.adjacency[u]:
            raise DomainError(f"Edge ({u}, {v}) is not present.")
        self.adjacency[u].discard(v)
        self.adjacency[v].discard(u)
        self.degrees[u] -= 1
        self.degrees[v] -= 1

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def freeze(self, validate: bool = True) -> Tree:
        return Tree(self.n, self.adjacency, degrees=self.degrees, validate=validate)


@dataclass(frozen=True)
class DegreeSequence:
    """Non-increasing sequence of vertex degrees; (0,) is the single-vertex case."""
    values: Tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise DomainError("A degree sequence needs at least one entry.")
        if self.values == (0,):
            return
        if any(int(v) != v or v < 1 for v in self.values):
            raise DomainError(f"Degrees must be positive integers, got {list(self.values)}.")
        if any(a < b for a, b in pairwise(self.values)):
            raise DomainError(f"Degree sequence must be non-increasing, got {list(self.values)}.")

    @classmethod
    def of(cls, values: Iterable[int]) -> "DegreeSequence":
        """Sort the given degrees into a sequence."""
        return cls(tuple(sorted((int(v) for v in values), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "DegreeSequence":
        try:
            values = [int(part) for part in text.replace(" ", "").split(",") if part]
        except ValueError as e:
            raise DomainError(f"Cannot parse degree sequence '{text}': {e}")
        return cls.of(values)

    @property
    def n(self) -> int:
        return len(self.values)

    def non_leaf(self) -> Tuple[int, ...]:
        return tuple(v for v in self.values if v > 1)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.values)


def abc_index(tree: Tree) -> float:
    table = contribution_table(tree.max_degree())
    degrees = tree.degrees
    total = 0.0
    for u, nbrs in enumerate(tree.adjacency):
        row = table[degrees[u]]
        for v in nbrs:
            if u < v:
                total += row[degrees[v]]
    return total


def degree_sequence(tree: Tree) -> DegreeSequence:
    return DegreeSequence.of(tree.degrees)


def is_tree_degree_sequence(d) -> bool:
    values = list(d.values) if isinstance(d, DegreeSequence) else list(d)
    n = len(values)
    if n < 2:
        return False
    if any(v < 1 for v in values):
        return False
    return sum(values) == 2 * (n - 1)


def path_tree(n: int) -> Tree:
    if n < 1:
        raise DomainError("A tree needs at least one vertex.")
    return Tree.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def star_tree(n: int) -> Tree:
    if n < 1:
        raise DomainError("A tree needs at least one vertex.")
    return Tree.from_edges(n, ((0, i) for i in range(1, n)))


# -- text formats -----------------------------------------------------

def read_tree(text: str, fmt: TreeFormat = "edges") -> Tree:
    """
    Parse a tree.
    edges:   first line n, then n-1 lines 'u v' (0-based).
    parents: first line n, then p_1..p_{n-1} (whitespace separated).
    graph6:  one graph6 line (optional '>>graph6<<' header).
    """
    if fmt == "graph6":
        line = text.strip().splitlines()[0].strip().encode()
        if line.startswith(b">>graph6<<"):
            line = line[len(b">>graph6<<"):]
        try:
            graph = nx.from_graph6_bytes(line)
        except Exception as e:
            raise DomainError(f"Invalid graph6 data: {e}")
        return Tree.from_networkx(graph)

    tokens = text.split()
    if not tokens:
        raise DomainError("Empty tree file.")
    try:
        numbers = [int(tok) for tok in tokens]
    except ValueError as e:
        raise DomainError(f"Tree file must contain integers only: {e}")
    n, rest = numbers[0], numbers[1:]
    if n < 1:
        raise DomainError("A tree needs at least one vertex.")

    if fmt == "parents":
        if len(rest) != n - 1:
            raise DomainError(f"Expected {n - 1} parent entries, got {len(rest)}.")
        return Tree.from_parents(rest)
    if fmt == "edges":
        if len(rest) != 2 * (n - 1):
            raise DomainError(f"Expected {n - 1} edges, got {len(rest) / 2:g}.")
        return Tree.from_edges(n, zip(rest[0::2], rest[1::2]))
    raise DomainError(f"Unknown tree format '{fmt}'.")


def format_tree(tree: Tree, fmt: TreeFormat = "edges", root: int = 0) -> str:
    if fmt == "edges":
        lines = [str(tree.n)] + [f"{u} {v}" for u, v in tree.edges()]
        return "\n".join(lines) + "\n"
    if fmt == "parents":
        parents = tree.parent_array(root)
        return f"{tree.n}\n" + " ".join(str(p) for p in parents) + "\n"
    if fmt == "graph6":
        return nx.to_graph6_bytes(tree.to_networkx(), header=False).decode()
    raise DomainError(f"Unknown tree format '{fmt}'.")


def load_tree(path: str, fmt: TreeFormat = "edges") -> Tree:
    try:
        with open(path, "r") as f:
            text = f.read()
    except OSError as e:
        raise DomainError(f"Cannot read tree file '{path}': {e}")
    tree = read_tree(text, fmt)
    logger.info(f"Loaded tree with n={tree.n} from {path}")
    return tree
