import unittest
import random
import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

from src.services.branches import (
    auto_root,
    bfs_degree_order_violations,
    classify_branches,
    decompose_paths,
    interleaved_chain,
    path_degree_ordering_violations,
    resolve_root,
)
from src.services.core import DegreeSequence, DomainError, Tree, TreeBuilder, path_tree, star_tree
from src.services.enumeration import enumerate_trees
from src.services.greedy import build_greedy_tree

def hang(builder, parent, kind, count=1):
    for _ in range(count):
        if kind == "leaf":
            builder.add_child(parent)
        elif kind == "arm":
            builder.add_child(builder.add_child(parent))
        elif kind == "long":
            builder.add_child(builder.add_child(builder.add_child(parent)))
        else:
            center = builder.add_child(parent)
            hang(builder, center, "arm", int(kind[1:]))

def rooted_tree(*parts):
    builder = TreeBuilder(1)
    for kind, count in parts:
        hang(builder, 0, kind, count)
    return builder.freeze()

class TestPathDecomposition(unittest.TestCase):
    def test_spider(self):
        tree = rooted_tree(("arm", 2), ("leaf", 1))
        paths = decompose_paths(tree)
        self.assertEqual(paths.pendant_lengths(), [1, 2, 2])
        self.assertEqual(paths.internal_paths, [])
        self.assertTrue(all(p.start == 0 for p in paths.pendant_paths))

    def test_internal_path(self):
        # two degree-3 vertices joined by a path of length 3
        tree = Tree.from_edges(10, [(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (3, 6), (3, 7), (6, 8), (7, 9)])
        paths = decompose_paths(tree)
        self.assertEqual(len(paths.internal_paths), 1)
        self.assertEqual(paths.internal_paths[0].length, 3)
        self.assertEqual(paths.internal_paths[0].endpoints, (0, 3))

    def test_star(self):
        self.assertEqual(decompose_paths(star_tree(5)).pendant_lengths(), [1, 1, 1, 1])

    def test_degenerate(self):
        paths = decompose_paths(path_tree(4))
        self.assertTrue(paths.degenerate)
        self.assertEqual(len(paths.whole_path), 4)
        self.assertTrue(decompose_paths(Tree(1, [[]])).degenerate)

    def test_every_leaf_in_one_pendant_path(self):
        for tree in enumerate_trees(10):
            paths = decompose_paths(tree)
            if paths.degenerate:
                continue
            ends = sorted(p.vertices[-1] for p in paths.pendant_paths)
            self.assertEqual(ends, tree.leaves())
            for p in paths.pendant_paths:
                self.assertGreater(tree.degrees[p.start], 2)
                self.assertTrue(all(tree.degrees[v] == 2 for v in p.vertices[1:-1]))

class TestClassifyBranches(unittest.TestCase):
    def test_five_b4_branches(self):
        tree = rooted_tree(("B4", 5))
        self.assertEqual(auto_root(tree), 0)
        profile = classify_branches(tree, 0)
        self.assertEqual(profile.count(4), 5)
        self.assertTrue(all(profile.parent_of[c] == 0 for c in profile.b_centers[4]))
        self.assertEqual(profile.inventory[0], (0, 0, 0, 5))
        # arms inside B4 branches are not B1 branches
        self.assertEqual(profile.count(1), 0)

    def test_kragujevac_inventory(self):
        tree = rooted_tree(("B2", 2), ("B3", 3))
        profile = classify_branches(tree, 0)
        self.assertEqual(profile.inventory[0], (0, 2, 3, 0))

    def test_b1_star(self):
        tree = rooted_tree(("B2", 1), ("long", 1), ("leaf", 1))
        profile = classify_branches(tree, 0)
        self.assertEqual(profile.star_count(1), 1)
        self.assertEqual(profile.count(1), 0)
        self.assertEqual(profile.count(2), 1)
        self.assertIn((1, True), profile.children_kinds(0))

    def test_b1_needs_big_sibling(self):
        # arms whose parent has no child of degree >= 3 are plain pendant paths
        profile = classify_branches(rooted_tree(("arm", 4)), 0)
        self.assertEqual(profile.count(1), 0)

    def test_terminal_vertex(self):
        tree = rooted_tree(("B2", 1), ("arm", 2))
        profile = classify_branches(tree, 0)
        self.assertEqual(profile.count(1), 2)
        self.assertEqual(profile.terminal_vertices, [(0, 2)])

    def test_star_branch_not_double_counted(self):
        builder = TreeBuilder(1)
        center = builder.add_child(0)
        hang(builder, center, "arm", 2)
        hang(builder, center, "long", 1)
        hang(builder, 0, "B3", 2)
        profile = classify_branches(builder.freeze(), 0)
        self.assertEqual(profile.b_star_centers.get(3), [center])
        self.assertNotIn(center, profile.b_centers.get(3, []))

    def test_relabelling_invariance(self):
        tree = rooted_tree(("B2", 2), ("B3", 1), ("arm", 2))
        rng = random.Random(5)
        perm = list(range(tree.n))
        rng.shuffle(perm)
        before = classify_branches(tree, 0)
        after = classify_branches(tree.relabel(perm), perm[0])
        for k in range(1, 5):
            self.assertEqual(before.count(k), after.count(k))
            self.assertEqual(before.star_count(k), after.star_count(k))

    def test_resolve_root(self):
        tree = star_tree(4)
        self.assertEqual(resolve_root(tree, "auto"), 0)
        self.assertEqual(resolve_root(tree, "2"), 2)
        with self.assertRaises(DomainError):
            resolve_root(tree, 9)
        with self.assertRaises(DomainError):
            resolve_root(tree, "centre")

class TestDegreeOrderings(unittest.TestCase):
    def test_bfs_order_greedy(self):
        for d in [(4, 3, 3, 1, 1, 1, 1, 1, 1), (3, 3, 3, 2, 1, 1, 1, 1, 1)]:
            layout = build_greedy_tree(DegreeSequence(d))
            self.assertEqual(bfs_degree_order_violations(layout.tree, layout.root), [])

    def test_bfs_order_path(self):
        self.assertEqual(bfs_degree_order_violations(path_tree(6), 0), [])

    def test_bfs_order_violation(self):
        builder = TreeBuilder(1)
        hang(builder, 0, "leaf", 3)
        first = builder.add_child(0)
        hang(builder, first, "leaf", 2)
        second = builder.add_child(0)
        late = builder.add_child(second)
        hang(builder, second, "leaf", 1)
        hang(builder, late, "leaf", 3)
        pairs = bfs_degree_order_violations(builder.freeze(), 0)
        self.assertIn((first, late), pairs)

    def test_interleaved_chain(self):
        self.assertEqual(interleaved_chain([1, 2, 3, 4, 5]), [1, 5, 2, 4, 3])
        self.assertEqual(interleaved_chain([1, 2, 3, 4]), [1, 4, 2, 3])
        self.assertEqual(interleaved_chain([]), [])

    def test_path_ordering_clean(self):
        self.assertEqual(path_degree_ordering_violations(path_tree(5)), [])
        greedy = build_greedy_tree(DegreeSequence((4, 3, 3, 1, 1, 1, 1, 1, 1))).tree
        self.assertEqual(path_degree_ordering_violations(greedy), [])

    def test_path_ordering_caterpillar(self):
        # spine degrees 3, 2, 5, 2, 3
        builder = TreeBuilder(5)
        for a, b in ((0, 1), (1, 2), (2, 3), (3, 4)):
            builder.add_edge(a, b)
        hang(builder, 0, "leaf", 2)
        hang(builder, 2, "leaf", 3)
        hang(builder, 4, "leaf", 2)
        witnesses = path_degree_ordering_violations(builder.freeze())
        self.assertTrue(witnesses)
        self.assertIn([3, 3, 2, 2, 5], [w.chain for w in witnesses])

if __name__ == "__main__":
    unittest.main()
