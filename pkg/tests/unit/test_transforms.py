import unittest
import math
import sys
import os

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

from src.services.analytic import threshold_du
from src.services.core import DomainError, Tree, abc_index, edge_contribution as f, star_tree
from src.services.transforms import (
    CASE_IDS,
    PRINTED_EXCEPTION_WINDOWS,
    RULES,
    PreconditionError,
    agreement_reports,
    agreement_table,
    apply_T,
    apply_case_transform,
    bound_grid,
    build_case,
    degree_increase,
    evaluate_bound,
    exception_windows,
    random_instance,
    refined_bound,
    switch,
    switch_expected_sign,
    v_degree_after,
)

class TestPublishedBounds(unittest.TestCase):
    def test_printed_constants(self):
        self.assertAlmostEqual(evaluate_bound("T1", 67, 7), -0.0115077, delta=1e-6)
        self.assertAlmostEqual(evaluate_bound("T2", 25, 6), -0.00664864, delta=1e-6)
        self.assertAlmostEqual(evaluate_bound("T2", 67, 7), -0.0285403, delta=1e-6)

    def test_windows_match_published(self):
        for case_id in ("T1", "T2", "T3", "T41", "T42", "T5", "T6"):
            self.assertEqual(exception_windows(case_id), PRINTED_EXCEPTION_WINDOWS.get(case_id, {}), case_id)

    def test_refined_bound_closes_windows(self):
        for case_id, windows in PRINTED_EXCEPTION_WINDOWS.items():
            for dv, (low, high) in windows.items():
                for du in range(low, high + 1):
                    self.assertLess(refined_bound(case_id, du, dv), 0, f"{case_id} dv={dv} du={du}")

    def test_t7_refined_windows(self):
        windows = exception_windows("T7")
        self.assertIn((6, 4), windows)
        self.assertGreaterEqual(refined_bound("T7", 6, 6, 4), 0)
        for (dv, n1), (low, high) in windows.items():
            if (dv, n1) == (6, 4):
                continue
            for du in range(low, high + 1):
                self.assertLess(refined_bound("T7", du, dv, n1), 0, f"dv={dv} n1={n1} du={du}")

    def test_bound_ranges(self):
        with self.assertRaises(DomainError):
            evaluate_bound("T1", 66, 7)
        with self.assertRaises(DomainError):
            evaluate_bound("T1", 80, 6)
        with self.assertRaises(DomainError):
            evaluate_bound("T7", 10, 5, 4)
        with self.assertRaises(DomainError):
            evaluate_bound("T7", 10, 6, 0)
        with self.assertRaises(DomainError):
            evaluate_bound("T9", 30, 6)
        with self.assertRaises(DomainError):
            exception_windows("T")

    def test_bound_grid(self):
        frame = bound_grid("T5", du_span=10)
        self.assertEqual(len(frame), 30)
        self.assertEqual(list(frame.columns), ["case", "dv", "n1", "du", "bound", "refined"])
        self.assertTrue((frame["refined"] <= frame["bound"]).all())

    def test_bounds_non_increasing_in_du(self):
        for case_id in ("T1", "T2", "T3", "T41", "T42", "T5", "T6", "T7"):
            if case_id == "T7":
                keys = [(dv, n1, dv) for dv in range(5, 9) for n1 in range(1, 5)]
            else:
                keys = [(dv, None, threshold_du(dv)) for dv in RULES[case_id].bound_dvs]
            for dv, n1, start in keys:
                values = [evaluate_bound(case_id, du, dv, n1) for du in range(start, start + 2000)]
                steps = np.diff(values)
                self.assertLessEqual(steps.max(), 1e-12, f"{case_id} dv={dv} n1={n1}")

class TestCaseTransforms(unittest.TestCase):
    def test_formula_agrees_with_recomputation(self):
        for case_id in CASE_IDS:
            for report in agreement_reports(case_id, 100, seed=17):
                self.assertTrue(report.agrees(1e-9), f"{case_id}: {report.case}")
                self.assertTrue(report.within_printed(1e-9), f"{case_id}: {report.case}")

    def test_agreement_table(self):
        table = agreement_table(("T", "T5", "T7"), instances=12, seed=3)
        self.assertEqual(list(table["case"]), ["T", "T5", "T7"])
        self.assertTrue(table["agree"].all())
        self.assertTrue(table["within_printed"].all())

    def test_relationships(self):
        rng = np.random.default_rng(8)
        for relationship in ("a", "b", "c", "d"):
            tree, case = random_instance("T5", relationship, rng)
            self.assertEqual(case.relationship, relationship)
        _, case = random_instance("T3", "d", rng)
        self.assertEqual(case.u, case.root)
        _, case = random_instance("T3", "c", rng)
        self.assertEqual(case.vp, case.u)

    def test_degrees_after(self):
        rng = np.random.default_rng(21)
        for case_id in CASE_IDS:
            tree, case = random_instance(case_id, "a", rng)
            after, _ = apply_case_transform(tree, case)
            self.assertEqual(after.n, tree.n)
            self.assertEqual(after.degrees[case.u], case.du + degree_increase(case), case_id)
            self.assertEqual(after.degrees[case.v], v_degree_after(case), case_id)
            self.assertEqual(after.recompute_degrees(), after.degrees, case_id)

    def test_t_moves_one_arm(self):
        tree, case = random_instance("T", "b", np.random.default_rng(4))
        after, report = apply_T(tree, case)
        self.assertEqual(after.degrees[case.u1], 4)
        self.assertEqual(after.degrees[case.v1], 4)
        expected = -f(case.du, 5) + f(case.du, 4) - f(case.dv, 3) + f(case.dv, 4)
        self.assertAlmostEqual(report.structural_delta, expected, places=12)

    def test_apply_T_rejects_other_cases(self):
        tree, case = random_instance("T6", "a", np.random.default_rng(2))
        with self.assertRaises(DomainError):
            apply_T(tree, case)

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            build_case(star_tree(8), "T", 0, 1)
        tree, case = random_instance("T5", "b", np.random.default_rng(6))
        with self.assertRaises(PreconditionError):
            build_case(tree, "T1", case.u, case.v, root=case.root)
        with self.assertRaises(PreconditionError):
            build_case(tree, "T5", case.u, case.u, root=case.root)
        with self.assertRaises(DomainError):
            build_case(tree, "T9", case.u, case.v, root=case.root)
        with self.assertRaises(DomainError):
            build_case(tree, "T5", case.u, tree.n + 3, root=case.root)

    def test_rebuilt_case_matches(self):
        tree, case = random_instance("T42", "c", np.random.default_rng(9))
        again = build_case(tree, "T42", case.u, case.v, root=case.root, u1=case.u1)
        self.assertEqual(again, case)

    def test_t7_v1_is_b1_child(self):
        rng = np.random.default_rng(13)
        for relationship in ("a", "b", "c", "d"):
            tree, case = random_instance("T7", relationship, rng)
            _, parent = tree.rooted(case.root)
            self.assertEqual(parent[case.v1], case.v)
            self.assertEqual(tree.degrees[case.v1], 2)
            leaf = next(w for w in tree.adjacency[case.v1] if w != case.v)
            self.assertEqual(tree.degrees[leaf], 1)

class TestSwitching(unittest.TestCase):
    def setUp(self):
        self.tree = Tree.from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (1, 6), (3, 7)])

    def test_switch_delta(self):
        after, report = switch(self.tree, (1, 2), (4, 3))
        self.assertEqual(after.degrees, self.tree.degrees)
        self.assertTrue(after.has_edge(1, 3) and after.has_edge(4, 2))
        expected = -f(4, 2) - f(1, 3) + f(4, 3) + f(1, 2)
        self.assertAlmostEqual(report.formula_delta, expected, places=12)
        self.assertAlmostEqual(report.structural_delta, abc_index(after) - abc_index(self.tree), places=12)
        self.assertTrue(report.agrees())
        self.assertLess(report.structural_delta, 0)
        self.assertEqual(switch_expected_sign(self.tree, (1, 2), (4, 3)), -1)

    def test_switch_disconnects(self):
        with self.assertRaises(DomainError):
            switch(self.tree, (1, 2), (3, 4))

    def test_switch_requires_edges(self):
        with self.assertRaises(DomainError):
            switch(self.tree, (0, 2), (3, 4))
        with self.assertRaises(DomainError):
            switch(self.tree, (1, 2), (2, 3))

    def test_sign_not_covered(self):
        self.assertIsNone(switch_expected_sign(self.tree, (4, 3), (1, 2)))
        self.assertTrue(math.isfinite(switch(self.tree, (4, 3), (1, 2))[1].formula_delta))

    def test_sign_on_random_trees(self):
        rng = np.random.default_rng(29)
        covered = 0
        for _ in range(200):
            n = int(rng.integers(4, 31))
            tree = Tree.from_parents([int(rng.integers(0, i)) for i in range(1, n)])
            edges = tree.edges()
            for _ in range(10):
                first, second = rng.choice(len(edges), size=2, replace=False)
                uv, xy = edges[first], edges[second]
                if rng.random() < 0.5:
                    uv = uv[::-1]
                if rng.random() < 0.5:
                    xy = xy[::-1]
                try:
                    _, report = switch(tree, uv, xy)
                except DomainError:
                    continue
                self.assertTrue(report.agrees(1e-9))
                sign = switch_expected_sign(tree, uv, xy)
                if sign is None:
                    continue
                covered += 1
                if sign == 0:
                    self.assertAlmostEqual(report.structural_delta, 0.0, delta=1e-12)
                else:
                    self.assertLessEqual(report.structural_delta, 1e-12, f"{uv} {xy}")
        self.assertGreater(covered, 50)

if __name__ == "__main__":
    unittest.main()
