import unittest
import math
import tempfile
import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

from src.services.budget_manager import BudgetConfig, BudgetExceededError, BudgetManager
from src.services.cache import cache_manager
from src.services.core import DomainError, abc_index, edge_contribution, path_tree
from src.services.data_processor import DataProcessor
from src.services.enumeration import FREE_TREE_COUNTS, canonical_code
from src.services.verify import (
    CLAIM_IDS,
    MinimizerRecord,
    UnknownClaimError,
    check_claim,
    degree2_tie_moves,
    evaluate_claim,
    find_minimal_abc_trees,
    negative_control,
    resolve_claims,
    run_verification,
    thm7_boundary_control,
    verify_lemma2_obs1,
    verify_thm1,
)

class TestMinimizerSearch(unittest.TestCase):
    def setUp(self):
        cache_manager.clear()

    def test_small_orders(self):
        record = find_minimal_abc_trees(5)
        self.assertAlmostEqual(record.min_abc, 2 * math.sqrt(2), places=12)
        self.assertEqual(record.minimizer_codes, [canonical_code(path_tree(5)).hex()])
        self.assertEqual(record.trees_checked, FREE_TREE_COUNTS[5])
        self.assertEqual(find_minimal_abc_trees(2).min_abc, 0.0)
        with self.assertRaises(DomainError):
            find_minimal_abc_trees(1)

    def test_minimizers_attain_minimum(self):
        record = find_minimal_abc_trees(10)
        self.assertEqual(record.trees_checked, 106)
        for tree in record.trees():
            self.assertAlmostEqual(abc_index(tree), record.min_abc, places=9)

    def test_workers_do_not_change_result(self):
        serial = find_minimal_abc_trees(11)
        cache_manager.clear()
        parallel = find_minimal_abc_trees(11, workers=2, jobs_per_worker=3)
        self.assertEqual(serial.minimizer_codes, parallel.minimizer_codes)
        self.assertAlmostEqual(serial.min_abc, parallel.min_abc, places=12)
        self.assertEqual(parallel.trees_checked, FREE_TREE_COUNTS[11])

    def test_checkpoints_resume(self):
        with tempfile.TemporaryDirectory() as tmp:
            first = find_minimal_abc_trees(10, workers=2, jobs_per_worker=2, checkpoint_dir=tmp)
            names = DataProcessor(tmp).list_checkpoints(tmp)
            self.assertEqual(names, [f"n10_job{j:03d}of004" for j in range(4)])
            cache_manager.clear()
            again = find_minimal_abc_trees(10, workers=2, jobs_per_worker=2, checkpoint_dir=tmp)
            self.assertEqual(first.minimizer_codes, again.minimizer_codes)
            self.assertEqual(again.trees_checked, 106)

    def test_budget_refuses_large_orders(self):
        budget = BudgetManager(BudgetConfig(n_max=9))
        with self.assertRaises(BudgetExceededError):
            find_minimal_abc_trees(10, budget=budget)
        find_minimal_abc_trees(8, budget=budget)
        self.assertEqual(budget.get_status()["searches"], 1)

class TestClaims(unittest.TestCase):
    def test_negative_controls_fail(self):
        for claim_id in CLAIM_IDS:
            self.assertIsNotNone(evaluate_claim(claim_id, negative_control(claim_id)), claim_id)

    def test_thm7_boundary_passes(self):
        tree = thm7_boundary_control()
        self.assertEqual(tree.degrees[0], 7)
        self.assertIsNone(evaluate_claim("THM7", tree))

    def test_unknown_claim(self):
        with self.assertRaises(UnknownClaimError):
            resolve_claims("THM2,THM99")
        with self.assertRaises(UnknownClaimError):
            negative_control("THM1")
        with self.assertRaises(UnknownClaimError):
            evaluate_claim("nope", path_tree(4))

    def test_resolve_claims(self):
        self.assertEqual(resolve_claims("all"), list(CLAIM_IDS))
        self.assertEqual(resolve_claims(" THM2 , LEM3a "), ["THM2", "LEM3a"])

    def test_not_applicable_below_ten(self):
        record = find_minimal_abc_trees(9)
        self.assertEqual(check_claim("THM3", record).status, "not-applicable")
        self.assertEqual(verify_lemma2_obs1(record).status, "not-applicable")

    def test_thm8_range(self):
        record = MinimizerRecord(n=18, min_abc=0.0)
        self.assertEqual(check_claim("THM8", record).status, "not-applicable")

    def test_failure_carries_witness(self):
        tree = negative_control("THM6")
        code = canonical_code(tree)
        record = MinimizerRecord(n=tree.n, min_abc=abc_index(tree), minimizer_codes=[code.hex()],
                                 minimizer_levels=[list(code.levels)])
        outcome = check_claim("THM6", record)
        self.assertEqual(outcome.status, "fail")
        self.assertTrue(outcome.witness.startswith(f"{tree.n}\n"))
        self.assertIn("B4", outcome.condition)

class TestTiedMinimizers(unittest.TestCase):
    def test_moves_keep_index_and_degrees(self):
        path = path_tree(6)
        variants = list(degree2_tie_moves(path))
        self.assertTrue(variants)
        for variant in variants:
            self.assertEqual(canonical_code(variant), canonical_code(path))
            self.assertAlmostEqual(abc_index(variant), abc_index(path), places=12)

    def test_no_moves_without_equal_contributions(self):
        tree = negative_control("LEM2")
        # the only degree-2 vertices sit between degrees 3 and 5, and no edge has f(3, 5)
        self.assertNotIn(edge_contribution(3, 5), [edge_contribution(tree.degrees[u], tree.degrees[v])
                                                  for u, v in tree.edges()])
        self.assertEqual(list(degree2_tie_moves(tree)), [])
        code = canonical_code(tree)
        record = MinimizerRecord(n=tree.n, min_abc=abc_index(tree), minimizer_codes=[code.hex()],
                                 minimizer_levels=[list(code.levels)])
        outcome = check_claim("LEM2", record)
        self.assertEqual(outcome.status, "fail")
        self.assertIsNone(outcome.tie_variant)

    def test_order_16_passes_through_tied_minimizer(self):
        cache_manager.clear()
        record = find_minimal_abc_trees(16)
        failing = [tree for tree in record.trees() if evaluate_claim("LEM2", tree) is not None]
        self.assertTrue(failing)
        self.assertLess(len(failing), len(record.minimizer_codes))

        outcome = check_claim("LEM2", record)
        self.assertEqual(outcome.status, "pass")
        self.assertIn(outcome.tie_variant, record.minimizer_codes)
        self.assertIn("degree-2", outcome.condition)
        self.assertIsNone(outcome.witness)
        self.assertEqual(verify_lemma2_obs1(record).status, "pass")

    def test_other_claims_stay_strict(self):
        tree = negative_control("THM3")
        code = canonical_code(tree)
        record = MinimizerRecord(n=tree.n, min_abc=abc_index(tree), minimizer_codes=[code.hex()],
                                 minimizer_levels=[list(code.levels)])
        self.assertEqual(check_claim("THM3", record).status, "fail")

class TestVerification(unittest.TestCase):
    def test_claim_suite_small_orders(self):
        cache_manager.clear()
        report, records = run_verification(10, 18)
        self.assertEqual([r.n for r in records], list(range(10, 19)))
        for claim in report.claims:
            self.assertTrue(claim.passed, f"{claim.id}: {[o.condition for o in claim.outcomes]}")
        thm8 = next(c for c in report.claims if c.id == "THM8")
        self.assertTrue(all(o.status == "not-applicable" for o in thm8.outcomes))
        self.assertIsNotNone(thm8.note)
        for record in records:
            self.assertEqual(verify_lemma2_obs1(record).status, "pass")

    def test_bad_range(self):
        with self.assertRaises(DomainError):
            run_verification(12, 10)

    def test_greedy_optimality(self):
        report = verify_thm1(9)
        self.assertEqual([o.n for o in report.outcomes], list(range(2, 10)))
        self.assertTrue(report.passed)

    def test_greedy_check_budget(self):
        with self.assertRaises(BudgetExceededError):
            verify_thm1(13)

if __name__ == "__main__":
    unittest.main()
