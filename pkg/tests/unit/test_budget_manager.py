import unittest
import sys
import os

# Ensure src is in path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

from src.services.budget_manager import BudgetManager, BudgetConfig, BudgetExceededError

class TestBudgetManager(unittest.TestCase):
    def setUp(self):
        self.config = BudgetConfig(
            n_max=12,
            hard_cap=14,
            thm1_n_max=9,
            trees_per_second=1000.0
        )
        self.budget = BudgetManager(self.config)

    def test_initial_state(self):
        status = self.budget.get_status()
        self.assertEqual(status["searches"], 0)
        self.assertEqual(status["trees_checked"], 0)
        self.assertEqual(status["limits"]["n_max"], 12)

    def test_search_tracking(self):
        self.budget.check_can_search(10)
        self.budget.track_search(10, trees=106, seconds=0.5)
        self.budget.track_search(11, trees=235, seconds=0.5)

        status = self.budget.get_status()
        self.assertEqual(status["searches"], 2)
        self.assertEqual(status["trees_checked"], 341)
        self.assertAlmostEqual(status["seconds_used"], 1.0)

    def test_search_limit_enforcement(self):
        with self.assertRaises(BudgetExceededError) as cm:
            self.budget.check_can_search(13)

        self.assertIn("Search limit reached", str(cm.exception))
        # tree count of order 13 in the message
        self.assertIn("1,301", str(cm.exception))

    def test_hard_cap_wins_over_n_max(self):
        budget = BudgetManager(BudgetConfig(n_max=40, hard_cap=26))
        budget.check_can_search(26)
        with self.assertRaises(BudgetExceededError):
            budget.check_can_search(27)

    def test_thm1_limit_enforcement(self):
        self.budget.check_can_verify_thm1(9)
        with self.assertRaises(BudgetExceededError) as cm:
            self.budget.check_can_verify_thm1(10)

        self.assertIn("Greedy check limit reached", str(cm.exception))

    def test_estimate(self):
        count, seconds = self.budget.estimate(10)
        self.assertEqual(count, 106)
        self.assertAlmostEqual(seconds, 0.106)

if __name__ == "__main__":
    unittest.main()
