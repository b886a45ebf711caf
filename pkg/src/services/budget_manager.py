from dataclasses import dataclass
import logging

from .enumeration import FREE_TREE_COUNTS

logger = logging.getLogger(__name__)

class BudgetExceededError(Exception):
    """Raised when a search would exceed the configured budget."""
    pass

@dataclass
class BudgetConfig:
    n_max: int = 24
    hard_cap: int = 26
    thm1_n_max: int = 12
    trees_per_second: float = 40000.0

class BudgetManager:
    def __init__(self, config: BudgetConfig):
        self.config = config
        self.searches = 0
        self.trees_checked = 0
        self.seconds_used = 0.0

    def estimate(self, n: int) -> tuple:
        """(number of free trees of order n, estimated seconds to enumerate them)."""
        count = FREE_TREE_COUNTS[n] if n < len(FREE_TREE_COUNTS) else None
        seconds = count / self.config.trees_per_second if count is not None else float("inf")
        return count, seconds

    def check_can_search(self, n: int) -> None:
        """
        Check that an exhaustive search of order n fits the budget.
        Raises BudgetExceededError naming the tree count and run-time estimate.
        """
        limit = min(self.config.n_max, self.config.hard_cap)
        if n > limit:
            count, seconds = self.estimate(n)
            count_text = f"{count:,} trees" if count is not None else "an unknown number of trees"
            raise BudgetExceededError(
                f"Search limit reached: n = {n} exceeds the maximum {limit} "
                f"(hard cap {self.config.hard_cap}). Order {n} has {count_text}, "
                f"about {seconds:,.0f} s at {self.config.trees_per_second:,.0f} trees/s."
            )

    def check_can_verify_thm1(self, n_max: int) -> None:
        """
        Greedy-optimality checks enumerate every realization of every degree
        sequence; refuse orders above the configured limit.
        """
        if n_max > self.config.thm1_n_max:
            count, seconds = self.estimate(n_max)
            raise BudgetExceededError(
                f"Greedy check limit reached: n = {n_max} exceeds {self.config.thm1_n_max}. "
                f"Order {n_max} has {count:,} trees (~{seconds:,.0f} s to enumerate)."
            )

    def track_search(self, n: int, trees: int, seconds: float) -> None:
        """Record a completed search."""
        self.searches += 1
        self.trees_checked += trees
        self.seconds_used += seconds
        logger.info(f"Budget update: n={n} searched, {trees} trees in {seconds:.2f} s; "
                    f"{self.trees_checked} trees over {self.searches} searches so far.")

    def get_status(self) -> dict:
        return {
            "searches": self.searches,
            "trees_checked": self.trees_checked,
            "seconds_used": self.seconds_used,
            "limits": {
                "n_max": self.config.n_max,
                "hard_cap": self.config.hard_cap,
                "thm1_n_max": self.config.thm1_n_max,
            },
        }
