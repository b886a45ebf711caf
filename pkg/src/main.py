from mcp.server.fastmcp import FastMCP
from typing import Optional
import sys
import os

# Add project root to path so 'from src...' imports work
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from src.config import Config
from src.services.analytic import threshold_rows
from src.services.branches import classify_branches, decompose_paths, resolve_root
from src.services.budget_manager import BudgetManager, BudgetConfig, BudgetExceededError
from src.services.core import DegreeSequence, abc_index, format_tree, read_tree
from src.services.data_processor import DataProcessor
from src.services.greedy import build_greedy_tree
from src.services.transforms import apply_case_transform, build_case, evaluate_bound, refined_bound
from src.services.verify import check_claim, find_minimal_abc_trees, resolve_claims

# Initialize Services
config = Config()
budget_config = BudgetConfig(
    n_max=config.N_MAX,
    hard_cap=config.N_HARD_CAP,
    thm1_n_max=config.THM1_N_MAX,
    trees_per_second=config.TREES_PER_SECOND,
)

budget_manager = BudgetManager(budget_config)
data_processor = DataProcessor(export_dir=config.EXPORT_DIR)

# Initialize MCP Server
mcp = FastMCP("Minimal ABC Trees")

@mcp.tool()
def compute_abc(tree: str, fmt: str = "edges") -> str:
    """
    ABC index of a tree given as text ('edges', 'parents' or 'graph6').
    """
    try:
        t = read_tree(tree, fmt)
        return f"n = {t.n}, ABC = {abc_index(t):.10f}"
    except Exception as e:
        return f"Error computing ABC index: {str(e)}"

@mcp.tool()
def greedy_tree(degrees: str) -> str:
    """
    Greedy tree of a degree sequence such as '4,2,2,1,1,1,1', as an edge list.
    """
    try:
        layout = build_greedy_tree(DegreeSequence.parse(degrees))
        return format_tree(layout.tree, "edges") + f"ABC = {abc_index(layout.tree):.10f}"
    except Exception as e:
        return f"Error building greedy tree: {str(e)}"

@mcp.tool()
def analyze_tree(tree: str, fmt: str = "edges", root: str = "auto") -> str:
    """
    Branch profile (B_k, B_k*, terminal vertices) and path decomposition as JSON.
    """
    try:
        t = read_tree(tree, fmt)
        r = resolve_root(t, root)
        return data_processor.dumps({
            "root": r,
            "branches": classify_branches(t, r).model_dump(mode="json"),
            "paths": decompose_paths(t).model_dump(mode="json"),
        })
    except Exception as e:
        return f"Error analyzing tree: {str(e)}"

@mcp.tool()
def apply_transformation(tree: str, case_id: str, u: int, v: int, fmt: str = "edges") -> str:
    """
    Apply T or T1..T7 at (u, v) and compare the structural and closed-form ABC changes.
    """
    try:
        t = read_tree(tree, fmt)
        case = build_case(t, case_id, u, v)
        after, report = apply_case_transform(t, case)
        return (
            f"Structural delta: {report.structural_delta:.12f}\n"
            f"Formula delta: {report.formula_delta:.12f}\n"
            f"Printed delta: {report.printed_delta:.12f}\n"
            f"Relationship: {case.relationship}\n"
            f"Result:\n{format_tree(after, 'edges')}"
        )
    except Exception as e:
        return f"Error applying {case_id}: {str(e)}"

@mcp.tool()
def case_bound(case_id: str, du: int, dv: int, n1: Optional[int] = None) -> str:
    """
    Case majorant and refined bound of a transformation at (d(u), d(v)).
    """
    try:
        return (
            f"Bound: {evaluate_bound(case_id, du, dv, n1):.10f}\n"
            f"Refined: {refined_bound(case_id, du, dv, n1):.10f}"
        )
    except Exception as e:
        return f"Error evaluating bound: {str(e)}"

@mcp.tool()
def thresholds() -> str:
    """
    Smallest d(u) where moving an arm from a B4 to a B2 branch stops lowering ABC.
    """
    rows = threshold_rows()
    return "\n".join(f"d(v) = {r['dv']}: {r['du'] if r['du'] is not None else 'none'}" for r in rows)

@mcp.tool()
def find_minimal_trees(n: int, claims: str = "all") -> str:
    """
    Exhaustive minimal-ABC search of order n, followed by the structural claim checks.
    """
    try:
        record = find_minimal_abc_trees(n, workers=1, tolerance=config.TOLERANCE, budget=budget_manager)
        lines = [f"n = {n}: min ABC = {record.min_abc:.10f}, {len(record.minimizer_codes)} minimizer(s)"]
        lines.extend(f"  code {code}" for code in record.minimizer_codes)
        for claim_id in resolve_claims(claims):
            outcome = check_claim(claim_id, record)
            line = f"{claim_id}: {outcome.status}"
            if outcome.condition:
                line += f" ({outcome.condition})"
            lines.append(line)
        return "\n".join(lines)
    except BudgetExceededError as e:
        return f"SEARCH DENIED: {str(e)}"
    except Exception as e:
        return f"Error searching order {n}: {str(e)}"

@mcp.tool()
def get_search_budget() -> str:
    """
    Check searches run and the configured order limits for this session.
    """
    status = budget_manager.get_status()
    return (
        f"Search Budget:\n"
        f"- Searches: {status['searches']} ({status['trees_checked']} trees, {status['seconds_used']:.1f} s)\n"
        f"- Max order: {status['limits']['n_max']} (hard cap {status['limits']['hard_cap']})\n"
        f"- Greedy check max order: {status['limits']['thm1_n_max']}"
    )

def main():
    mcp.run()

if __name__ == "__main__":
    main()
