"""
Exhaustive minimal-ABC search and the structural claim checks run on its
minimizers.

Claims:
  THM2   no internal path of length >= 2
  THM3   every pendant path has length 2 or 3
  THM4   at most one pendant path of length 3
  THM5   no B_k branch with k >= 5
  THM6   at most four B4 branches
  THM7   at most four B1 branches, three when the whole tree is a terminal branch
  THM8   n > 18: no B2 branch together with a pendant path of length 3
         (orders 161 and 168 are the exceptions, far outside the searchable range)
  THM9   no B4 and B2 branches in the same tree
  THM10  no B4 and B1 branches in the same tree
  COR1   vertices of degree > 2 induce a tree
  LEM2   every leaf-to-leaf path has a non-decreasing interleaved degree chain
  LEM3a  no common parent of a B1 and a B4 branch
  LEM3b  no common parent of a B2 and a B4 branch
  LEM4   no common parent of a B3 and a B1* branch
  OBS1   BFS order visits vertices of degree >= 3 in non-increasing degree
Claims that depend on the rooting pass when any maximum-degree root satisfies them.
LEM2 passes for a minimizer when a tied co-minimizer, reached by moving degree-2
vertices, satisfies it; the outcome records that co-minimizer.
"""
import time
import logging
from typing import Callable, Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import networkx as nx
from joblib import Parallel, delayed
from pydantic import BaseModel, Field

from .branches import (
    BranchProfile,
    bfs_degree_order_violations,
    classify_branches,
    decompose_paths,
    path_degree_ordering_violations,
)
from .budget_manager import BudgetConfig, BudgetManager
from .cache import cache_manager
from .core import DomainError, Tree, TreeBuilder, abc_index, edge_contribution, format_tree, star_tree
from .data_processor import DataProcessor
from .enumeration import (
    Partition,
    abc_table_for,
    canonical_code,
    enumerate_trees_with_degree_sequence,
    iter_level_sequences,
    iter_tree_degree_sequences,
    level_sequence_abc,
)
from .greedy import build_greedy_tree

logger = logging.getLogger(__name__)

CLAIM_IDS = (
    "THM2", "THM3", "THM4", "THM5", "THM6", "THM7", "THM8", "THM9", "THM10",
    "COR1", "LEM2", "LEM3a", "LEM3b", "LEM4", "OBS1",
)
# structure claims are stated for order >= 10
MIN_CLAIM_ORDER = 10
THM8_MIN_ORDER = 19

Status = Literal["pass", "fail", "not-applicable"]


class UnknownClaimError(KeyError):
    """Raised when a claim id is not in the catalogue."""
    pass


class MinimizerRecord(BaseModel):
    n: int
    min_abc: float
    tolerance: float = 1e-9
    minimizer_codes: List[str] = Field(default_factory=list)
    # canonical level sequence of each minimizer, aligned with minimizer_codes
    minimizer_levels: List[List[int]] = Field(default_factory=list)
    trees_checked: int = 0

    def trees(self) -> List[Tree]:
        return [Tree.from_level_sequence(levels) for levels in self.minimizer_levels]


class ClaimOutcome(BaseModel):
    id: str
    n: int
    status: Status
    witness: Optional[str] = None
    condition: Optional[str] = None
    # canonical code of the tied co-minimizer that satisfies the claim in place of a failing one
    tie_variant: Optional[str] = None


class ClaimReport(BaseModel):
    id: str
    n_min: int
    n_max: int
    outcomes: List[ClaimOutcome] = Field(default_factory=list)
    note: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(o.status != "fail" for o in self.outcomes)


class OrderReport(BaseModel):
    n: int
    min_abc: float
    minimizer_codes: List[str]
    claims: List[ClaimOutcome] = Field(default_factory=list)


class VerificationReport(BaseModel):
    orders: List[OrderReport] = Field(default_factory=list)
    claims: List[ClaimReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)


# -- search ---------------------------------------------------------------

def _search_partition(n: int, job: int, jobs: int, tolerance: float) -> Dict:
    """
    Local best of one partition: its minimum and every level sequence within
    tolerance of it. Module-level so worker processes can import it.
    """
    table = abc_table_for(n)
    partition = Partition(job, jobs) if jobs > 1 else None
    best = float("inf")
    kept: List[Tuple[float, List[int]]] = []
    count = 0
    for levels in iter_level_sequences(n, partition):
        count += 1
        value = level_sequence_abc(levels, table)
        if value > best + tolerance:
            continue
        if value < best:
            best = value
            kept = [(v, lv) for v, lv in kept if v <= best + tolerance]
        kept.append((value, list(levels)))
    return {"best": best if count else None, "kept": kept, "count": count}


def _merge(parts: Iterable[Dict], tolerance: float) -> Tuple[float, List[List[int]], int]:
    """Order-independent merge of partition results."""
    parts = list(parts)
    total = sum(p["count"] for p in parts)
    bests = [p["best"] for p in parts if p["best"] is not None]
    best = min(bests)
    levels = [lv for p in parts for v, lv in p["kept"] if v <= best + tolerance]
    return best, levels, total


def find_minimal_abc_trees(n: int, workers: int = 1, tolerance: float = 1e-9,
                           checkpoint_dir: Optional[str] = None,
                           budget: Optional[BudgetManager] = None,
                           jobs_per_worker: int = 4) -> MinimizerRecord:
    """
    Every tree of order n whose ABC index is within tolerance of the minimum.
    With workers > 1 the enumeration is split into workers * jobs_per_worker
    partitions; each finished partition is checkpointed when checkpoint_dir is set.
    """
    if n < 2:
        raise DomainError(f"Minimizer search needs n >= 2, got {n}.")
    budget = budget or BudgetManager(BudgetConfig())
    budget.check_can_search(n)

    key = (n, tolerance)
    cached = cache_manager.get("record", key)
    if cached is not None:
        return cached

    started = time.monotonic()
    jobs = max(1, workers * jobs_per_worker) if workers > 1 else 1
    processor = DataProcessor(checkpoint_dir) if checkpoint_dir else None

    parts: List[Optional[Dict]] = [None] * jobs
    pending = []
    for job in range(jobs):
        name = f"n{n:02d}_{Partition(job, jobs).name}"
        saved = processor.load_checkpoint(checkpoint_dir, name) if processor else None
        if saved is not None and saved.get("tolerance") == tolerance:
            parts[job] = saved
        else:
            pending.append((job, name))

    def finish(job: int, name: str, result: Dict) -> None:
        parts[job] = result
        if processor:
            processor.save_checkpoint(checkpoint_dir, name, dict(result, tolerance=tolerance))
        logger.info(f"n={n}: partition {job + 1}/{jobs} done ({result['count']} trees)")

    if workers > 1 and len(pending) > 1:
        results = Parallel(n_jobs=workers, backend="loky")(
            delayed(_search_partition)(n, job, jobs, tolerance) for job, _ in pending)
        for (job, name), result in zip(pending, results):
            finish(job, name, result)
    else:
        for job, name in pending:
            finish(job, name, _search_partition(n, job, jobs, tolerance))

    best, levels, total = _merge(parts, tolerance)
    codes = {}
    for lv in levels:
        code = canonical_code(Tree.from_level_sequence(lv))
        codes.setdefault(code, code)
    ordered = sorted(codes)
    record = MinimizerRecord(
        n=n,
        min_abc=best,
        tolerance=tolerance,
        minimizer_codes=[c.hex() for c in ordered],
        minimizer_levels=[list(c.levels) for c in ordered],
        trees_checked=total,
    )
    budget.track_search(n, total, time.monotonic() - started)
    cache_manager.set("record", key, record)
    return record


# -- claims ---------------------------------------------------------------------

def _profiles(tree: Tree) -> List[BranchProfile]:
    return [classify_branches(tree, root) for root in tree.max_degree_vertices()]


def _first_failure(tree: Tree, check: Callable[[BranchProfile], Optional[str]]) -> Optional[str]:
    """None when some maximum-degree rooting passes, else the condition of the first root."""
    failures = []
    for profile in _profiles(tree):
        condition = check(profile)
        if condition is None:
            return None
        failures.append(f"root {profile.root}: {condition}")
    return failures[0] if failures else None


def _common_parent(profile: BranchProfile, first: Tuple[int, bool], second: Tuple[int, bool]) -> Optional[str]:
    parents = set(profile.parent_of[c] for c in profile.parent_of)
    for p in sorted(parents):
        kinds = profile.children_kinds(p)
        if first in kinds and second in kinds:
            return f"vertex {p} is the parent of both {_kind_name(first)} and {_kind_name(second)} branches"
    return None


def _kind_name(kind: Tuple[int, bool]) -> str:
    return f"B{kind[0]}{'*' if kind[1] else ''}"


def _thm2(tree: Tree) -> Optional[str]:
    for path in decompose_paths(tree).internal_paths:
        if path.length >= 2:
            return f"internal path {path.vertices} has length {path.length}"
    return None


def _thm3(tree: Tree) -> Optional[str]:
    decomposition = decompose_paths(tree)
    if decomposition.degenerate:
        return "tree is a path"
    for path in decomposition.pendant_paths:
        if path.length not in (2, 3):
            return f"pendant path {path.vertices} has length {path.length}"
    return None


def _thm4(tree: Tree) -> Optional[str]:
    long_paths = [p for p in decompose_paths(tree).pendant_paths if p.length == 3]
    if len(long_paths) > 1:
        return f"{len(long_paths)} pendant paths of length 3 start at {[p.start for p in long_paths]}"
    return None


def _thm7(profile: BranchProfile) -> Optional[str]:
    count = profile.count(1)
    root_terminal = any(v == profile.root for v, _ in profile.terminal_vertices)
    limit = 3 if root_terminal else 4
    if count > limit:
        qualifier = " with the root a terminal vertex" if root_terminal else ""
        return f"{count} B1 branches{qualifier}, at most {limit} allowed"
    return None


def _thm8(tree: Tree) -> Optional[str]:
    if not any(p.length == 3 for p in decompose_paths(tree).pendant_paths):
        return None
    return _first_failure(
        tree,
        lambda pr: f"B2 branches at {pr.b_centers[2]} with a pendant path of length 3" if pr.count(2) else None,
    )


def _cor1(tree: Tree) -> Optional[str]:
    big = [v for v in range(tree.n) if tree.degrees[v] > 2]
    if len(big) <= 1:
        return None
    induced = tree.to_networkx().subgraph(big)
    if not nx.is_connected(induced):
        parts = [sorted(c) for c in nx.connected_components(induced)]
        return f"vertices of degree > 2 split into {len(parts)} components {sorted(parts)}"
    return None


def _lem2(tree: Tree) -> Optional[str]:
    witnesses = path_degree_ordering_violations(tree)
    if witnesses:
        w = witnesses[0]
        return f"path {w.path} between leaves {list(w.leaves)} has degree chain {w.chain}"
    return None


def _obs1(profile_root: int, tree: Tree) -> Optional[str]:
    pairs = bfs_degree_order_violations(tree, profile_root)
    if pairs:
        a, b = pairs[0]
        return f"vertex {a} (degree {tree.degrees[a]}) precedes {b} (degree {tree.degrees[b]}) in BFS order"
    return None


def _rooted(check: Callable[[BranchProfile], Optional[str]]) -> Callable[[Tree], Optional[str]]:
    return lambda tree: _first_failure(tree, check)


CLAIMS: Dict[str, Callable[[Tree], Optional[str]]] = {
    "THM2": _thm2,
    "THM3": _thm3,
    "THM4": _thm4,
    "THM5": _rooted(lambda pr: next(
        (f"B{k} branch at {pr.b_centers[k]}" for k in sorted(pr.b_centers) if k >= 5), None)),
    "THM6": _rooted(lambda pr: f"{pr.count(4)} B4 branches" if pr.count(4) > 4 else None),
    "THM7": _rooted(_thm7),
    "THM8": _thm8,
    "THM9": _rooted(lambda pr: (
        f"B4 branches at {pr.b_centers[4]} and B2 branches at {pr.b_centers[2]}"
        if pr.count(4) and pr.count(2) else None)),
    "THM10": _rooted(lambda pr: (
        f"B4 branches at {pr.b_centers[4]} and B1 branches at {pr.b_centers[1]}"
        if pr.count(4) and pr.count(1) else None)),
    "COR1": _cor1,
    "LEM2": _lem2,
    "LEM3a": _rooted(lambda pr: _common_parent(pr, (1, False), (4, False))),
    "LEM3b": _rooted(lambda pr: _common_parent(pr, (2, False), (4, False))),
    "LEM4": _rooted(lambda pr: _common_parent(pr, (3, False), (1, True))),
    "OBS1": lambda tree: _first_failure_roots(tree, _obs1),
}


def _first_failure_roots(tree: Tree, check: Callable[[int, Tree], Optional[str]]) -> Optional[str]:
    failures = []
    for root in tree.max_degree_vertices():
        condition = check(root, tree)
        if condition is None:
            return None
        failures.append(f"root {root}: {condition}")
    return failures[0] if failures else None


def resolve_claims(claims) -> List[str]:
    """'all', a comma-separated string or a list of ids."""
    if claims is None or claims == "all":
        return list(CLAIM_IDS)
    if isinstance(claims, str):
        claims = [c.strip() for c in claims.split(",") if c.strip()]
    for claim_id in claims:
        if claim_id not in CLAIMS:
            raise UnknownClaimError(f"Unknown claim '{claim_id}'. Known: {', '.join(CLAIM_IDS)}.")
    return list(claims)


def evaluate_claim(claim_id: str, tree: Tree) -> Optional[str]:
    """None when the tree satisfies the claim, else the violated condition."""
    if claim_id not in CLAIMS:
        raise UnknownClaimError(f"Unknown claim '{claim_id}'. Known: {', '.join(CLAIM_IDS)}.")
    return CLAIMS[claim_id](tree)


def _witness(tree: Tree) -> str:
    return format_tree(tree, "edges")


# -- ties among co-minimizers -----------------------------------------------
# Every edge at a degree-2 vertex contributes f(x, 2) = 1/sqrt(2), so moving a
# degree-2 vertex from one edge to another changes the index by
# f(a, b) - f(x, y) only. When that difference vanishes the two trees are tied
# co-minimizers, and a claim about how degrees are ordered may be judged on
# whichever member of the tied class satisfies it.
TIE_TOLERANT_CLAIMS = ("LEM2",)
MAX_TIE_CLASS = 256


def degree2_tie_moves(tree: Tree, tolerance: float = 1e-9) -> Iterable[Tree]:
    """Trees obtained by moving one degree-2 vertex to another edge without changing the index."""
    d = tree.degrees
    edges = tree.edges()
    for w in range(tree.n):
        if d[w] != 2:
            continue
        a, b = tree.adjacency[w]
        joined = edge_contribution(d[a], d[b])
        for x, y in edges:
            if w in (x, y) or abs(joined - edge_contribution(d[x], d[y])) > tolerance:
                continue
            builder = TreeBuilder.from_tree(tree)
            builder.remove_edge(a, w)
            builder.remove_edge(w, b)
            builder.add_edge(a, b)
            builder.remove_edge(x, y)
            builder.add_edge(x, w)
            builder.add_edge(w, y)
            yield builder.freeze()


def find_tie_variant(tree: Tree, check: Callable[[Tree], Optional[str]],
                     tolerance: float = 1e-9) -> Optional[Tree]:
    """
    Breadth-first search of the tree's tie class for a member that passes check.
    Returns None when no member does, or when the class outgrows MAX_TIE_CLASS.
    """
    seen = {canonical_code(tree)}
    frontier = [tree]
    while frontier:
        nxt = []
        for current in frontier:
            for variant in degree2_tie_moves(current, tolerance):
                code = canonical_code(variant)
                if code in seen:
                    continue
                if check(variant) is None:
                    return variant
                seen.add(code)
                if len(seen) >= MAX_TIE_CLASS:
                    logger.warning(f"tie class of order {tree.n} exceeds {MAX_TIE_CLASS} trees; search stopped")
                    return None
                nxt.append(variant)
        frontier = nxt
    return None


def _check_minimizers(claim_id: str, record: MinimizerRecord,
                      check: Callable[[Tree], Optional[str]], tie_tolerant: bool) -> ClaimOutcome:
    tie_variant = None
    for tree in record.trees():
        condition = check(tree)
        if condition is None:
            continue
        variant = find_tie_variant(tree, check, record.tolerance) if tie_tolerant else None
        if variant is not None:
            tie_variant = canonical_code(variant).hex()
            logger.info(f"{claim_id} at n={record.n}: {condition}; satisfied by tied co-minimizer {tie_variant}")
            continue
        logger.warning(f"{claim_id} fails at n={record.n}: {condition}")
        return ClaimOutcome(id=claim_id, n=record.n, status="fail",
                            witness=_witness(tree), condition=condition)
    if tie_variant is not None:
        return ClaimOutcome(id=claim_id, n=record.n, status="pass", tie_variant=tie_variant,
                            condition="satisfied by a co-minimizer that differs by degree-2 vertex placement")
    return ClaimOutcome(id=claim_id, n=record.n, status="pass")


def check_claim(claim_id: str, record: MinimizerRecord) -> ClaimOutcome:
    if claim_id not in CLAIMS:
        raise UnknownClaimError(f"Unknown claim '{claim_id}'. Known: {', '.join(CLAIM_IDS)}.")
    lowest = THM8_MIN_ORDER if claim_id == "THM8" else MIN_CLAIM_ORDER
    if record.n < lowest:
        return ClaimOutcome(id=claim_id, n=record.n, status="not-applicable")
    return _check_minimizers(claim_id, record, CLAIMS[claim_id], claim_id in TIE_TOLERANT_CLAIMS)


def _lem2_obs1(tree: Tree) -> Optional[str]:
    return _lem2(tree) or _first_failure_roots(tree, _obs1)


def verify_lemma2_obs1(record: MinimizerRecord) -> ClaimOutcome:
    """Both degree orderings together; each minimizer, or a tied co-minimizer, needs one max-degree root where both hold."""
    if record.n < MIN_CLAIM_ORDER:
        return ClaimOutcome(id="LEM2+OBS1", n=record.n, status="not-applicable")
    return _check_minimizers("LEM2+OBS1", record, _lem2_obs1, tie_tolerant=True)


def verify_thm1(n_max: int, budget: Optional[BudgetManager] = None,
                tolerance: float = 1e-9, n_min: int = 2) -> ClaimReport:
    """
    For every tree degree sequence of order n_min..n_max, the greedy tree
    attains the minimum ABC index over all realizations.
    """
    budget = budget or BudgetManager(BudgetConfig())
    budget.check_can_verify_thm1(n_max)
    report = ClaimReport(id="THM1", n_min=n_min, n_max=n_max)
    for n in range(n_min, n_max + 1):
        outcome = ClaimOutcome(id="THM1", n=n, status="pass")
        sequences = 0
        for d in iter_tree_degree_sequences(n):
            sequences += 1
            greedy = abc_index(build_greedy_tree(d).tree)
            best_tree, best = None, float("inf")
            for tree in enumerate_trees_with_degree_sequence(d):
                value = abc_index(tree)
                if value < best:
                    best_tree, best = tree, value
            if greedy > best + tolerance:
                outcome = ClaimOutcome(
                    id="THM1", n=n, status="fail", witness=_witness(best_tree),
                    condition=f"degree sequence {d}: greedy {greedy:.12f} > minimum {best:.12f}",
                )
                logger.warning(f"THM1 fails at n={n}: {outcome.condition}")
                break
        logger.info(f"THM1 n={n}: {sequences} degree sequences, {outcome.status}")
        report.outcomes.append(outcome)
    return report


# -- constructed controls ---------------------------------------------------------

def _attach(builder: TreeBuilder, parent: int, kind: str, count: int = 1) -> None:
    """Hang `count` copies of a leaf, arm, long arm or B_k center below parent."""
    for _ in range(count):
        if kind == "leaf":
            builder.add_child(parent)
        elif kind == "arm":
            builder.add_child(builder.add_child(parent))
        elif kind == "long":
            builder.add_child(builder.add_child(builder.add_child(parent)))
        elif kind.startswith("B"):
            center = builder.add_child(parent)
            _attach(builder, center, "arm", int(kind[1:]))
        else:
            raise DomainError(f"Unknown control part '{kind}'.")


def _rooted_control(parts: Sequence[Tuple[str, int]]) -> Tree:
    builder = TreeBuilder(1)
    for kind, count in parts:
        _attach(builder, 0, kind, count)
    return builder.freeze()


def _caterpillar_control() -> Tree:
    # spine degrees 3, 2, 5, 2, 3
    builder = TreeBuilder(5)
    for a, b in ((0, 1), (1, 2), (2, 3), (3, 4)):
        builder.add_edge(a, b)
    _attach(builder, 0, "leaf", 2)
    _attach(builder, 2, "leaf", 3)
    _attach(builder, 4, "leaf", 2)
    return builder.freeze()


def _bridge_control(length: int) -> Tree:
    """Two degree-3 vertices joined by a path of the given length, two leaves each."""
    builder = TreeBuilder(1)
    previous = 0
    for _ in range(length):
        previous = builder.add_child(previous)
    _attach(builder, 0, "leaf", 2)
    _attach(builder, previous, "leaf", 2)
    return builder.freeze()


def _bfs_control() -> Tree:
    builder = TreeBuilder(1)
    _attach(builder, 0, "leaf", 3)
    first = builder.add_child(0)
    _attach(builder, first, "leaf", 2)
    second = builder.add_child(0)
    _attach(builder, second, "leaf", 1)
    late = builder.add_child(second)
    _attach(builder, late, "leaf", 3)
    return builder.freeze()


NEGATIVE_CONTROLS: Dict[str, Callable[[], Tree]] = {
    "THM2": lambda: _bridge_control(3),
    "THM3": lambda: star_tree(5),
    "THM4": lambda: _rooted_control([("long", 2), ("arm", 1)]),
    "THM5": lambda: _rooted_control([("B5", 1), ("leaf", 6)]),
    "THM6": lambda: _rooted_control([("B4", 5), ("leaf", 1)]),
    "THM7": lambda: _rooted_control([("arm", 5), ("B2", 1)]),
    "THM8": lambda: _rooted_control([("B3", 3), ("B2", 1), ("long", 1)]),
    "THM9": lambda: _rooted_control([("B4", 1), ("B2", 1), ("leaf", 4)]),
    "THM10": lambda: _rooted_control([("B4", 1), ("arm", 1), ("leaf", 4)]),
    "COR1": lambda: _bridge_control(2),
    "LEM2": _caterpillar_control,
    "LEM3a": lambda: _rooted_control([("B4", 1), ("arm", 1), ("leaf", 4)]),
    "LEM3b": lambda: _rooted_control([("B4", 1), ("B2", 1), ("leaf", 4)]),
    "LEM4": lambda: _rooted_control([("B3", 1), ("long", 1), ("leaf", 3)]),
    "OBS1": _bfs_control,
}


def negative_control(claim_id: str) -> Tree:
    """A constructed tree that violates the claim."""
    if claim_id not in NEGATIVE_CONTROLS:
        raise UnknownClaimError(f"Unknown claim '{claim_id}'. Known: {', '.join(CLAIM_IDS)}.")
    return NEGATIVE_CONTROLS[claim_id]()


def thm7_boundary_control() -> Tree:
    """Degree-7 root with six B2 children and a terminal vertex holding four B1 and one B2."""
    builder = TreeBuilder(1)
    _attach(builder, 0, "B2", 6)
    terminal = builder.add_child(0)
    _attach(builder, terminal, "arm", 4)
    _attach(builder, terminal, "B2", 1)
    return builder.freeze()


# -- orchestration ------------------------------------------------------------------

def run_verification(n_min: int, n_max: int, claims="all", workers: int = 1,
                     checkpoint_dir: Optional[str] = None, tolerance: float = 1e-9,
                     budget: Optional[BudgetManager] = None,
                     jobs_per_worker: int = 4) -> Tuple[VerificationReport, List[MinimizerRecord]]:
    claim_ids = resolve_claims(claims)
    if n_min < 2 or n_max < n_min:
        raise DomainError(f"Need 2 <= n_min <= n_max, got {n_min}..{n_max}.")
    budget = budget or BudgetManager(BudgetConfig())
    budget.check_can_search(n_max)

    report = VerificationReport(claims=[ClaimReport(id=c, n_min=n_min, n_max=n_max) for c in claim_ids])
    if "THM8" in claim_ids:
        report.claims[claim_ids.index("THM8")].note = (
            f"checked for {THM8_MIN_ORDER} <= n only; the exceptional orders 161 and 168 are out of range")
    records = []
    for n in range(n_min, n_max + 1):
        record = find_minimal_abc_trees(n, workers=workers, tolerance=tolerance,
                                        checkpoint_dir=checkpoint_dir, budget=budget,
                                        jobs_per_worker=jobs_per_worker)
        records.append(record)
        outcomes = [check_claim(c, record) for c in claim_ids]
        for claim_report, outcome in zip(report.claims, outcomes):
            claim_report.outcomes.append(outcome)
        report.orders.append(OrderReport(
            n=n, min_abc=record.min_abc, minimizer_codes=record.minimizer_codes, claims=outcomes,
        ))
        logger.info(f"n={n}: min ABC {record.min_abc:.10f}, {len(record.minimizer_codes)} minimizer(s)")
    return report, records
