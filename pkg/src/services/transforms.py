"""
Switching transformation and the arm-moving transformations T, T1-T7.

Every transformation is a sequence of arm moves and child re-attachments
(an *arm* is the middle vertex of a length-2 pendant path together with its
leaf). Each one is evaluated three ways:

  structural_delta  ABC(after) - ABC(before) by recomputation
  formula_delta     closed form for the instance's exact degrees and relationship
  printed_delta     the closed form in its printed shape, which writes d(u) for d(v_p)
                    when u is the parent of v and uses f(4, 3) for the remaining
                    B2 edge in T5; it is an upper bound of formula_delta

and, when the parameters lie in the declared range, against the case
majorant (bound_delta) and its refinement.

Reconstructed edge moves (v_1, v_2, ... are v's B2 children in id order):
  T    one arm of u_1 moves to v_1.
  T1   v_1..v_4 move to u; v_5 and v_6 are split into two arms and a spare
       arm; u_1 gives an arm; v_1, v_2, v_3 and v each receive one arm.
  T2   as T1 with v_1..v_3 moving and v_4, v_5 split.
  T3   v_1, v_2 move to u; v_3, v_4 are split; v_1, v_2 and v receive arms.
  T41  v_1 moves to u and receives both split arms of v_2, v_3; v receives the spare.
  T42  v_1, v_2 move to u; u_1 gives an arm to v_1; one B1 of v becomes an arm of v_2.
  T5   v_1 moves to u and receives an arm of u_1 (T6 likewise with n2 = 1).
  T7   every B3 child of v moves to u; the arm of u_1 becomes a new B1 of v.
Splitting a B2 center c with arms (a, a') and (b, b') removes a-a' and c-b:
c keeps the leaf a, (b, b') is a free arm and a' a free leaf; two free
leaves joined together form the spare arm.
"""
import math
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from .analytic import limit_bound, g1_value, threshold_du
from .branches import resolve_root
from .core import DomainError, Edge, Tree, TreeBuilder, abc_index, edge_contribution

logger = logging.getLogger(__name__)

f = edge_contribution

CASE_IDS = ("T", "T1", "T2", "T3", "T41", "T42", "T5", "T6", "T7")
Relationship = Literal["a", "b", "c", "d"]


class PreconditionError(DomainError):
    """Raised when a tree does not contain the configuration a transformation needs."""
    pass


class TransformCase(BaseModel):
    id: str
    root: int
    u: int
    v: int
    u1: Optional[int] = None
    v1: Optional[int] = None
    up: Optional[int] = None
    vp: Optional[int] = None
    x: List[int] = Field(default_factory=list)
    du: int = 0
    dv: int = 0
    n1: int = 0
    n2: int = 0
    n3: int = 0
    relationship: Optional[Relationship] = None
    # second edge of a switch
    switch_edge: Optional[Tuple[int, int]] = None


class DeltaReport(BaseModel):
    case: TransformCase
    structural_delta: float
    formula_delta: float
    printed_delta: float
    bound_delta: Optional[float] = None
    refined_bound_delta: Optional[float] = None

    def agrees(self, tolerance: float = 1e-9) -> bool:
        return abs(self.structural_delta - self.formula_delta) <= tolerance

    def within_printed(self, tolerance: float = 1e-9) -> bool:
        return self.structural_delta <= self.printed_delta + tolerance


# -- case table --------------------------------------------------------------

@dataclass(frozen=True)
class CaseRule:
    """Required neighbourhood of v and the degree changes of one transformation."""
    n2: Optional[int]
    n1: Tuple[int, ...]
    u1_gives_arm: bool
    # d(v) values where the case bound is defined
    bound_dvs: Tuple[int, ...]
    increase: Callable[[int, int, int], int]
    dv_after: Callable[[int, int, int], int]


RULES: Dict[str, CaseRule] = {
    "T": CaseRule(None, (), True, (), lambda dv, n1, n3: 0, lambda dv, n1, n3: dv),
    "T1": CaseRule(6, (0,), True, (7,), lambda dv, n1, n3: 4, lambda dv, n1, n3: 4),
    "T2": CaseRule(5, (0, 1), True, (6, 7), lambda dv, n1, n3: 3, lambda dv, n1, n3: dv - 2),
    "T3": CaseRule(4, (0, 1, 2), False, (5, 6, 7), lambda dv, n1, n3: 2, lambda dv, n1, n3: dv - 1),
    "T41": CaseRule(3, (1, 2), False, (5, 6), lambda dv, n1, n3: 1, lambda dv, n1, n3: dv),
    "T42": CaseRule(3, (3,), True, (7,), lambda dv, n1, n3: 2, lambda dv, n1, n3: 4),
    "T5": CaseRule(2, (2, 3, 4), True, (5, 6, 7), lambda dv, n1, n3: 1, lambda dv, n1, n3: dv - 1),
    "T6": CaseRule(1, (3, 4), True, (5, 6), lambda dv, n1, n3: 1, lambda dv, n1, n3: dv - 1),
    "T7": CaseRule(0, (1, 2, 3, 4), True, (), lambda dv, n1, n3: n3, lambda dv, n1, n3: n1 + 2),
}

# d(u) windows where the case majorant is non-negative
PRINTED_EXCEPTION_WINDOWS: Dict[str, Dict[int, Tuple[int, int]]] = {
    "T3": {5: (13, 13)},
    "T41": {5: (13, 16), 6: (25, 69)},
    "T5": {5: (13, 34), 6: (25, 48), 7: (67, 83)},
    "T6": {5: (13, 17)},
}


def _rule(case_id: str) -> CaseRule:
    if case_id not in RULES:
        raise DomainError(f"Unknown transformation '{case_id}'. Known: {', '.join(CASE_IDS)}.")
    return RULES[case_id]


def degree_increase(case: TransformCase) -> int:
    return _rule(case.id).increase(case.dv, case.n1, case.n3)


def v_degree_after(case: TransformCase) -> int:
    return _rule(case.id).dv_after(case.dv, case.n1, case.n3)


# -- configuration recognition ------------------------------------------------

def _children(tree: Tree, parent: Sequence[int], x: int) -> List[int]:
    return [w for w in tree.adjacency[x] if parent[w] == x]


def _arm_count(tree: Tree, parent: Sequence[int], x: int) -> int:
    count = 0
    for c in _children(tree, parent, x):
        kids = _children(tree, parent, c)
        if tree.degrees[c] == 2 and len(kids) == 1 and tree.degrees[kids[0]] == 1:
            count += 1
    return count


def _is_center(tree: Tree, parent: Sequence[int], x: int, k: int) -> bool:
    """x is a B_k center (k >= 2) under the rooting given by parent."""
    return parent[x] >= 0 and tree.degrees[x] == k + 1 and _arm_count(tree, parent, x) == k


def _is_b1(tree: Tree, parent: Sequence[int], x: int) -> bool:
    kids = _children(tree, parent, x)
    return tree.degrees[x] == 2 and len(kids) == 1 and tree.degrees[kids[0]] == 1


def _inventory(tree: Tree, parent: Sequence[int], v: int) -> Dict[str, List[int]]:
    groups: Dict[str, List[int]] = {"b1": [], "b2": [], "b3": [], "other": []}
    for c in sorted(_children(tree, parent, v)):
        if _is_b1(tree, parent, c):
            groups["b1"].append(c)
        elif _is_center(tree, parent, c, 2):
            groups["b2"].append(c)
        elif _is_center(tree, parent, c, 3):
            groups["b3"].append(c)
        else:
            groups["other"].append(c)
    return groups


def build_case(tree: Tree, case_id: str, u: int, v: int, root=None,
               u1: Optional[int] = None, v1: Optional[int] = None) -> TransformCase:
    """
    Identify u_1, v_1, u_p, v_p, the x_i and the relationship for one
    transformation, checking every structural requirement.
    """
    rule = _rule(case_id)
    root = resolve_root(tree, root)
    for name, vertex in (("u", u), ("v", v)):
        if not 0 <= vertex < tree.n:
            raise DomainError(f"{name} = {vertex} is not a vertex of the tree.")
    _, parent = tree.rooted(root)
    if u == v and case_id != "T":
        raise PreconditionError(f"{case_id} needs u != v.")

    b4 = [c for c in sorted(_children(tree, parent, u)) if _is_center(tree, parent, c, 4)]
    if u1 is None:
        if not b4:
            raise PreconditionError(f"u = {u} has no B4 child.")
        u1 = b4[0]
    elif u1 not in b4:
        raise PreconditionError(f"u1 = {u1} is not a B4 center with parent {u}.")

    du, dv = tree.degrees[u], tree.degrees[v]
    if not du >= dv >= 5:
        raise PreconditionError(f"Need d(u) >= d(v) >= 5, got d(u) = {du}, d(v) = {dv}.")

    groups = _inventory(tree, parent, v)
    n1, n2, n3 = len(groups["b1"]), len(groups["b2"]), len(groups["b3"])

    if case_id == "T":
        if v1 is None:
            if not groups["b2"]:
                raise PreconditionError(f"v = {v} has no B2 child.")
            v1 = groups["b2"][0]
        elif v1 not in groups["b2"]:
            raise PreconditionError(f"v1 = {v1} is not a B2 center with parent {v}.")
    else:
        if parent[v] < 0:
            raise PreconditionError(f"v = {v} is the root; {case_id} needs the parent v_p.")
        if groups["other"]:
            raise PreconditionError(
                f"v = {v} has children {groups['other']} that are not B1/B2/B3 centers.")
        if case_id == "T7":
            if n2:
                raise PreconditionError(f"T7 needs no B2 child under v, found {n2}.")
            if n3 < 1:
                raise PreconditionError("T7 needs at least one B3 child under v, found 0.")
        else:
            if n3:
                raise PreconditionError(f"{case_id} needs no B3 child under v, found {n3}.")
            if n2 != rule.n2:
                raise PreconditionError(f"{case_id} needs n2 = {rule.n2} B2 children under v, found {n2}.")
        if n1 not in rule.n1:
            raise PreconditionError(f"{case_id} needs n1 in {list(rule.n1)} B1 children under v, found {n1}.")
        # T7 has no B2 child; its v_1 is the first B1 child
        v1 = (groups["b1"] if case_id == "T7" else groups["b2"])[0]

    up = parent[u] if parent[u] >= 0 else None
    vp = parent[v] if parent[v] >= 0 else None
    relationship = None
    if vp is not None:
        if vp == u:
            relationship = "d" if u == root else "c"
        elif up is not None and up == vp:
            relationship = "b"
        else:
            relationship = "a"

    dv_after = rule.dv_after(dv, n1, n3)
    skip = {u1} if rule.u1_gives_arm else set()
    if relationship in ("c", "d") and dv_after != dv:
        skip.add(v)
    x = [w for w in tree.adjacency[u] if w not in skip]

    return TransformCase(
        id=case_id, root=root, u=u, v=v, u1=u1, v1=v1, up=up, vp=vp, x=x,
        du=du, dv=dv, n1=n1, n2=n2, n3=n3, relationship=relationship,
    )


# -- closed forms ---------------------------------------------------------------

def _child_terms(case_id: str, du: int, dv: int, k: int, dva: int, printed: bool) -> float:
    """Edges between v's (former) children and u or v."""
    if case_id == "T1":
        return 3 * (-f(3, dv) + f(4, du + k)) - f(3, dv) + f(3, du + k) + 2 * (-f(3, dv) + f(2, dva))
    if case_id == "T2":
        return 3 * (-f(3, dv) + f(4, du + k)) + 2 * (-f(3, dv) + f(2, dva))
    if case_id == "T3":
        return 2 * (-f(3, dv) + f(4, du + k)) + 2 * (-f(3, dv) + f(2, dva))
    if case_id == "T41":
        return -f(3, dv) + f(5, du + k) + 2 * (-f(3, dv) + f(2, dva))
    if case_id == "T42":
        return 2 * (-f(3, dv) + f(4, du + k)) - f(3, dv) + f(3, dva)
    if case_id == "T5":
        remaining = f(4, 3) if printed else f(3, dva)
        return -f(3, dv) + remaining - f(3, dv) + f(4, du + k)
    if case_id == "T6":
        return -f(3, dv) + f(4, du + k)
    if case_id == "T7":
        return k * (-f(4, dv) + f(4, du + k))
    raise DomainError(f"No child terms for '{case_id}'.")


def closed_form_delta(tree: Tree, case: TransformCase, printed: bool = False) -> float:
    """
    Sum over the x_i of the change on u's edges, the u_1 edge, the edges of
    v's children and the v_p edge. With printed=True the printed form is
    used (see module docstring).
    """
    if case.id == "T":
        return g1_value(case.du, case.dv) if case.du >= case.dv >= 5 else (
            -f(case.du, 5) + f(case.du, 4) - f(case.dv, 3) + f(case.dv, 4))

    rule = _rule(case.id)
    du, dv = case.du, case.dv
    k = rule.increase(dv, case.n1, case.n3)
    dva = rule.dv_after(dv, case.n1, case.n3)
    degrees = tree.degrees

    total = 0.0
    for w in case.x:
        total += -f(degrees[w], du) + f(degrees[w], du + k)
    if rule.u1_gives_arm:
        total += -f(5, du) + f(4, du + k)
    total += _child_terms(case.id, du, dv, k, dva, printed)
    if dva != dv:
        dvp = degrees[case.vp]
        dvp_after = dvp + k if case.vp == case.u and not printed else dvp
        total += -f(dvp, dv) + f(dvp_after, dva)
    return total


# -- case majorants --------------------------------------------------------------

def _check_bound_range(case_id: str, du: int, dv: int, n1: Optional[int]) -> None:
    rule = _rule(case_id)
    if case_id == "T":
        if not du >= dv >= 5:
            raise DomainError(f"T bound needs d(u) >= d(v) >= 5, got ({du}, {dv}).")
        return
    if case_id == "T7":
        if n1 is None or not 1 <= n1 <= 4:
            raise DomainError(f"T7 bound needs 1 <= n1 <= 4, got {n1}.")
        if dv < 5 or dv < n1 + 2 or du < dv:
            raise DomainError(f"T7 bound needs d(u) >= d(v) >= max(5, n1 + 2), got ({du}, {dv}, n1={n1}).")
        return
    if dv not in rule.bound_dvs:
        raise DomainError(f"{case_id} bound is stated for d(v) in {list(rule.bound_dvs)}, got {dv}.")
    lowest = threshold_du(dv)
    if du < lowest:
        raise DomainError(f"{case_id} bound at d(v) = {dv} needs d(u) >= {lowest}, got {du}.")


def _shift(dv: int, c: int) -> float:
    return -math.sqrt(1 / dv) + math.sqrt(1 / (dv - c))


def _plain_bound(case_id: str, du: int, dv: int, n1: Optional[int]) -> float:
    l5 = limit_bound("f5_to_f4")
    l7 = limit_bound("f7_to_f4")
    if case_id == "T":
        return g1_value(du, dv)
    if case_id == "T1":
        # stated for d(u) > 66, i.e. evaluated at the open endpoint d(u) - 1
        d = du - 1
        return (l5 + 3 * (-f(3, 7) + f(4, d + 4)) - f(3, 7) + f(3, d + 4)
                + l7 + 2 * (-f(3, 7) + f(2, 4)))
    if case_id == "T2":
        return l5 + 3 * (-f(3, dv) + f(4, du + 3)) + _shift(dv, 2) + 2 * (-f(3, dv) + f(2, 4))
    if case_id == "T3":
        return 2 * (-f(3, dv) + f(4, du + 2)) + _shift(dv, 1) + 2 * (-f(3, dv) + f(2, 4))
    if case_id == "T41":
        return -f(3, dv) + f(5, du + 1) + 2 * (-f(3, dv) + f(2, dv))
    if case_id == "T42":
        return l5 + 2 * (-f(3, 7) + f(4, du + 2)) + l7 - f(3, 7) + f(4, 3)
    if case_id == "T5":
        return l5 - f(3, dv) + f(4, 3) - f(3, dv) + f(4, du + 1) + _shift(dv, 1)
    if case_id == "T6":
        return l5 - f(3, dv) + f(4, du + 1) + _shift(dv, 1)
    m = dv - n1 - 1
    return l5 + m * (-f(4, dv) + f(4, du + m)) - math.sqrt(1 / dv) + math.sqrt(1 / (n1 + 2))


def bound_increase(case_id: str, dv: int, n1: Optional[int] = None) -> int:
    """Degree increase k of u used by the refined bound."""
    if case_id == "T":
        return 0
    if case_id == "T7":
        return dv - n1 - 1
    return _rule(case_id).increase(dv, n1 or 0, 0)


def evaluate_bound(case_id: str, du: int, dv: int, n1: Optional[int] = None) -> float:
    _check_bound_range(case_id, du, dv, n1)
    return _plain_bound(case_id, du, dv, n1)


def refined_bound(case_id: str, du: int, dv: int, n1: Optional[int] = None) -> float:
    """Case majorant plus (d(u) - 2)(-f(4, d(u)) + f(4, d(u) + k))."""
    _check_bound_range(case_id, du, dv, n1)
    k = bound_increase(case_id, dv, n1)
    return _plain_bound(case_id, du, dv, n1) + (du - 2) * (-f(4, du) + f(4, du + k))


def exception_windows(case_id: str, du_max: int = 100_000,
                      dvs: Sequence[int] = range(5, 9)) -> Dict:
    """
    Integer d(u) ranges where the case majorant is non-negative, found by
    scanning upward from the smallest admissible d(u). Keys are d(v), or
    (d(v), n1) for T7.
    """
    rule = _rule(case_id)
    if case_id == "T":
        raise DomainError("T has no separate majorant; see threshold_du.")
    if case_id == "T7":
        keys = [(dv, n1) for dv in dvs for n1 in range(1, 5) if dv >= n1 + 2]
    else:
        keys = [(dv, None) for dv in rule.bound_dvs]

    windows = {}
    for dv, n1 in keys:
        du = dv if case_id == "T7" else threshold_du(dv)
        first = du
        while du <= du_max and _plain_bound(case_id, du, dv, n1) >= 0:
            du += 1
        if du > first:
            windows[(dv, n1) if case_id == "T7" else dv] = (first, du - 1)
    return windows


def bound_grid(case_id: str, du_span: int = 80) -> pd.DataFrame:
    """Case and refined majorants over the declared parameter grid."""
    rows = []
    if case_id == "T":
        keys = [(dv, None, dv) for dv in range(5, 9)]
    elif case_id == "T7":
        keys = [(dv, n1, dv) for dv in range(5, 9) for n1 in range(1, 5) if dv >= n1 + 2]
    else:
        keys = [(dv, None, threshold_du(dv)) for dv in _rule(case_id).bound_dvs]
    for dv, n1, start in keys:
        for du in range(start, start + du_span):
            rows.append({
                "case": case_id, "dv": dv, "n1": n1, "du": du,
                "bound": evaluate_bound(case_id, du, dv, n1),
                "refined": refined_bound(case_id, du, dv, n1),
            })
    return pd.DataFrame(rows, columns=["case", "dv", "n1", "du", "bound", "refined"])


def _report_bounds(case: TransformCase) -> Tuple[Optional[float], Optional[float]]:
    try:
        n1 = case.n1 if case.id == "T7" else None
        return (evaluate_bound(case.id, case.du, case.dv, n1),
                refined_bound(case.id, case.du, case.dv, n1))
    except DomainError:
        return None, None


# -- structural surgery --------------------------------------------------------------

class _Surgery:
    """Arm-level edits on a builder, keeping the rooted parent map current."""

    def __init__(self, tree: Tree, root: int):
        self.builder = TreeBuilder.from_tree(tree)
        _, self.parent = tree.rooted(root)

    def children(self, x: int) -> List[int]:
        return sorted(w for w in self.builder.adjacency[x] if self.parent[w] == x)

    def arms(self, center: int) -> List[int]:
        result = []
        for c in self.children(center):
            kids = self.children(c)
            if self.builder.degree(c) == 2 and len(kids) == 1 and self.builder.degree(kids[0]) == 1:
                result.append(c)
        return result

    def detach(self, x: int) -> int:
        self.builder.remove_edge(self.parent[x], x)
        self.parent[x] = -1
        return x

    def attach(self, new_parent: int, x: int) -> None:
        self.builder.add_edge(new_parent, x)
        self.parent[x] = new_parent

    def reparent(self, x: int, new_parent: int) -> None:
        self.detach(x)
        self.attach(new_parent, x)

    def take_arm(self, center: int) -> int:
        arms = self.arms(center)
        if not arms:
            raise PreconditionError(f"Vertex {center} has no arm to give.")
        return self.detach(arms[-1])

    def split_b2(self, center: int) -> Tuple[int, int]:
        """Free one arm and one leaf of a B2 center; the center keeps a single leaf."""
        a, b = self.arms(center)[:2]
        spare_leaf = self.children(a)[0]
        self.detach(spare_leaf)
        self.detach(b)
        return b, spare_leaf

    def join(self, first: int, second: int) -> int:
        """Two free leaves become one arm with middle vertex `first`."""
        self.attach(first, second)
        return first

    def freeze(self) -> Tree:
        return self.builder.freeze(validate=True)


def _rearrange(tree: Tree, case: TransformCase) -> Tree:
    s = _Surgery(tree, case.root)
    u, v = case.u, case.v
    groups = _inventory(tree, tree.rooted(case.root)[1], v)
    b2 = groups["b2"]

    if case.id == "T":
        s.attach(case.v1, s.take_arm(case.u1))
    elif case.id in ("T1", "T2", "T3"):
        moved = {"T1": 4, "T2": 3, "T3": 2}[case.id]
        for w in b2[:moved]:
            s.reparent(w, u)
        arm_a, leaf_a = s.split_b2(b2[moved])
        arm_b, leaf_b = s.split_b2(b2[moved + 1])
        spare = s.join(leaf_a, leaf_b)
        s.attach(b2[0], arm_a)
        s.attach(b2[1], arm_b)
        if case.id != "T3":
            s.attach(b2[2], s.take_arm(case.u1))
        s.attach(v, spare)
    elif case.id == "T41":
        s.reparent(b2[0], u)
        arm_a, leaf_a = s.split_b2(b2[1])
        arm_b, leaf_b = s.split_b2(b2[2])
        s.attach(b2[0], arm_a)
        s.attach(b2[0], arm_b)
        s.attach(v, s.join(leaf_a, leaf_b))
    elif case.id == "T42":
        s.reparent(b2[0], u)
        s.reparent(b2[1], u)
        s.attach(b2[0], s.take_arm(case.u1))
        s.attach(b2[1], s.detach(groups["b1"][0]))
    elif case.id in ("T5", "T6"):
        s.reparent(b2[0], u)
        s.attach(b2[0], s.take_arm(case.u1))
    elif case.id == "T7":
        for w in groups["b3"]:
            s.reparent(w, u)
        s.attach(v, s.take_arm(case.u1))
    else:
        raise DomainError(f"Unknown transformation '{case.id}'.")
    return s.freeze()


def _apply(tree: Tree, case: TransformCase) -> Tuple[Tree, DeltaReport]:
    after = _rearrange(tree, case)
    structural = abc_index(after) - abc_index(tree)
    formula = closed_form_delta(tree, case)
    printed = closed_form_delta(tree, case, printed=True)
    bound, refined = _report_bounds(case)
    report = DeltaReport(
        case=case, structural_delta=structural, formula_delta=formula,
        printed_delta=printed, bound_delta=bound, refined_bound_delta=refined,
    )
    if not report.agrees():
        logger.warning(f"{case.id}: structural {structural:.12f} differs from formula {formula:.12f}")
    return after, report


def apply_T(tree: Tree, case: TransformCase) -> Tuple[Tree, DeltaReport]:
    if case.id != "T":
        raise DomainError(f"apply_T handles case T, got {case.id}.")
    return _apply(tree, case)


def apply_case_transform(tree: Tree, case: TransformCase) -> Tuple[Tree, DeltaReport]:
    if case.id not in CASE_IDS:
        raise DomainError(f"Unknown transformation '{case.id}'.")
    return _apply(tree, case)


# -- switching ---------------------------------------------------------------------

def switch(tree: Tree, uv: Edge, xy: Edge) -> Tuple[Tree, DeltaReport]:
    """G - uv - xy + uy + xv; degrees are unchanged, only the four edge ends move."""
    u, v = uv
    x, y = xy
    if not tree.has_edge(u, v) or not tree.has_edge(x, y):
        raise DomainError(f"Both ({u}, {v}) and ({x}, {y}) must be edges.")
    if u == y or x == v:
        raise DomainError("Switch would create a loop.")
    if tree.has_edge(u, y) or tree.has_edge(x, v):
        raise DomainError(f"Edges ({u}, {y}) and ({x}, {v}) must be absent.")

    builder = TreeBuilder.from_tree(tree)
    builder.remove_edge(u, v)
    builder.remove_edge(x, y)
    builder.add_edge(u, y)
    builder.add_edge(x, v)
    result = Tree(builder.n, builder.adjacency, degrees=builder.degrees, validate=False)
    if len(result.bfs_order(0)) != result.n:
        raise DomainError(f"Switching ({u}, {v}) and ({x}, {y}) disconnects the tree.")

    d = tree.degrees
    formula = -f(d[u], d[v]) - f(d[x], d[y]) + f(d[u], d[y]) + f(d[x], d[v])
    case = TransformCase(id="SWITCH", root=0, u=u, v=v, du=d[u], dv=d[v], switch_edge=(x, y))
    report = DeltaReport(
        case=case, structural_delta=abc_index(result) - abc_index(tree),
        formula_delta=formula, printed_delta=formula,
    )
    return result, report


def switch_expected_sign(tree: Tree, uv: Edge, xy: Edge) -> Optional[int]:
    """
    -1 or 0 when the switch is covered by the degree ordering (0 when a
    degree pair is equal), None when the ordering does not apply.
    """
    d = tree.degrees
    (u, v), (x, y) = uv, xy
    if d[u] >= d[x] and d[v] <= d[y]:
        return 0 if d[u] == d[x] or d[v] == d[y] else -1
    return None


# -- random instances ------------------------------------------------------------------

FILLERS = ("leaf", "arm", "b2", "b3", "b4", "hub")


def _grow(builder: TreeBuilder, parent: int, kind: str) -> int:
    child = builder.add_child(parent)
    if kind == "arm":
        builder.add_child(child)
    elif kind in ("b2", "b3", "b4"):
        for _ in range(int(kind[1])):
            _grow(builder, child, "arm")
    elif kind == "hub":
        builder.add_child(child)
        builder.add_child(child)
    return child


def _v_layout(case_id: str, rng: np.random.Generator) -> Tuple[int, int, int]:
    """(n1, n2, n3) for v's children."""
    if case_id == "T7":
        n1 = int(rng.integers(1, 5))
        n3 = int(rng.integers(max(1, 4 - n1), 5))
        return n1, 0, n3
    rule = RULES[case_id]
    return int(rng.choice(rule.n1)), rule.n2, 0


def random_instance(case_id: str, relationship: Optional[Relationship] = None,
                    rng: Optional[np.random.Generator] = None) -> Tuple[Tree, TransformCase]:
    """
    A random tree holding the configuration of case_id, with random filler
    branches around u, v and their parents and d(u) in [d(v), d(v) + 8].
    """
    _rule(case_id)
    rng = rng if rng is not None else np.random.default_rng()
    if relationship is None:
        relationship = str(rng.choice(["a", "b", "c", "d"]))
    if relationship not in ("a", "b", "c", "d"):
        raise DomainError(f"Unknown relationship '{relationship}'.")

    b = TreeBuilder(1)
    top = 0
    if relationship == "a":
        if rng.random() < 0.5:
            up = b.add_child(top)
            u = b.add_child(up)
            vp = b.add_child(top)
        else:
            # v_p hangs below u
            up = top
            u = b.add_child(up)
            vp = b.add_child(u)
        v = b.add_child(vp)
        extra_parents = [top, up, vp]
    elif relationship == "b":
        u = b.add_child(top)
        v = b.add_child(top)
        extra_parents = [top]
    elif relationship == "c":
        u = b.add_child(top)
        v = b.add_child(u)
        extra_parents = [top]
    else:
        u = top
        v = b.add_child(u)
        extra_parents = []

    if case_id == "T":
        v1 = _grow(b, v, "b2")
        for _ in range(int(rng.integers(3, 7))):
            _grow(b, v, str(rng.choice(FILLERS)))
    else:
        n1, n2, n3 = _v_layout(case_id, rng)
        for _ in range(n1):
            _grow(b, v, "arm")
        for _ in range(n2):
            _grow(b, v, "b2")
        for _ in range(n3):
            _grow(b, v, "b3")
        v1 = None

    for p in extra_parents:
        if p != u:
            for _ in range(int(rng.integers(0, 3))):
                _grow(b, p, str(rng.choice(FILLERS)))

    dv = b.degree(v)
    du = int(rng.integers(dv, dv + 9))
    u1 = _grow(b, u, "b4")
    while b.degree(u) < du:
        _grow(b, u, str(rng.choice(FILLERS)))

    tree = b.freeze()
    perm = [int(p) for p in rng.permutation(tree.n)]
    tree = tree.relabel(perm)
    case = build_case(tree, case_id, perm[u], perm[v], root=perm[top], u1=perm[u1],
                      v1=perm[v1] if v1 is not None else None)
    return tree, case


def agreement_reports(case_id: str, instances: int, seed: int = 0) -> List[DeltaReport]:
    rng = np.random.default_rng(seed)
    relationships = ["a", "b", "c", "d"]
    reports = []
    for i in range(instances):
        tree, case = random_instance(case_id, relationships[i % 4], rng)
        _, report = apply_case_transform(tree, case)
        reports.append(report)
    return reports


def agreement_table(case_ids: Sequence[str] = CASE_IDS, instances: int = 100,
                    seed: int = 0, tolerance: float = 1e-9) -> pd.DataFrame:
    rows = []
    for offset, case_id in enumerate(case_ids):
        reports = agreement_reports(case_id, instances, seed + offset)
        gaps = [abs(r.structural_delta - r.formula_delta) for r in reports]
        slack = [r.printed_delta - r.structural_delta for r in reports]
        rows.append({
            "case": case_id,
            "instances": len(reports),
            "max_formula_gap": max(gaps),
            "min_printed_slack": min(slack),
            "agree": all(g <= tolerance for g in gaps),
            "within_printed": all(s >= -tolerance for s in slack),
        })
    return pd.DataFrame(rows)
