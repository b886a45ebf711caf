"""
Scalar calculus behind the minimality arguments: the g-functions, the
B4/B2 threshold g1, closed-form limits and the monotonicity grids.
"""
import math
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Literal, Optional

import numpy as np
import pandas as pd

from .cache import cache_manager
from .core import DomainError, edge_contribution

logger = logging.getLogger(__name__)

f = edge_contribution

# |value| below this is reported for manual review instead of being classified
NEAR_ZERO = 1e-12

Orientation = Literal["increase-x-decrease-y", "decrease-x-increase-y"]


@dataclass(frozen=True)
class DeltaFunction:
    """g(x, y) = -f(x, y) + f(x +/- dx, y -/+ dy)."""
    dx: float
    dy: float
    orientation: Orientation = "increase-x-decrease-y"

    def __call__(self, x: float, y: float) -> float:
        if self.orientation == "increase-x-decrease-y":
            return g_value(x, y, self.dx, self.dy)
        return g_value_reversed(x, y, self.dx, self.dy)


def g_value(x: float, y: float, dx: float, dy: float) -> float:
    """-f(x, y) + f(x + dx, y - dy); increases in x and decreases in y."""
    if x < 2 or y < 2:
        raise DomainError(f"g is defined for x, y >= 2, got ({x}, {y}).")
    if dx < 0 or not 0 <= dy < y:
        raise DomainError(f"Need dx >= 0 and 0 <= dy < y, got dx={dx}, dy={dy}.")
    if y - dy < 1:
        raise DomainError(f"y - dy = {y - dy} is below 1.")
    return -f(x, y) + f(x + dx, y - dy)


def g_value_reversed(x: float, y: float, dx: float, dy: float) -> float:
    """-f(x, y) + f(x - dx, y + dy); decreases in x and increases in y."""
    if x < 2 or y < 2:
        raise DomainError(f"g is defined for x, y >= 2, got ({x}, {y}).")
    if dy < 0 or not 0 <= dx < x:
        raise DomainError(f"Need dy >= 0 and 0 <= dx < x, got dx={dx}, dy={dy}.")
    if x - dx < 1:
        raise DomainError(f"x - dx = {x - dx} is below 1.")
    return -f(x, y) + f(x - dx, y + dy)


def g1_value(du: int, dv: int) -> float:
    """Change of ABC when one arm moves from a B4 center under u to a B2 center under v."""
    if not du >= dv >= 5:
        raise DomainError(f"g1 needs d(u) >= d(v) >= 5, got ({du}, {dv}).")
    return -f(du, 5) + f(du, 4) - f(dv, 3) + f(dv, 4)


def g1_limit(dv: int) -> float:
    """Supremum of g1(., dv) as d(u) grows."""
    return -math.sqrt(1 / 5) + math.sqrt(1 / 4) - f(dv, 3) + f(dv, 4)


def _flag(label: str, value: float) -> None:
    if abs(value) < NEAR_ZERO:
        logger.warning(f"{label} = {value:.3e} is within {NEAR_ZERO:g} of zero; review manually")


def threshold_du(dv: int) -> Optional[int]:
    """
    Least d(u) >= d(v) with g1(d(u), d(v)) >= 0, or None when the limit
    is already negative.
    """
    if dv < 5:
        raise DomainError(f"Thresholds are defined for d(v) >= 5, got {dv}.")
    cached = cache_manager.get("threshold", dv)
    if cached is not None:
        return cached[0]

    limit = g1_limit(dv)
    _flag(f"limit of g1(., {dv})", limit)
    result = None
    if limit >= 0:
        du = dv
        while True:
            value = g1_value(du, dv)
            if value >= 0:
                _flag(f"g1({du}, {dv})", value)
                result = du
                break
            du += 1
    cache_manager.set("threshold", dv, (result,))
    return result


def threshold_scan(dv: int, du_max: int = 10 ** 6) -> Optional[int]:
    """Vectorised linear scan over d(u) in [d(v), du_max]; oracle for threshold_du."""
    du = np.arange(dv, du_max + 1, dtype=float)
    values = (-np.sqrt((du + 3) / (5 * du)) + np.sqrt((du + 2) / (4 * du))
              - math.sqrt((dv + 1) / (3 * dv)) + math.sqrt((dv + 2) / (4 * dv)))
    hits = np.nonzero(values >= 0)[0]
    return int(du[hits[0]]) if hits.size else None


# -- limits ------------------------------------------------------------------

def _shift_limit(dv: float, c: float) -> float:
    if dv - c <= 0:
        raise DomainError(f"d(v) - c must be positive, got {dv} - {c}.")
    return -math.sqrt(1 / dv) + math.sqrt(1 / (dv - c))


LIMIT_CATALOGUE: Dict[str, Callable[..., float]] = {
    # lim_{d(u)} -f(5, d(u)) + f(4, d(u) + k)
    "f5_to_f4": lambda: -math.sqrt(1 / 5) + math.sqrt(1 / 4),
    # lim_{d(v_p)} -f(d(v_p), 7) + f(d(v_p), 4)
    "f7_to_f4": lambda: -math.sqrt(1 / 7) + math.sqrt(1 / 4),
    # lim_{d(v_p)} -f(d(v_p), dv) + f(d(v_p), dv - c)
    "vp_shift": _shift_limit,
    # lim_{d(u)} g1(d(u), dv)
    "g1": g1_limit,
}

# finite-argument counterparts that approach each limit from below
LIMIT_APPROACH: Dict[str, Callable[..., float]] = {
    "f5_to_f4": lambda x, k=4: -f(5, x) + f(4, x + k),
    "f7_to_f4": lambda x: -f(x, 7) + f(x, 4),
    "vp_shift": lambda x, dv, c: -f(x, dv) + f(x, dv - c),
    "g1": lambda x, dv: g1_value(x, dv),
}


def limit_bound(expr_id: str, **params) -> float:
    if expr_id not in LIMIT_CATALOGUE:
        raise DomainError(f"Unknown limit '{expr_id}'. Known: {', '.join(sorted(LIMIT_CATALOGUE))}.")
    try:
        return LIMIT_CATALOGUE[expr_id](**params)
    except TypeError as e:
        raise DomainError(f"Bad parameters for limit '{expr_id}': {e}")


def limit_approach(expr_id: str, x: float, **params) -> float:
    if expr_id not in LIMIT_APPROACH:
        raise DomainError(f"Unknown limit '{expr_id}'.")
    return LIMIT_APPROACH[expr_id](x, **params)


def limit_table() -> pd.DataFrame:
    rows = [
        {"id": "f5_to_f4", "params": "", "value": limit_bound("f5_to_f4")},
        {"id": "f7_to_f4", "params": "", "value": limit_bound("f7_to_f4")},
    ]
    for dv, c in [(5, 1), (6, 1), (6, 2), (7, 1), (7, 2), (7, 3)]:
        rows.append({"id": "vp_shift", "params": f"dv={dv},c={c}", "value": limit_bound("vp_shift", dv=dv, c=c)})
    for dv in range(5, 9):
        rows.append({"id": "g1", "params": f"dv={dv}", "value": limit_bound("g1", dv=dv)})
    return pd.DataFrame(rows, columns=["id", "params", "value"])


# -- monotonicity grids ------------------------------------------------------

GRID = np.arange(2.0, 50.0 + 0.25, 0.5)


def _f_array(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.sqrt((x + y - 2) / (x * y))


def _g_grid(lemma: int, dx: float, dy: float):
    """g over the grid (rows x, columns y) and the mask where it is defined."""
    x, y = np.meshgrid(GRID, GRID, indexing="ij")
    if lemma == 5:
        valid = (dy < y) & (y - dy >= 1)
        xs, ys = x + dx, np.where(valid, y - dy, 1.0)
    else:
        valid = (dx < x) & (x - dx >= 1)
        xs, ys = np.where(valid, x - dx, 1.0), y + dy
    return -_f_array(x, y) + _f_array(xs, ys), valid


def monotonicity_grid(lemma: Literal[5, 6]) -> pd.DataFrame:
    """
    Grid check of the g-function monotonicity.
    Lemma 5: g = -f(x,y) + f(x+dx, y-dy) is non-decreasing in x and non-increasing in y.
    Lemma 6: g = -f(x,y) + f(x-dx, y+dy) is non-increasing in x and non-decreasing in y.
    One row per (dx, dy, direction): steps checked, violations, strict steps, near-zero steps.
    """
    if lemma not in (5, 6):
        raise DomainError(f"Grid checks exist for lemma 5 and 6, got {lemma}.")
    if lemma == 5:
        shifts = [(dx, dy) for dx in (0, 1, 2, 4) for dy in (0, 1, 2)]
        signs = {"x": 1.0, "y": -1.0}
    else:
        shifts = [(dx, dy) for dx in (0, 1, 2) for dy in (0, 1, 2, 4)]
        signs = {"x": -1.0, "y": 1.0}

    rows = []
    for dx, dy in shifts:
        g, valid = _g_grid(lemma, dx, dy)
        for direction, axis in (("x", 0), ("y", 1)):
            step = np.diff(g, axis=axis) * signs[direction]
            both = valid[1:, :] & valid[:-1, :] if axis == 0 else valid[:, 1:] & valid[:, :-1]
            trivial = dx == 0 and dy == 0
            rows.append({
                "lemma": lemma,
                "dx": dx,
                "dy": dy,
                "direction": direction,
                "checked": int(both.sum()),
                "violations": int(((step < 0) & both).sum()),
                "strict": int(((step > 0) & both).sum()),
                "near_zero": 0 if trivial else int(((np.abs(step) < NEAR_ZERO) & both).sum()),
            })
    frame = pd.DataFrame(rows)
    flagged = int(frame["near_zero"].sum())
    if flagged:
        logger.warning(f"Lemma {lemma} grid: {flagged} steps within {NEAR_ZERO:g} of zero")
    return frame


def grid_violations(lemma: Literal[5, 6]) -> int:
    return int(monotonicity_grid(lemma)["violations"].sum())


def threshold_rows(dvs=range(5, 9)) -> List[dict]:
    """Rows for reports: d(v) with its threshold (None when g1 stays negative)."""
    return [{"dv": dv, "du": threshold_du(dv)} for dv in dvs]
