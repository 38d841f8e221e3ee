"""
Rule layer for (d, f0, f1) queries.

Rules are applied in RULE_ORDER and the first violated one decides an
Infeasible verdict. A query that passes every rule is Unknown here; the
witness search upgrades it to Feasible.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from ..core.models import Polytope
from ..utils.constants import (
    AXIOM_RULES,
    RULE_EDGE_BOUNDS,
    RULE_EXCESS_D1_DIM,
    RULE_EXCESS_GAP,
    RULE_FIVE_POLY_1335,
    RULE_FIVE_POLY_925,
    RULE_FOUR_POLY_817,
    RULE_PENTASM_LB,
    RULE_SIMPLE5_CENSUS,
    RULE_SIMPLE_CENSUS,
    RULE_TRIPLEX_LB,
    STATUS_FEASIBLE,
    STATUS_INFEASIBLE,
    STATUS_UNKNOWN,
)
from ..utils.helpers import binomial_pairs

logger = logging.getLogger(__name__)


@dataclass
class FeasibilityVerdict:
    """Answer to "is there a d-polytope with f0 vertices and f1 edges?"."""
    status: str
    dim: int
    f0: int
    f1: int
    rule: Optional[str] = None
    witness: Optional[str] = None
    note: str = ""
    polytope: Optional[Polytope] = field(default=None, compare=False, repr=False)

    @property
    def excess(self) -> int:
        return excess_value(self.dim, self.f0, self.f1)

    @property
    def is_feasible(self) -> bool:
        return self.status == STATUS_FEASIBLE

    @property
    def is_infeasible(self) -> bool:
        return self.status == STATUS_INFEASIBLE

    @property
    def is_unknown(self) -> bool:
        return self.status == STATUS_UNKNOWN

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'status': self.status,
            'dim': self.dim,
            'f0': self.f0,
            'f1': self.f1,
            'excess': self.excess,
        }
        if self.rule:
            data['rule'] = self.rule
            if self.rule in AXIOM_RULES:
                data['axiom'] = AXIOM_RULES[self.rule]
        if self.witness:
            data['witness'] = self.witness
        if self.note:
            data['note'] = self.note
        return data


def excess_value(d: int, f0: int, f1: int) -> int:
    """Excess degree 2 f1 - d f0 implied by a vertex and edge count."""
    return 2 * f1 - d * f0


def check_query(d: int, f0: int, f1: int) -> None:
    """Raise ValueError unless the query is well formed."""
    for name, value in (('d', d), ('f0', f0), ('f1', f1)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"{name} must be an integer, got {value!r}")
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    if f0 < d + 1:
        raise ValueError(f"a {d}-polytope has at least {d + 1} vertices, got f0={f0}")
    if f1 < 0:
        raise ValueError(f"edge count must be nonnegative, got {f1}")


def edge_bounds(d: int, f0: int) -> Tuple[int, int]:
    """Smallest and largest edge counts allowed by degree and Euler bounds."""
    lower = -(-d * f0 // 2)
    if d == 2:
        upper = f0
    elif d == 3:
        upper = 3 * f0 - 6
    else:
        upper = binomial_pairs(f0)
    return lower, upper


def _simple_census_allows(d: int, f0: int) -> bool:
    if d < 3:
        return True
    if f0 in (d + 1, 2 * d, 3 * d - 3, 3 * d - 1) or f0 > 3 * d:
        return True
    if f0 == 3 * d - 2:
        return d == 6
    if f0 == 3 * d:
        return d in (4, 8)
    return False


def violated_rule(d: int, f0: int, f1: int) -> Optional[str]:
    """First rule the triple breaks, or None."""
    check_query(d, f0, f1)
    lower, upper = edge_bounds(d, f0)
    if not lower <= f1 <= upper:
        return RULE_EDGE_BOUNDS

    xi = excess_value(d, f0, f1)
    if 1 <= xi <= d - 3:
        return RULE_EXCESS_GAP
    if xi == d - 1 and d not in (3, 5):
        return RULE_EXCESS_D1_DIM

    k = f0 - d
    if 1 <= k <= d and 2 * f1 < d * (d + k) + (k - 1) * (d - k):
        return RULE_TRIPLEX_LB
    if f0 == 2 * d + 1:
        minimum = 18 if d == 4 else d * d + d - 1
        if f1 < minimum:
            return RULE_PENTASM_LB

    if d == 5 and (f0, f1) == (9, 25):
        return RULE_FIVE_POLY_925
    if d == 5 and (f0, f1) == (13, 35):
        return RULE_FIVE_POLY_1335
    if d == 4 and (f0, f1) == (8, 17):
        return RULE_FOUR_POLY_817

    if xi == 0:
        if not _simple_census_allows(d, f0):
            return RULE_SIMPLE_CENSUS
        if d == 5 and not (f0 == 6 or (f0 % 2 == 0 and f0 >= 10)):
            return RULE_SIMPLE5_CENSUS
    return None


def feasibility(d: int, f0: int, f1: int) -> FeasibilityVerdict:
    """Infeasible with the first violated rule, else Unknown."""
    rule = violated_rule(d, f0, f1)
    if rule is None:
        return FeasibilityVerdict(status=STATUS_UNKNOWN, dim=d, f0=f0, f1=f1)
    logger.debug("(%d, %d, %d) ruled out by %s", d, f0, f1, rule)
    return FeasibilityVerdict(status=STATUS_INFEASIBLE, dim=d, f0=f0, f1=f1, rule=rule,
                              note=AXIOM_RULES.get(rule, ""))
