"""
Weak Stability

Blocking-pair detection and enumeration, dominance among blocking pairs, and
the cost functions of the three optimization variants.

Scalar checks (is_blocking) label the blocking case; enumeration runs on a
vectorized mask where a single agent's "current rank" is n + 1, which folds
cases A3a-A3d into two strict comparisons.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from smti.models.enums import BlockingCase, Objective
from smti.models.instance import Instance, Matching


@dataclass(frozen=True, order=True)
class BlockingPair:
    man: int
    woman: int
    case: BlockingCase

    def __str__(self) -> str:
        return f"(m{self.man}, w{self.woman}) {self.case.value}"


def is_blocking(inst: Instance, mu: Matching, x: int, y: int) -> Optional[BlockingPair]:
    """Return the blocking pair (x, y) labelled with its first satisfied case, or None"""
    if not inst.acceptable(x, y):
        return None
    wife = mu.wife(x)
    if wife == y:
        return None
    husband = mu.husband(y)
    man_single = wife is None
    woman_single = husband is None
    man_prefers = not man_single and inst.mrank_rows[x][y] < inst.mrank_rows[x][wife]
    woman_prefers = not woman_single and inst.wrank_rows[y][x] < inst.wrank_rows[y][husband]

    if man_single and woman_single:
        return BlockingPair(x, y, BlockingCase.A3A)
    if man_prefers and woman_single:
        return BlockingPair(x, y, BlockingCase.A3B)
    if woman_prefers and man_single:
        return BlockingPair(x, y, BlockingCase.A3C)
    if man_prefers and woman_prefers:
        return BlockingPair(x, y, BlockingCase.A3D)
    return None


def blocking_mask(inst: Instance, mu: Matching) -> np.ndarray:
    """Boolean n x n table (men x women) of blocking pairs"""
    n = inst.n
    single_rank = n + 1
    mrank = np.where(inst.mrank > 0, inst.mrank, single_rank)
    wrank = np.where(inst.wrank > 0, inst.wrank, single_rank)

    wives = mu.wife_array()
    husbands = mu.husband_array()
    agents = np.arange(n)
    current_m = np.where(wives >= 0, mrank[agents, np.maximum(wives, 0)], single_rank)
    current_w = np.where(husbands >= 0, wrank[agents, np.maximum(husbands, 0)], single_rank)

    man_wants = mrank < current_m[:, None]
    woman_wants = wrank < current_w[:, None]
    return inst.mutual & man_wants & woman_wants.T


def count_blocking_pairs(inst: Instance, mu: Matching) -> int:
    return int(np.count_nonzero(blocking_mask(inst, mu)))


def blocking_pairs(inst: Instance, mu: Matching) -> list[BlockingPair]:
    """All blocking pairs, man-major then woman order"""
    xs, ys = np.nonzero(blocking_mask(inst, mu))
    pairs = []
    for x, y in zip(xs.tolist(), ys.tolist()):
        bp = is_blocking(inst, mu, x, y)
        assert bp is not None, f"mask and scalar check disagree on (m{x}, w{y})"
        pairs.append(bp)
    return pairs


def is_stable(inst: Instance, mu: Matching) -> bool:
    return not blocking_mask(inst, mu).any()


def undominated_blocking_pairs(inst: Instance, mu: Matching) -> list[BlockingPair]:
    """
    Blocking pairs not strictly dominated from the men's point of view, united
    with those not strictly dominated from the women's point of view.

    (m, w) is men-dominated when m has another blocking partner he ranks
    strictly better than w; women-dominance is symmetric. Ties never dominate.
    """
    bps = blocking_pairs(inst, mu)
    if len(bps) <= 1:
        return bps

    best_for_man: dict[int, int] = {}
    best_for_woman: dict[int, int] = {}
    for bp in bps:
        r_m = inst.mrank_rows[bp.man][bp.woman]
        r_w = inst.wrank_rows[bp.woman][bp.man]
        best_for_man[bp.man] = min(best_for_man.get(bp.man, r_m), r_m)
        best_for_woman[bp.woman] = min(best_for_woman.get(bp.woman, r_w), r_w)

    return [
        bp for bp in bps
        if inst.mrank_rows[bp.man][bp.woman] == best_for_man[bp.man]
        or inst.wrank_rows[bp.woman][bp.man] == best_for_woman[bp.woman]
    ]


def rank_sums(inst: Instance, mu: Matching) -> tuple[int, int]:
    """(sum of men's ranks of their wives, sum of women's ranks of their husbands)"""
    men_sum = 0
    women_sum = 0
    for x, y in mu.pairs():
        men_sum += inst.mrank_rows[x][y]
        women_sum += inst.wrank_rows[y][x]
    return men_sum, women_sum


def cost(inst: Instance, mu: Matching, objective: Objective) -> int:
    """
    Objective value of a matching; singles contribute nothing to rank sums.

    MaxCardinality reports |mu| (higher is better); Egalitarian and SexEqual are
    minimized.
    """
    if objective is Objective.MAX_CARDINALITY:
        return mu.cardinality
    men_sum, women_sum = rank_sums(inst, mu)
    if objective is Objective.EGALITARIAN:
        return men_sum + women_sum
    return abs(men_sum - women_sum)


def is_better(objective: Objective, candidate: int, incumbent: Optional[int]) -> bool:
    """Strict improvement of candidate cost over incumbent cost"""
    if incumbent is None:
        return True
    if objective.maximize:
        return candidate > incumbent
    return candidate < incumbent


def eval_ltiu(inst: Instance, mu: Matching) -> int:
    """Single men + single women + blocking pairs"""
    return mu.single_count() + count_blocking_pairs(inst, mu)
