"""
ILP model of SMTI in LP file format, built with PuLP.

One binary x_i_j per mutually acceptable pair (0-based), a capacity row per
man (cap_m{i}) and per woman (cap_w{j}) that has any variable, and one
stability row per pair:

    stab_i_j:  sum(x_i_q : q at j's level or better for i)
             + sum(x_p_j : p != i at i's level or better for j) >= 1

x_i_j is counted once; over binaries this equals the two-sided row in which
it appears twice. Sex-equal is linearized with a continuous t >= 0: minimize
t subject to t >= d and t >= -d, d being the men's rank sum minus the
women's.
"""
import tempfile
from pathlib import Path

import pulp

from smti.models.enums import Objective
from smti.models.instance import Instance


def build_lp_model(inst: Instance, objective: Objective) -> pulp.LpProblem:
    sense = pulp.LpMaximize if objective.maximize else pulp.LpMinimize
    prob = pulp.LpProblem(f"smti_{objective.value.replace('-', '_')}", sense)
    mrank, wrank = inst.mrank_rows, inst.wrank_rows
    n = inst.n

    pairs = [(i, j) for i in range(n) for j in range(n) if inst.mutual[i, j]]
    x = {(i, j): pulp.LpVariable(f"x_{i}_{j}", cat=pulp.LpBinary) for i, j in pairs}

    if objective is Objective.MAX_CARDINALITY:
        prob += pulp.lpSum(x.values()), "matched_pairs"
    elif objective is Objective.EGALITARIAN:
        prob += pulp.lpSum((mrank[i][j] + wrank[j][i]) * x[i, j] for i, j in pairs), "rank_sum"
    else:
        t = pulp.LpVariable("t", lowBound=0)
        gap = pulp.lpSum((mrank[i][j] - wrank[j][i]) * x[i, j] for i, j in pairs)
        prob += t, "sex_gap"
        prob += t - gap >= 0, "sex_gap_pos"
        prob += t + gap >= 0, "sex_gap_neg"

    for i in range(n):
        row = [x[i, j] for j in inst.men_candidates(i)]
        if row:
            prob += pulp.lpSum(row) <= 1, f"cap_m{i}"
    for j in range(n):
        column = [x[i, j] for i in inst.women_candidates(j)]
        if column:
            prob += pulp.lpSum(column) <= 1, f"cap_w{j}"

    for i, j in pairs:
        women = [x[i, q] for q in inst.men_candidates(i) if mrank[i][q] <= mrank[i][j]]
        men = [x[p, j] for p in inst.women_candidates(j) if p != i and wrank[j][p] <= wrank[j][i]]
        prob += pulp.lpSum(women + men) >= 1, f"stab_{i}_{j}"

    return prob


def emit_lp(inst: Instance, objective: Objective) -> str:
    prob = build_lp_model(inst, objective)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "model.lp"
        prob.writeLP(str(path))
        return path.read_text()
