"""
ASP encoding of SMTI for clingo-compatible solvers.

The emitted text is the instance facts followed by the static stability
program and, when an objective is given, that variant's weak constraints.
Men are constants m0..m{n-1}, women w0..w{n-1}.
"""
from typing import Optional

from smti.models.enums import Objective
from smti.models.instance import Instance

STABILITY_PROGRAM = """\
% acceptability
maccept(X,Y) :- mrank(X,Y,R).
waccept(Y,X) :- wrank(Y,X,R).
acceptable(X,Y) :- maccept(X,Y), waccept(Y,X).

% strict preferences
mprefer(X,Y,Y1) :- mrank(X,Y1,R), mrank(X,Y,R1), R > R1.
wprefer(Y,X,X1) :- wrank(Y,X1,R), wrank(Y,X,R1), R > R1.

% matching
{ marry(X,Y) : acceptable(X,Y) } 1 :- man(X).
:- { marry(X,Y) : man(X) } > 1, woman(Y).
msingle(X) :- man(X), { marry(X,Y) : woman(Y) } 0.
wsingle(Y) :- woman(Y), { marry(X,Y) : man(X) } 0.

% no blocking pairs
:- acceptable(X,Y), msingle(X), wsingle(Y).
:- wsingle(Y), marry(X,Y1), mprefer(X,Y,Y1), acceptable(X,Y).
:- msingle(X), marry(X1,Y), wprefer(Y,X,X1), acceptable(X,Y).
:- marry(X,Y1), marry(X1,Y), mprefer(X,Y,Y1), wprefer(Y,X,X1).
"""

WEAK_CONSTRAINTS = {
    Objective.SEX_EQUAL: """\
% sex-equal: minimize |sum of men's ranks - sum of women's ranks|
sexgap(T) :- T = #sum { R1-R2,X,Y : marry(X,Y), mrank(X,Y,R1), wrank(Y,X,R2) }.
:~ sexgap(T), T >= 0. [T@1]
:~ sexgap(T), T < 0. [-T@1]
""",
    Objective.EGALITARIAN: """\
% egalitarian: minimize the sum of ranks of matched agents
:~ marry(X,Y), mrank(X,Y,R1), wrank(Y,X,R2). [R1+R2@1,X,Y]
""",
    Objective.MAX_CARDINALITY: """\
% max cardinality: minimize the number of singles
:~ wsingle(Y). [1@1,w,Y]
:~ msingle(X). [1@1,m,X]
""",
}


def instance_facts(inst: Instance) -> list[str]:
    """man/woman facts, then one rank fact per defined entry (men's lists first)"""
    n = inst.n
    facts = [f"man(m{x})." for x in range(n)]
    facts += [f"woman(w{y})." for y in range(n)]
    for x, row in enumerate(inst.mrank_rows):
        facts += [f"mrank(m{x},w{y},{r})." for y, r in enumerate(row) if r]
    for y, row in enumerate(inst.wrank_rows):
        facts += [f"wrank(w{y},m{x},{r})." for x, r in enumerate(row) if r]
    return facts


def emit_asp(inst: Instance, variant: Optional[Objective] = None) -> str:
    """Facts + program; without a variant the decision version is emitted"""
    parts = [
        f"% SMTI instance, n={inst.n}",
        "\n".join(instance_facts(inst)),
        "",
        STABILITY_PROGRAM.rstrip("\n"),
    ]
    if variant is not None:
        parts += ["", WEAK_CONSTRAINTS[variant].rstrip("\n")]
    parts.append("#show marry/2.")
    return "\n".join(parts) + "\n"
