from enum import Enum


class Side(str, Enum):
    MAN = "man"
    WOMAN = "woman"

    @property
    def other(self) -> "Side":
        return Side.WOMAN if self is Side.MAN else Side.MAN

    @property
    def prefix(self) -> str:
        return "m" if self is Side.MAN else "w"


class Objective(str, Enum):
    """Optimization variant of SMTI"""
    MAX_CARDINALITY = "max-cardinality"
    EGALITARIAN = "egalitarian"
    SEX_EQUAL = "sex-equal"

    @property
    def maximize(self) -> bool:
        return self is Objective.MAX_CARDINALITY


class BlockingCase(str, Enum):
    """Which clause of the blocking condition fired (lowest letter wins)"""
    A3A = "A3a"  # both single
    A3B = "A3b"  # man strictly prefers, woman single
    A3C = "A3c"  # woman strictly prefers, man single
    A3D = "A3d"  # both strictly prefer


class SolverName(str, Enum):
    BRUTE_FORCE = "bf"
    BRANCH_AND_BOUND = "bnb"
    LTIU = "ltiu"
    GENETIC = "ga"
    DEFERRED_ACCEPTANCE = "da"
