"""
SMTI Domain Model

Instances (rank tables with ties and incomplete lists) and matchings over them.
Ranks are stored densely as levels 1..L per agent, 0 meaning "not ranked", so
preference comparisons are single integer comparisons.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from smti.core.exceptions import (
    EmptyPreferenceListError,
    IndexOutOfRangeError,
    InvalidInstanceError,
    NotAcceptableError,
    UnrankedAgentError,
)
from smti.models.enums import Side

UNRANKED = 0


@dataclass(frozen=True, order=True)
class AgentId:
    """A man or a woman of an instance"""
    side: Side
    index: int

    @classmethod
    def man(cls, index: int) -> "AgentId":
        return cls(Side.MAN, index)

    @classmethod
    def woman(cls, index: int) -> "AgentId":
        return cls(Side.WOMAN, index)

    def __str__(self) -> str:
        return f"{self.side.prefix}{self.index}"


def _freeze(table: np.ndarray) -> np.ndarray:
    table.flags.writeable = False
    return table


def _validate_levels(table: np.ndarray, side: Side) -> None:
    """Every row must be nonempty and use the contiguous levels 1..L"""
    for i, row in enumerate(table):
        ranked = row[row != UNRANKED]
        agent = f"{side.prefix}{i}"
        if ranked.size == 0:
            raise EmptyPreferenceListError(agent)
        levels = np.unique(ranked)
        if levels[0] != 1 or levels[-1] != levels.size:
            raise InvalidInstanceError(
                f"Ranks of {agent} are not contiguous levels starting at 1", agent=agent
            )


class Instance:
    """
    An SMTI instance with n men and n women.

    mrank[x, y] is man x's rank for woman y and wrank[y, x] woman y's rank for
    man x; 0 marks an unranked partner. Acceptability is not forced symmetric:
    a pair is usable only when both entries are defined.

    Instances are immutable and safe to share across threads and processes.
    """

    def __init__(self, mrank: Sequence[Sequence[int]] | np.ndarray, wrank: Sequence[Sequence[int]] | np.ndarray):
        m = np.array(mrank, dtype=np.int64)
        w = np.array(wrank, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise InvalidInstanceError(f"mrank must be a nonempty square table, got shape {m.shape}")
        if w.shape != m.shape:
            raise InvalidInstanceError(f"wrank shape {w.shape} does not match mrank shape {m.shape}")
        n = m.shape[0]
        if m.min() < 0 or w.min() < 0 or m.max() > n or w.max() > n:
            raise InvalidInstanceError(f"Ranks must lie in [1, {n}]")
        _validate_levels(m, Side.MAN)
        _validate_levels(w, Side.WOMAN)

        self._n = n
        self._mrank = _freeze(m)
        self._wrank = _freeze(w)
        self._mutual = _freeze((m > 0) & (w.T > 0))

        # Plain-Python views for the scalar hot loops of the solvers
        self._mrank_rows: tuple[tuple[int, ...], ...] = tuple(map(tuple, m.tolist()))
        self._wrank_rows: tuple[tuple[int, ...], ...] = tuple(map(tuple, w.tolist()))
        self._men_candidates = tuple(
            tuple(sorted(np.flatnonzero(self._mutual[x]).tolist(), key=lambda y, x=x: (m[x, y], y)))
            for x in range(n)
        )
        self._women_candidates = tuple(
            tuple(sorted(np.flatnonzero(self._mutual[:, y]).tolist(), key=lambda x, y=y: (w[y, x], x)))
            for y in range(n)
        )

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------

    @classmethod
    def from_preference_lists(
        cls,
        men: Sequence[Sequence[Sequence[int]]],
        women: Sequence[Sequence[Sequence[int]]],
    ) -> "Instance":
        """
        Build an instance from tie-group lists.

        men[x] is man x's list of tie groups ordered from best to worst; every
        group holds women indices sharing one rank level. Same for women.
        """
        n = len(men)
        if len(women) != n:
            raise InvalidInstanceError(f"Got {n} men but {len(women)} women")
        mrank = np.zeros((n, n), dtype=np.int64)
        wrank = np.zeros((n, n), dtype=np.int64)
        for table, lists, side in ((mrank, men, Side.MAN), (wrank, women, Side.WOMAN)):
            for i, groups in enumerate(lists):
                agent = f"{side.prefix}{i}"
                level = 0
                for group in groups:
                    if not group:
                        continue
                    level += 1
                    for j in group:
                        if not 0 <= j < n:
                            raise InvalidInstanceError(
                                f"{agent} ranks {side.other.prefix}{j}, outside [0, {n})", agent=agent
                            )
                        if table[i, j] != UNRANKED:
                            raise InvalidInstanceError(
                                f"{agent} ranks {side.other.prefix}{j} twice", agent=agent
                            )
                        table[i, j] = level
        return cls(mrank, wrank)

    def transposed(self) -> "Instance":
        """The same market with the roles of men and women swapped"""
        return Instance(self._wrank.copy(), self._mrank.copy())

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def mrank(self) -> np.ndarray:
        """Read-only n x n table, rows men, columns women"""
        return self._mrank

    @property
    def wrank(self) -> np.ndarray:
        """Read-only n x n table, rows women, columns men"""
        return self._wrank

    @property
    def mutual(self) -> np.ndarray:
        """Read-only boolean table of mutually acceptable (man, woman) pairs"""
        return self._mutual

    @property
    def mrank_rows(self) -> tuple[tuple[int, ...], ...]:
        return self._mrank_rows

    @property
    def wrank_rows(self) -> tuple[tuple[int, ...], ...]:
        return self._wrank_rows

    def men_candidates(self, x: int) -> tuple[int, ...]:
        """Women mutually acceptable with man x, best rank first, index breaking ties"""
        return self._men_candidates[x]

    def women_candidates(self, y: int) -> tuple[int, ...]:
        """Men mutually acceptable with woman y, best rank first, index breaking ties"""
        return self._women_candidates[y]

    def check_index(self, side: Side, index: int) -> None:
        if not 0 <= index < self._n:
            raise IndexOutOfRangeError(side.value, index, self._n)

    def rank(self, agent: AgentId, other: int) -> Optional[int]:
        """Rank that agent gives to the opposite-sex agent `other`, None if unranked"""
        self.check_index(agent.side, agent.index)
        self.check_index(agent.side.other, other)
        table = self._mrank_rows if agent.side is Side.MAN else self._wrank_rows
        r = table[agent.index][other]
        return r if r != UNRANKED else None

    def preference_list(self, agent: AgentId) -> list[list[int]]:
        """Tie groups of agent's list, best level first"""
        self.check_index(agent.side, agent.index)
        table = self._mrank if agent.side is Side.MAN else self._wrank
        row = table[agent.index]
        return [np.flatnonzero(row == level).tolist() for level in range(1, int(row.max()) + 1)]

    def list_length(self, agent: AgentId) -> int:
        table = self._mrank if agent.side is Side.MAN else self._wrank
        return int(np.count_nonzero(table[agent.index]))

    # ------------------------------------------------------------------
    # Preference semantics
    # ------------------------------------------------------------------

    def acceptable(self, x: int, y: int) -> bool:
        """True iff man x and woman y rank each other"""
        self.check_index(Side.MAN, x)
        self.check_index(Side.WOMAN, y)
        return bool(self._mutual[x, y])

    def at_least_as_good(self, agent: AgentId, candidate: AgentId, reference: AgentId) -> bool:
        """True iff agent ranks candidate at the same level as reference or better"""
        for other in (candidate, reference):
            if other.side is agent.side:
                raise UnrankedAgentError(str(agent), str(other))
        r_candidate = self.rank(agent, candidate.index)
        r_reference = self.rank(agent, reference.index)
        if r_candidate is None:
            raise UnrankedAgentError(str(agent), str(candidate))
        if r_reference is None:
            raise UnrankedAgentError(str(agent), str(reference))
        return r_candidate <= r_reference

    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return bool(
            np.array_equal(self._mrank, other._mrank) and np.array_equal(self._wrank, other._wrank)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Instance(n={self._n}, mutual_pairs={int(self._mutual.sum())})"

    def __getstate__(self) -> dict:
        return {"mrank": self._mrank, "wrank": self._wrank}

    def __setstate__(self, state: dict) -> None:
        self.__init__(state["mrank"].copy(), state["wrank"].copy())


class Matching:
    """
    An injective partial assignment of men to women over one instance.

    Every matched pair is mutually acceptable; match() repairs injectivity by
    first divorcing both agents. A Matching is owned by one solver at a time.
    """

    __slots__ = ("_instance", "_wife", "_husband")

    def __init__(self, instance: Instance, pairs: Iterable[tuple[int, int]] = ()):
        self._instance = instance
        self._wife: list[Optional[int]] = [None] * instance.n
        self._husband: list[Optional[int]] = [None] * instance.n
        for x, y in pairs:
            self.match(x, y)

    @classmethod
    def from_assignment(cls, instance: Instance, assignment: Sequence[Optional[int]]) -> "Matching":
        """Build from a per-man vector of woman indices (None = single)"""
        return cls(instance, ((x, y) for x, y in enumerate(assignment) if y is not None))

    @property
    def instance(self) -> Instance:
        return self._instance

    # ------------------------------------------------------------------
    # Mutators
    # ------------------------------------------------------------------

    def match(self, x: int, y: int) -> None:
        if not self._instance.acceptable(x, y):
            raise NotAcceptableError(x, y)
        if self._wife[x] == y:
            return
        old_wife = self._wife[x]
        if old_wife is not None:
            self._husband[old_wife] = None
        old_husband = self._husband[y]
        if old_husband is not None:
            self._wife[old_husband] = None
        self._wife[x] = y
        self._husband[y] = x

    def unmatch(self, agent: AgentId) -> None:
        """Divorce agent from its partner; no-op when agent is single"""
        self._instance.check_index(agent.side, agent.index)
        if agent.side is Side.MAN:
            y = self._wife[agent.index]
            if y is not None:
                self._husband[y] = None
                self._wife[agent.index] = None
        else:
            x = self._husband[agent.index]
            if x is not None:
                self._wife[x] = None
                self._husband[agent.index] = None

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    def partner_of(self, agent: AgentId) -> Optional[AgentId]:
        self._instance.check_index(agent.side, agent.index)
        if agent.side is Side.MAN:
            y = self._wife[agent.index]
            return AgentId.woman(y) if y is not None else None
        x = self._husband[agent.index]
        return AgentId.man(x) if x is not None else None

    def is_single(self, agent: AgentId) -> bool:
        return self.partner_of(agent) is None

    def wife(self, x: int) -> Optional[int]:
        return self._wife[x]

    def husband(self, y: int) -> Optional[int]:
        return self._husband[y]

    def assignment(self) -> tuple[Optional[int], ...]:
        """Per-man woman index, None for single men"""
        return tuple(self._wife)

    def wife_array(self) -> np.ndarray:
        """Per-man woman index as an int array, -1 for single men"""
        return np.array([-1 if y is None else y for y in self._wife], dtype=np.int64)

    def husband_array(self) -> np.ndarray:
        return np.array([-1 if x is None else x for x in self._husband], dtype=np.int64)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x, y in enumerate(self._wife) if y is not None]

    @property
    def cardinality(self) -> int:
        return sum(y is not None for y in self._wife)

    def single_count(self) -> int:
        """Single men plus single women"""
        return 2 * (self._instance.n - self.cardinality)

    def is_perfect(self) -> bool:
        return self.cardinality == self._instance.n

    def copy(self) -> "Matching":
        clone = Matching.__new__(Matching)
        clone._instance = self._instance
        clone._wife = self._wife.copy()
        clone._husband = self._husband.copy()
        return clone

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matching):
            return NotImplemented
        return self._wife == other._wife

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = ", ".join(f"m{x}-w{y}" for x, y in self.pairs())
        return f"Matching({body})"
