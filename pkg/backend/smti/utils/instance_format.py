"""
Native text formats (0-based indices throughout).

Instance file::

    #smti-v1
    2
    0 : (1 0)
    1 : (0) (1)
    0 : (0 1)
    1 : (1)

line 1 (after the optional header and '#' comments) is n, then n men lines and
n women lines ``agent : (group) (group) ...``; a group lists partner indices
sharing one rank level, groups ordered best first.

Matching file: one ``man woman`` pair per line; unlisted men are single.
"""
import re
from typing import Iterator, Optional

from smti.core.exceptions import (
    InstanceParseError,
    InvalidInstanceError,
    MatchingParseError,
    NotAcceptableError,
)
from smti.models.enums import Side
from smti.models.instance import AgentId, Instance, Matching

FORMAT_HEADER = "#smti-v1"

_AGENT_LINE = re.compile(r"^([0-9]+)\s*:(.*)$")
_NATURAL = re.compile(r"[0-9]+")
_GROUPS = re.compile(r"^(\s*\([^()]*\))*\s*$")
_GROUP = re.compile(r"\(([^()]*)\)")


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _parse_int(token: str, line: int, what: str, error=InstanceParseError) -> int:
    if not _NATURAL.fullmatch(token):
        raise error(f"expected a non-negative integer for {what}, got {token!r}", line=line)
    return int(token)


def _parse_groups(body: str, n: int, agent: str, line: int) -> list[list[int]]:
    if not _GROUPS.match(body):
        raise InstanceParseError(f"malformed preference list for {agent}", line=line)
    groups: list[list[int]] = []
    seen: set[int] = set()
    for content in _GROUP.findall(body):
        tokens = content.split()
        if not tokens:
            raise InstanceParseError(f"empty tie group in list of {agent}", line=line)
        group = []
        for token in tokens:
            j = _parse_int(token, line, "a partner index")
            if j >= n:
                raise InstanceParseError(f"partner index {j} >= n={n} in list of {agent}", line=line)
            if j in seen:
                raise InstanceParseError(f"duplicate partner {j} in list of {agent}", line=line)
            seen.add(j)
            group.append(j)
        groups.append(group)
    if not groups:
        raise InstanceParseError(f"empty preference list for {agent}", line=line)
    return groups


def parse_instance(text: str) -> Instance:
    lines = list(_content_lines(text))
    if not lines:
        raise InstanceParseError("missing instance size", line=1)
    size_line, size_text = lines[0]
    n = _parse_int(size_text, size_line, "n")
    if n < 1:
        raise InstanceParseError("instance size must be positive", line=size_line)
    if len(lines) - 1 != 2 * n:
        raise InstanceParseError(
            f"expected {2 * n} preference lines for n={n}, found {len(lines) - 1}",
            line=lines[-1][0],
        )

    lists: dict[Side, list[Optional[list[list[int]]]]] = {Side.MAN: [None] * n, Side.WOMAN: [None] * n}
    for k, (number, line) in enumerate(lines[1:]):
        side = Side.MAN if k < n else Side.WOMAN
        match = _AGENT_LINE.match(line)
        if not match:
            raise InstanceParseError(f"expected 'index : (group) ...', got {line!r}", line=number)
        index = int(match.group(1))
        if index >= n:
            raise InstanceParseError(f"{side.value} index {index} >= n={n}", line=number)
        if lists[side][index] is not None:
            raise InstanceParseError(f"{side.value} {index} listed twice", line=number)
        agent = str(AgentId(side, index))
        lists[side][index] = _parse_groups(match.group(2), n, agent, number)

    try:
        return Instance.from_preference_lists(lists[Side.MAN], lists[Side.WOMAN])
    except InvalidInstanceError as exc:
        raise InstanceParseError(exc.message) from exc


def emit_instance(inst: Instance) -> str:
    out = [FORMAT_HEADER, str(inst.n)]
    for side in (Side.MAN, Side.WOMAN):
        for i in range(inst.n):
            groups = inst.preference_list(AgentId(side, i))
            body = " ".join("(" + " ".join(map(str, group)) + ")" for group in groups)
            out.append(f"{i} : {body}")
    return "\n".join(out) + "\n"


def parse_matching(text: str, inst: Instance) -> Matching:
    mu = Matching(inst)
    seen_men: set[int] = set()
    seen_women: set[int] = set()
    for number, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 2:
            raise MatchingParseError(f"expected 'man woman', got {line!r}", line=number)
        x = _parse_int(tokens[0], number, "a man index", MatchingParseError)
        y = _parse_int(tokens[1], number, "a woman index", MatchingParseError)
        if x >= inst.n or y >= inst.n:
            raise MatchingParseError(f"index out of range for n={inst.n}", line=number)
        if x in seen_men:
            raise MatchingParseError(f"man {x} matched twice", line=number)
        if y in seen_women:
            raise MatchingParseError(f"woman {y} matched twice", line=number)
        seen_men.add(x)
        seen_women.add(y)
        try:
            mu.match(x, y)
        except NotAcceptableError as exc:
            raise MatchingParseError(exc.message, line=number) from exc
    return mu


def emit_matching(mu: Matching) -> str:
    return "".join(f"{x} {y}\n" for x, y in mu.pairs())
