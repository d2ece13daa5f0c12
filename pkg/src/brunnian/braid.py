"""Braid words, pure-braid generators, strand deletion and braid closures."""

from __future__ import annotations

import dataclasses
import re
from typing import Optional

from .freegroup import is_trivial_braid
from .pd import Crossing, PDCode


@dataclasses.dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for i, s in self.letters:
            if not 1 <= i < self.strands or s not in (1, -1):
                raise ValueError(f"bad letter ({i}, {s}) on {self.strands} strands")

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise ValueError(f"strand mismatch: {self.strands} vs {other.strands}")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def is_pure(self) -> bool:
        return permutation_of(self) == tuple(range(1, self.strands + 1))

    def __str__(self) -> str:
        return " ".join(f"s{i}" if s > 0 else f"s{i}'" for i, s in self.letters)


_TOKEN = re.compile(r"^(?:s(\d+)|A\((\d+),(\d+)\))('?)$")


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse ``s2 s1' A(1,3) A(2,3)'`` into a braid word on ``strands`` strands."""
    word = BraidWord(strands)
    for tok in text.replace(", ", ",").split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad braid token {tok!r}")
        inv = m.group(4) == "'"
        if m.group(1) is not None:
            piece = BraidWord(strands, ((int(m.group(1)), -1 if inv else 1),))
        else:
            piece = expand_pure_generator(int(m.group(2)), int(m.group(3)), strands)
            if inv:
                piece = piece.inverse()
        word = word * piece
    return word


def permutation_of(b: BraidWord) -> tuple[int, ...]:
    """Final position of the strand starting at position k, for k = 1..m."""
    where = list(range(1, b.strands + 1))   # where[strand-1] = current position
    at = list(range(1, b.strands + 1))      # at[pos-1] = strand there
    for i, _ in b.letters:
        s, t = at[i - 1], at[i]
        at[i - 1], at[i] = t, s
        where[s - 1], where[t - 1] = i + 1, i
    return tuple(where)


def expand_pure_generator(i: int, j: int, m: int) -> BraidWord:
    """The pure braid generator A(i,j) = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1."""
    if not 1 <= i < j <= m:
        raise ValueError(f"need 1 <= i < j <= m, got A({i},{j}) on {m} strands")
    head = tuple((k, 1) for k in range(j - 1, i, -1))
    tail = tuple((k, -1) for k in range(i + 1, j))
    return BraidWord(m, head + ((i, 1), (i, 1)) + tail)


def delete_strand(b: BraidWord, k: int) -> BraidWord:
    """Remove the strand that starts at position ``k`` and re-index the rest."""
    if not 1 <= k <= b.strands:
        raise ValueError(f"strand {k} out of range 1..{b.strands}")
    if b.strands == 1:
        raise ValueError("cannot delete the only strand")
    pos = k
    out = []
    for i, s in b.letters:
        if pos == i:
            pos = i + 1
        elif pos == i + 1:
            pos = i
        else:
            out.append((i - 1 if i > pos else i, s))
    return BraidWord(b.strands - 1, tuple(out))


@dataclasses.dataclass(frozen=True)
class StringLinkPresentation:
    """A pure braid on n+1 strands presenting an (n+1)-component string link.

    ``brunnian`` is None until checked.
    """

    braid: BraidWord
    n: int
    brunnian: Optional[bool] = None

    def __post_init__(self):
        if self.n < 1 or self.braid.strands != self.n + 1:
            raise ValueError(f"need n >= 1 and n+1 strands, got n={self.n}, {self.braid.strands} strands")
        if not self.braid.is_pure():
            raise ValueError("string link presentations must be pure braids")

    @classmethod
    def from_braid(cls, braid: BraidWord) -> StringLinkPresentation:
        return cls(braid, braid.strands - 1)

    @classmethod
    def identity(cls, n: int) -> StringLinkPresentation:
        return cls(BraidWord(n + 1), n, True)

    def verified(self) -> StringLinkPresentation:
        if self.brunnian is not None:
            return self
        return dataclasses.replace(self, brunnian=is_brunnian(self))

    def inverse(self) -> StringLinkPresentation:
        return StringLinkPresentation(self.braid.inverse(), self.n, self.brunnian)


def is_brunnian(s: StringLinkPresentation | BraidWord) -> bool:
    b = s.braid if isinstance(s, StringLinkPresentation) else s
    if b.strands == 1:
        return True
    return all(is_trivial_braid(delete_strand(b, k)) for k in range(1, b.strands + 1))


def closure_pd(b: BraidWord) -> PDCode:
    """PD code of the closed braid, strands oriented downward.

    A positive letter s_i is a positive crossing: the strand at position i+1
    passes over to position i.
    """
    m = b.strands
    cur = list(range(1, m + 1))
    label = m
    raw = []
    for i, s in b.letters:
        left, right = cur[i - 1], cur[i]
        new_left, new_right = label + 1, label + 2
        label += 2
        if s > 0:
            # under: left -> new_right; over: right -> new_left
            raw.append((1, (left, new_left, new_right, right)))
        else:
            # under: right -> new_left; over: left -> new_right
            raw.append((-1, (right, left, new_left, new_right)))
        cur[i - 1], cur[i] = new_left, new_right
    close = {cur[p]: p + 1 for p in range(m) if cur[p] != p + 1}
    used = []
    for _, arcs in raw:
        for a in arcs:
            a = close.get(a, a)
            if a not in used:
                used.append(a)
    renum = {a: k for k, a in enumerate(sorted(used), start=1)}
    crossings = tuple(
        Crossing(s, tuple(renum[close.get(a, a)] for a in arcs)) for s, arcs in raw
    )
    perm = permutation_of(b)
    seen = set()
    cycles = 0
    for start in range(1, m + 1):
        if start in seen:
            continue
        cycles += 1
        p = start
        while p not in seen:
            seen.add(p)
            p = perm[p - 1]
    return PDCode(cycles, crossings)
