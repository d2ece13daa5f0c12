"""Free groups on generators x_1, ..., x_m and the Artin action of braids.

A letter is a nonzero integer: ``+i`` stands for ``x_i`` and ``-i`` for its
inverse.  Words are kept freely reduced at all times.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Sequence


class RankError(ValueError):
    """Raised on generator indices outside 1..m or mismatched ranks."""


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclasses.dataclass(frozen=True)
class FreeWord:
    letters: tuple[int, ...]
    m: int

    def __post_init__(self):
        for a in self.letters:
            if a == 0 or abs(a) > self.m:
                raise RankError(f"letter {a} out of range for rank {self.m}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def identity(cls, m: int) -> FreeWord:
        return cls((), m)

    @classmethod
    def gen(cls, i: int, m: int) -> FreeWord:
        return cls((i,), m)

    def __mul__(self, other: FreeWord) -> FreeWord:
        _check_rank(self, other)
        return FreeWord(self.letters + other.letters, self.m)

    def inverse(self) -> FreeWord:
        return FreeWord(tuple(-a for a in reversed(self.letters)), self.m)

    def __pow__(self, k: int) -> FreeWord:
        base = self if k >= 0 else self.inverse()
        return FreeWord(base.letters * abs(k), self.m)

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sum(self, i: int) -> int:
        return sum((a > 0) - (a < 0) for a in self.letters if abs(a) == i)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{a}" if a > 0 else f"x{-a}'" for a in self.letters)

    @classmethod
    def parse(cls, text: str, m: int) -> FreeWord:
        """Parse whitespace-separated tokens ``x3`` / ``x3'``; ``1`` is the identity."""
        letters = []
        for tok in text.split():
            if tok == "1":
                continue
            inv = tok.endswith("'")
            body = tok[:-1] if inv else tok
            if not body.startswith("x") or not body[1:].isdigit():
                raise ValueError(f"bad free-group token {tok!r}")
            i = int(body[1:])
            letters.append(-i if inv else i)
        return cls(tuple(letters), m)


def _check_rank(a: FreeWord, b: FreeWord) -> None:
    if a.m != b.m:
        raise RankError(f"rank mismatch: {a.m} vs {b.m}")


def free_reduce(letters: Sequence[int], m: int) -> FreeWord:
    return FreeWord(tuple(letters), m)


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    """Return ``a b a^-1 b^-1``."""
    _check_rank(a, b)
    return FreeWord(a.letters + b.letters + a.inverse().letters + b.inverse().letters, a.m)


@dataclasses.dataclass(frozen=True)
class FreeGroupEndo:
    """Endomorphism of F_m given by the images of x_1, ..., x_m."""

    images: tuple[FreeWord, ...]

    def __post_init__(self):
        for w in self.images:
            if w.m != self.m:
                raise RankError("image rank does not match endomorphism rank")

    @property
    def m(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, m: int) -> FreeGroupEndo:
        return cls(tuple(FreeWord.gen(i, m) for i in range(1, m + 1)))

    def apply(self, w: FreeWord) -> FreeWord:
        if w.m != self.m:
            raise RankError(f"rank mismatch: {w.m} vs {self.m}")
        out: list[int] = []
        for a in w.letters:
            img = self.images[abs(a) - 1].letters
            if a < 0:
                img = tuple(-b for b in reversed(img))
            for b in img:
                if out and out[-1] == -b:
                    out.pop()
                else:
                    out.append(b)
        return FreeWord(tuple(out), self.m)

    def then(self, other: FreeGroupEndo) -> FreeGroupEndo:
        """Composite acting as ``self`` first, then ``other``: x -> other(self(x))."""
        return FreeGroupEndo(tuple(other.apply(w) for w in self.images))

    def is_identity(self) -> bool:
        return all(w.letters == (i,) for i, w in enumerate(self.images, start=1))


def _sigma_endo(i: int, sign: int, m: int) -> FreeGroupEndo:
    imgs = list(FreeGroupEndo.identity(m).images)
    xi, xj = FreeWord.gen(i, m), FreeWord.gen(i + 1, m)
    if sign > 0:
        imgs[i - 1] = xi * xj * xi.inverse()
        imgs[i] = xi
    else:
        imgs[i - 1] = xj
        imgs[i] = xj.inverse() * xi * xj
    return FreeGroupEndo(tuple(imgs))


def artin_endo(braid) -> FreeGroupEndo:
    """Artin action of a braid word; the first letter acts first.

    ``braid`` is any object with ``strands`` and ``letters`` (pairs ``(i, sign)``),
    e.g. :class:`brunnian.braid.BraidWord`.
    """
    m = braid.strands
    images = [FreeWord.gen(k, m) for k in range(1, m + 1)]
    for i, sign in braid.letters:
        step = _sigma_endo(i, sign, m)
        images = [step.apply(w) for w in images]
    return FreeGroupEndo(tuple(images))


def is_trivial_braid(braid) -> bool:
    return artin_endo(braid).is_identity()
