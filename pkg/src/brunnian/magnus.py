"""Truncated noncommutative power series over Z and the Magnus expansion."""

from __future__ import annotations

from collections import defaultdict
from typing import Mapping, Sequence

from .freegroup import FreeWord


class NCPoly:
    """Integer power series in noncommuting X_1..X_m, truncated above degree ``d``.

    Monomials are tuples of generator indices; absent monomials are zero.
    """

    __slots__ = ("m", "d", "coeffs")

    def __init__(self, m: int, d: int, coeffs: Mapping[tuple[int, ...], int] | None = None):
        self.m = m
        self.d = d
        self.coeffs = {}
        for w, c in (coeffs or {}).items():
            if len(w) > d:
                raise ValueError(f"monomial {w} exceeds cutoff {d}")
            if any(not 1 <= i <= m for i in w):
                raise ValueError(f"monomial {w} out of rank {m}")
            if c:
                self.coeffs[tuple(w)] = c

    @classmethod
    def one(cls, m: int, d: int) -> NCPoly:
        return cls(m, d, {(): 1})

    @classmethod
    def var(cls, i: int, m: int, d: int) -> NCPoly:
        return cls(m, d, {(i,): 1} if d >= 1 else {})

    def _check(self, other: NCPoly) -> None:
        if (self.m, self.d) != (other.m, other.d):
            raise ValueError(f"rank/cutoff mismatch: {(self.m, self.d)} vs {(other.m, other.d)}")

    def __add__(self, other: NCPoly) -> NCPoly:
        self._check(other)
        out = defaultdict(int, self.coeffs)
        for w, c in other.coeffs.items():
            out[w] += c
        return NCPoly(self.m, self.d, out)

    def __neg__(self) -> NCPoly:
        return NCPoly(self.m, self.d, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: NCPoly) -> NCPoly:
        return self + (-other)

    def __mul__(self, other: NCPoly) -> NCPoly:
        return nc_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self.m, self.d, self.coeffs) == (other.m, other.d, other.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for w in sorted(self.coeffs, key=lambda w: (len(w), w)):
            mono = "".join(f"X{i}" for i in w) or "1"
            terms.append(f"{self.coeffs[w]:+d}*{mono}")
        return " ".join(terms)

    def coefficient(self, index: Sequence[int]) -> int:
        index = tuple(index)
        if len(index) > self.d:
            raise ValueError(f"index of length {len(index)} exceeds cutoff {self.d}")
        return self.coeffs.get(index, 0)


def nc_mul(p: NCPoly, q: NCPoly) -> NCPoly:
    p._check(q)
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for u, a in p.coeffs.items():
        room = p.d - len(u)
        for v, b in q.coeffs.items():
            if len(v) <= room:
                out[u + v] += a * b
    return NCPoly(p.m, p.d, out)


def _times_letter(coeffs: dict, letter: int, d: int) -> dict:
    # right-multiply by the expansion of x_i (letter > 0) or x_i^-1 (letter < 0)
    i = abs(letter)
    out = defaultdict(int, coeffs)
    if letter > 0:
        for w, c in coeffs.items():
            if len(w) < d:
                out[w + (i,)] += c
    else:
        # 1 - X + X^2 - ...
        for w, c in coeffs.items():
            tail = (i,)
            sign = -1
            while len(w) + len(tail) <= d:
                out[w + tail] += sign * c
                tail += (i,)
                sign = -sign
    return {w: c for w, c in out.items() if c}


def magnus_expand(w: FreeWord, d: int) -> NCPoly:
    """Magnus expansion x_i -> 1 + X_i, truncated above degree ``d``."""
    if d < 1:
        raise ValueError("cutoff must be at least 1")
    coeffs = {(): 1}
    for a in w.letters:
        coeffs = _times_letter(coeffs, a, d)
    return NCPoly(w.m, d, coeffs)


def coefficient(p: NCPoly, index: Sequence[int]) -> int:
    return p.coefficient(index)


def reduced_mul(p: Mapping[tuple, int], q: Mapping[tuple, int], d: int) -> dict[tuple, int]:
    """Product in Z<X>/(monomials with a repeated letter), truncated above degree d.

    The quotient map from the full series ring is an algebra homomorphism, so
    coefficients of non-repeating monomials can be computed entirely here.
    """
    out: dict[tuple, int] = defaultdict(int)
    for u, a in p.items():
        su = set(u)
        room = d - len(u)
        for v, b in q.items():
            if len(v) <= room and su.isdisjoint(v):
                out[u + v] += a * b
    return {w: c for w, c in out.items() if c}
