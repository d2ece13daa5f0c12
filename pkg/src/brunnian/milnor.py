"""Milnor invariants of string links presented as pure braids.

The longitude of strand j is read off the Artin action,
``phi(x_j) = l_j x_j l_j^-1``, and mu(i_1 .. i_k; j) is the coefficient of
X_{i_1} ... X_{i_k} in the Magnus expansion of l_j.  Only non-repeating
indices are supported.
"""

from __future__ import annotations

from typing import Sequence

from .braid import StringLinkPresentation
from .freegroup import FreeWord, artin_endo
from .magnus import magnus_expand, reduced_mul
from .treealg import Perm, TreeVector, check_perm, perms


class MilnorIndexError(ValueError):
    """Repeated or out-of-range Milnor index: refused rather than reduced."""


class NotBrunnianError(ValueError):
    pass


def _braid(s):
    return s.braid if isinstance(s, StringLinkPresentation) else s


def longitude(s: StringLinkPresentation, j: int) -> FreeWord:
    b = _braid(s)
    m = b.strands
    if not 1 <= j <= m:
        raise ValueError(f"strand {j} out of range 1..{m}")
    img = artin_endo(b).images[j - 1].letters
    half, rem = divmod(len(img), 2)
    if rem != 1 or img[half] != j or img[half + 1:] != tuple(-a for a in reversed(img[:half])):
        raise RuntimeError(f"image of x{j} is not a conjugate of x{j}; braid is not pure?")
    w = FreeWord(img[:half], m)
    return w * FreeWord.gen(j, m) ** (-w.exponent_sum(j))


def longitudes(s: StringLinkPresentation) -> list[FreeWord]:
    b = _braid(s)
    return [longitude(b, j) for j in range(1, b.strands + 1)]


def _check_index(index: Sequence[int], m: int) -> tuple[int, ...]:
    index = tuple(index)
    if len(index) < 2:
        raise MilnorIndexError("a Milnor index needs at least two entries")
    if len(set(index)) != len(index):
        raise MilnorIndexError(f"repeated indices in {index}: only non-repeating invariants are defined here")
    if any(not 1 <= i <= m for i in index):
        raise MilnorIndexError(f"index {index} out of range 1..{m}")
    return index


def _conjugator_series(b, j: int, head: tuple[int, ...]) -> dict[tuple, int]:
    """Reduced Magnus series of a conjugator w with phi(x_j) = w x_j w^-1.

    Letters are prepended from the end of the word, so the images of the
    suffix braid update by products of at most three earlier images.  Only
    generators in ``head`` survive (the rest map to 1), and monomials with a
    repeated letter are dropped; both quotients are ring maps, so the
    coefficients of non-repeating words in ``head`` are exact.
    """
    d = len(head)
    keep = set(head)

    def gen(p: int, sign: int) -> dict[tuple, int]:
        return {(): 1, (p,): sign} if p in keep else {(): 1}

    m = b.strands
    # state per generator: (series of w, series of w^-1, p) with psi(x_i) = w x_p w^-1
    state = [({(): 1}, {(): 1}, i) for i in range(1, m + 1)]
    for k, sign in reversed(b.letters):
        wa, ia, pa = state[k - 1]
        wb, ib, pb = state[k]
        if sign > 0:
            w = reduced_mul(reduced_mul(reduced_mul(wa, gen(pa, 1), d), ia, d), wb, d)
            winv = reduced_mul(reduced_mul(reduced_mul(ib, wa, d), gen(pa, -1), d), ia, d)
            state[k - 1] = (w, winv, pb)
            state[k] = (wa, ia, pa)
        else:
            w = reduced_mul(reduced_mul(reduced_mul(wb, gen(pb, -1), d), ib, d), wa, d)
            winv = reduced_mul(reduced_mul(reduced_mul(ia, wb, d), gen(pb, 1), d), ib, d)
            state[k - 1] = (wb, ib, pb)
            state[k] = (w, winv, pa)
    w, _, p = state[j - 1]
    if p != j:
        raise ValueError("strand does not return to its own position; braid is not pure")
    return w


def mu(s: StringLinkPresentation, index: Sequence[int]) -> int:
    """mu(i_1, ..., i_k, j): the last entry names the longitude."""
    b = _braid(s)
    index = _check_index(index, b.strands)
    *head, j = index
    head = tuple(head)
    return _conjugator_series(b, j, head).get(head, 0)


def mu_from_longitude(s: StringLinkPresentation, index: Sequence[int]) -> int:
    """Same value as :func:`mu`, through the word-level longitude (slow)."""
    b = _braid(s)
    index = _check_index(index, b.strands)
    *head, j = index
    return magnus_expand(longitude(b, j), len(head)).coefficient(head)


def mu_sigma(s: StringLinkPresentation, sigma: Sequence[int]) -> int:
    b = _braid(s)
    n = b.strands - 1
    sigma = check_perm(sigma, n)
    return mu(b, sigma + (n, n + 1))


def mu_sigma_all(s: StringLinkPresentation) -> dict[Perm, int]:
    """All mu_sigma at once from one series of the last conjugator."""
    b = _braid(s)
    n = b.strands - 1
    series = _conjugator_series(b, n + 1, tuple(range(1, n + 1)))
    return {sigma: series.get(sigma + (n,), 0) for sigma in perms(n)}


def milnor_vector(s: StringLinkPresentation) -> TreeVector:
    if not isinstance(s, StringLinkPresentation):
        raise TypeError("milnor_vector needs a StringLinkPresentation")
    if s.verified().brunnian is not True:
        raise NotBrunnianError("milnor_vector needs a verified Brunnian string link")
    return TreeVector.from_mapping(s.n, mu_sigma_all(s))
