"""Milnor's string links, stacking, closures and test families of Brunnian links."""

from __future__ import annotations

import dataclasses
import random
import re
from typing import Iterable, Sequence

from .braid import BraidWord, StringLinkPresentation, closure_pd, expand_pure_generator
from .milnor import mu_sigma_all
from .pd import PDCode
from .treealg import Perm, TreeVector, check_perm, parse_perm, perm_text, perms


class NotBrunnianConstruction(RuntimeError):
    """A construction that should preserve Brunnian-ness produced a non-Brunnian braid."""


def _comm(a: BraidWord, b: BraidWord) -> BraidWord:
    return a * b * a.inverse() * b.inverse()


# Candidate realisations of the comb t_sigma as a commutator in the free
# subgroup generated by A(1,n+1), ..., A(n,n+1).  The first one passing the
# duality check is used; see calibrate().
def _right_normed(gens: Sequence[BraidWord]) -> BraidWord:
    w = gens[-1]
    for g in reversed(gens[:-1]):
        w = _comm(g, w)
    return w


def _left_normed(gens: Sequence[BraidWord]) -> BraidWord:
    w = gens[0]
    for g in gens[1:]:
        w = _comm(w, g)
    return w


def _right_normed_swapped(gens: Sequence[BraidWord]) -> BraidWord:
    w = gens[-1]
    for g in reversed(gens[:-1]):
        w = _comm(w, g)
    return w


BRACKETINGS = {
    "right": _right_normed,
    "left": _left_normed,
    "right-swapped": _right_normed_swapped,
}
CONVENTION = ("right", 1)


def _build(n: int, sigma: Perm, bracketing: str, orientation: int) -> BraidWord:
    m = n + 1
    gens = [expand_pure_generator(k, m, m) for k in sigma] + [expand_pure_generator(n, m, m)]
    if orientation < 0:
        gens = [g.inverse() for g in gens]
    return BRACKETINGS[bracketing](gens)


def calibrate(ns: Iterable[int] = (2, 3)) -> list[tuple[str, int]]:
    """Bracketing/orientation choices whose duality matrix is the identity for every n in ``ns``."""
    good = []
    for name in BRACKETINGS:
        for orientation in (1, -1):
            ok = True
            for n in ns:
                basis = perms(n)
                for tau in basis:
                    row = mu_sigma_all(_build(n, tau, name, orientation))
                    if any(row[s] != int(s == tau) for s in basis):
                        ok = False
            if ok:
                good.append((name, orientation))
    return good


def milnor_string_link(n: int, sigma: Sequence[int] = ()) -> StringLinkPresentation:
    """beta_sigma: strand n+1 runs around the others along an iterated commutator."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return StringLinkPresentation(expand_pure_generator(1, 2, 2), 1).verified()
    sigma = check_perm(sigma, n)
    s = StringLinkPresentation(_build(n, sigma, *CONVENTION), n).verified()
    if not s.brunnian:
        raise NotBrunnianConstruction(f"beta_{perm_text(sigma)} failed the Brunnian check")
    return s


def stack(a: StringLinkPresentation, b: StringLinkPresentation, verify: bool = True) -> StringLinkPresentation:
    if a.n != b.n:
        raise ValueError(f"cannot stack string links with {a.n + 1} and {b.n + 1} strands")
    s = StringLinkPresentation(a.braid * b.braid, a.n)
    return s.verified() if verify else s


def closure(s: StringLinkPresentation) -> PDCode:
    return closure_pd(s.braid)


def scheme_family(n: int, sigma: Sequence[int], sigma2: Sequence[int]):
    """The four string links (U, beta_s, beta_s', beta_s beta_s') realising
    [U; T_s, T~_s'] once closed; alternating signs +, -, -, +."""
    b1 = milnor_string_link(n, sigma)
    b2 = milnor_string_link(n, sigma2)
    return (StringLinkPresentation.identity(n), b1, b2, stack(b1, b2, verify=False))


def scheme_family_pd(n: int, sigma: Sequence[int], sigma2: Sequence[int]) -> tuple[PDCode, ...]:
    return tuple(closure(s) for s in scheme_family(n, sigma, sigma2))


def random_pure_braid(m: int, length: int, rng: random.Random) -> BraidWord:
    gens = [(i, j) for i in range(1, m) for j in range(i + 1, m + 1)]
    w = BraidWord(m)
    for _ in range(length):
        g = expand_pure_generator(*rng.choice(gens), m)
        w = w * (g if rng.random() < 0.5 else g.inverse())
    return w


@dataclasses.dataclass(frozen=True)
class FamilyEntry:
    label: str
    link: StringLinkPresentation
    pd: PDCode
    milnor: TreeVector


@dataclasses.dataclass
class LinkFamily:
    n: int
    entries: list[FamilyEntry] = dataclasses.field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def add(self, label: str, s: StringLinkPresentation) -> FamilyEntry:
        s = s.verified()
        if not s.brunnian:
            raise NotBrunnianConstruction(f"family entry {label!r} is not Brunnian")
        pd = closure(s)
        if pd.components != self.n + 1:
            raise NotBrunnianConstruction(f"family entry {label!r} has {pd.components} components")
        vec = TreeVector.from_mapping(self.n, mu_sigma_all(s)) if self.n >= 1 else None
        e = FamilyEntry(label, s, pd, vec)
        self.entries.append(e)
        return e


class FamilySpecError(ValueError):
    pass


def _power(n: int, sigma: Perm, k: int) -> StringLinkPresentation:
    base = milnor_string_link(n, sigma)
    return StringLinkPresentation(base.braid ** k, n)


def _perm(text: str, n: int) -> Perm:
    try:
        return parse_perm(text, n)
    except ValueError as exc:
        raise FamilySpecError(str(exc)) from exc


def family_generators(n: int, spec: Sequence[str] | str) -> LinkFamily:
    """Build a family from items of the family grammar:

    ``unlink``, ``powers:<sigma>:<kmin>..<kmax>``, ``mix:<s1>^<k1>,<s2>^<k2>,...``,
    ``conj:<sigma>:<seed>:<len>`` (g beta g^-1 for a random pure braid g with
    ``len`` generators), ``cancel:<sigma>:<seed>:<len>`` (beta g beta^-1 g^-1).
    Items may be separated by ';' or given as a list.
    """
    if isinstance(spec, str):
        spec = [item for item in re.split(r"[;\s]+", spec) if item]
    fam = LinkFamily(n)
    m = n + 1
    for item in spec:
        kind, _, rest = item.partition(":")
        if kind == "unlink" and not rest:
            fam.add("unlink", StringLinkPresentation.identity(n))
        elif kind == "powers":
            parts = rest.split(":")
            if len(parts) != 2 or ".." not in parts[1]:
                raise FamilySpecError(f"bad powers item {item!r}")
            sigma = _perm(parts[0], n)
            lo, _, hi = parts[1].partition("..")
            try:
                kmin, kmax = int(lo), int(hi)
            except ValueError as exc:
                raise FamilySpecError(f"bad range in {item!r}") from exc
            for k in range(kmin, kmax + 1):
                fam.add(f"powers:{perm_text(sigma)}^{k}", _power(n, sigma, k))
        elif kind == "mix":
            braid = BraidWord(m)
            pieces = re.findall(r"([0-9]+)\^(-?\d+)", rest)
            if not pieces or "".join(f"{a}^{b}," for a, b in pieces).rstrip(",") != rest.replace(" ", ""):
                raise FamilySpecError(f"bad mix item {item!r}")
            for stext, ktext in pieces:
                braid = braid * _power(n, _perm(stext, n), int(ktext)).braid
            fam.add(f"mix:{rest}", StringLinkPresentation(braid, n))
        elif kind in ("conj", "cancel"):
            parts = rest.split(":")
            if len(parts) != 3:
                raise FamilySpecError(f"bad {kind} item {item!r}")
            sigma = _perm(parts[0], n)
            try:
                seed, length = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise FamilySpecError(f"bad seed/length in {item!r}") from exc
            g = random_pure_braid(m, length, random.Random(seed))
            beta = milnor_string_link(n, sigma).braid
            if kind == "conj":
                braid = g * beta * g.inverse()
            else:
                braid = beta * g * beta.inverse() * g.inverse()
            fam.add(item, StringLinkPresentation(braid, n))
        else:
            raise FamilySpecError(f"unknown family item {item!r}")
    return fam
