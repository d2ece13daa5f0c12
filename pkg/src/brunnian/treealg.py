"""Labeled unitrivalent trees modulo AS and IHX, and the comb basis.

A degree-n tree is stored rooted at its leaf n+1: every internal vertex
becomes an ordered pair ``(left, right)`` whose cyclic order is
``(parent, left, right)``.  Under this encoding a tree is a multilinear Lie
monomial in x_1..x_n, AS is antisymmetry of the bracket and IHX is the
Jacobi identity.  The comb ``t_sigma`` is the right-normed bracket
``[s1, [s2, ..., [s_{n-1}, n]]]``.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Bracket = Union[int, tuple]
Perm = tuple[int, ...]


def perms(n: int) -> list[Perm]:
    """S_{n-1} in lexicographic order of one-line notation."""
    return list(itertools.permutations(range(1, n)))


def check_perm(sigma: Sequence[int], n: int) -> Perm:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, n)):
        raise ValueError(f"{sigma} is not a permutation of 1..{n - 1}")
    return sigma


def perm_text(sigma: Perm) -> str:
    return "".join(map(str, sigma)) if all(k <= 9 for k in sigma) else ",".join(map(str, sigma))


def parse_perm(text: str, n: int) -> Perm:
    text = text.strip()
    if n == 1 and text in ("", "()", "e", "id"):
        return ()
    if "," in text:
        items = [int(t) for t in text.split(",") if t.strip()]
    elif text.isdigit():
        items = [int(ch) for ch in text]
    else:
        raise ValueError(f"bad permutation {text!r}")
    return check_perm(items, n)


def _leaves(b: Bracket) -> Iterator[int]:
    if isinstance(b, int):
        yield b
    else:
        for part in b:
            yield from _leaves(part)


def _fmt(b: Bracket) -> str:
    return str(b) if isinstance(b, int) else f"({_fmt(b[0])} {_fmt(b[1])})"


@dataclasses.dataclass(frozen=True)
class LabeledTree:
    n: int
    bracket: Bracket

    def __post_init__(self):
        labels = sorted(_leaves(self.bracket))
        if labels != list(range(1, self.n + 1)):
            raise ValueError(f"tree leaves {labels} must be exactly 1..{self.n} below root {self.n + 1}")
        for sub in _internal(self.bracket):
            if len(sub) != 2:
                raise ValueError("internal vertices must be trivalent")

    def __str__(self) -> str:
        return f"({self.n + 1} {_fmt(self.bracket)})"

    def flip(self, path: str = "") -> LabeledTree:
        """AS move: reverse the cyclic order at the vertex reached by ``path``
        (a string of 'L'/'R' steps from the root)."""
        return LabeledTree(self.n, _flip(self.bracket, path))

    def edge_count(self) -> int:
        return 2 * self.n - 1


def _internal(b: Bracket) -> Iterator[tuple]:
    if not isinstance(b, int):
        yield b
        for part in b:
            yield from _internal(part)


def _flip(b: Bracket, path: str) -> Bracket:
    if isinstance(b, int):
        raise ValueError("AS path ends at a leaf")
    if not path:
        return (b[1], b[0])
    if path[0] == "L":
        return (_flip(b[0], path[1:]), b[1])
    return (b[0], _flip(b[1], path[1:]))


# -- parsing --------------------------------------------------------------

def _tokens(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _nest(tokens: list[str]):
    def walk(pos: int):
        if tokens[pos] == "(":
            items = []
            pos += 1
            while pos < len(tokens) and tokens[pos] != ")":
                item, pos = walk(pos)
                items.append(item)
            if pos >= len(tokens):
                raise ValueError("unbalanced parentheses")
            return items, pos + 1
        if tokens[pos] == ")":
            raise ValueError("unexpected ')'")
        if not tokens[pos].isdigit():
            raise ValueError(f"bad leaf label {tokens[pos]!r}")
        return int(tokens[pos]), pos + 1

    if not tokens:
        raise ValueError("empty tree text")
    tree, end = walk(0)
    if end != len(tokens):
        raise ValueError("trailing tokens after tree")
    return tree


def parse_tree(text: str) -> LabeledTree:
    """Parse the nested-list tree grammar, e.g. ``(1 (2 (3 4)))``.

    A top-level pair is an edge joining its two parts, a top-level triple a
    trivalent vertex; every nested list is a trivalent vertex whose cyclic
    order is (parent edge, first, second).
    """
    raw = _nest(_tokens(text))
    if isinstance(raw, int) or len(raw) not in (2, 3):
        raise ValueError("top level must be an edge (A B) or a vertex (A B C)")

    order: dict = {}
    counter = itertools.count()
    leaves: dict[int, object] = {}

    def vid(node):
        if isinstance(node, int):
            return ("L", node)
        if len(node) != 2:
            raise ValueError("nested vertices must have exactly two children")
        return ("V", next(counter))

    def build(node, me, parent):
        if isinstance(node, int):
            if node in leaves:
                raise ValueError(f"duplicate leaf label {node}")
            leaves[node] = parent
            return
        kids = [vid(c) for c in node]
        order[me] = (parent, kids[0], kids[1])
        for c, k in zip(node, kids):
            build(c, k, me)

    if len(raw) == 2:
        a, b = raw
        ia = vid(a)
        build(a, ia, None)          # parent patched below
        ib = vid(b)
        build(b, ib, ia)
        if isinstance(a, int):
            leaves[a] = ib
        else:
            order[ia] = (ib,) + order[ia][1:]
    else:
        root = ("V", next(counter))
        kids = []
        for c in raw:
            k = vid(c)
            kids.append(k)
            build(c, k, root)
        order[root] = tuple(kids)

    labels = sorted(leaves)
    n = len(labels) - 1
    if n < 1 or labels != list(range(1, n + 2)):
        raise ValueError(f"leaf labels must be exactly 1..{n + 1}, got {labels}")

    def rooted(v, parent) -> Bracket:
        if v[0] == "L":
            return v[1]
        cyc = order[v]
        k = cyc.index(parent)
        _, a, b = cyc[k:] + cyc[:k]
        return (rooted(a, v), rooted(b, v))

    top = ("L", n + 1)
    return LabeledTree(n, rooted(leaves[n + 1], top))


# -- basis and reduction --------------------------------------------------

def comb_bracket(sigma: Sequence[int], n: int) -> Bracket:
    b: Bracket = n
    for k in reversed(tuple(sigma)):
        b = (k, b)
    return b


def comb_basis_tree(n: int, sigma: Sequence[int]) -> LabeledTree:
    return LabeledTree(n, comb_bracket(check_perm(sigma, n), n))


@dataclasses.dataclass(frozen=True)
class TreeVector:
    n: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != math.factorial(self.n - 1):
            raise ValueError(f"a vector in T_{self.n + 1} needs {(math.factorial(self.n - 1))} coordinates")

    @classmethod
    def zero(cls, n: int) -> TreeVector:
        return cls(n, (0,) * math.factorial(n - 1))

    @classmethod
    def unit(cls, n: int, sigma: Sequence[int]) -> TreeVector:
        idx = perms(n).index(check_perm(sigma, n))
        return cls(n, tuple(int(k == idx) for k in range(math.factorial(n - 1))))

    @classmethod
    def from_mapping(cls, n: int, values: Mapping[Perm, int]) -> TreeVector:
        return cls(n, tuple(values.get(s, 0) for s in perms(n)))

    def __getitem__(self, sigma: Sequence[int]) -> int:
        return self.coords[perms(self.n).index(tuple(sigma))]

    def as_dict(self) -> dict[Perm, int]:
        return dict(zip(perms(self.n), self.coords))

    def __add__(self, other: TreeVector) -> TreeVector:
        if self.n != other.n:
            raise ValueError("degree mismatch")
        return TreeVector(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> TreeVector:
        return TreeVector(self.n, tuple(-a for a in self.coords))

    def __sub__(self, other: TreeVector) -> TreeVector:
        return self + (-other)

    def __rmul__(self, k: int) -> TreeVector:
        return TreeVector(self.n, tuple(k * a for a in self.coords))

    def to_json(self) -> dict:
        return {"n": self.n, "coords": {perm_text(s): c for s, c in self.as_dict().items()}}


def _contains(b: Bracket, leaf: int) -> bool:
    return leaf in _leaves(b)


def _reduce_outer(b: Bracket, n: int) -> dict[Perm, int]:
    """Slide the bracket at the root toward the spine first (outermost IHX)."""
    if b == n:
        return {(): 1}
    left, right = b
    sign = 1
    if _contains(left, n):
        left, right, sign = right, left, -1
    out: dict[Perm, int] = defaultdict(int)
    if isinstance(left, int):
        for k, c in _reduce_outer(right, n).items():
            out[(left,) + k] += sign * c
    else:
        a1, a2 = left
        for k, c in _reduce_outer((a1, (a2, right)), n).items():
            out[k] += sign * c
        for k, c in _reduce_outer((a2, (a1, right)), n).items():
            out[k] -= sign * c
    return out


def _attach(a: Bracket, combs: Mapping[Perm, int]) -> dict[Perm, int]:
    # [a, sum c_k comb_k] as combs; a does not contain the spine leaf
    out: dict[Perm, int] = defaultdict(int)
    if isinstance(a, int):
        for k, c in combs.items():
            out[(a,) + k] += c
        return out
    a1, a2 = a
    for k, c in _attach(a1, _attach(a2, combs)).items():
        out[k] += c
    for k, c in _attach(a2, _attach(a1, combs)).items():
        out[k] -= c
    return out


def _reduce_inner(b: Bracket, n: int) -> dict[Perm, int]:
    """Normalise the spine-side subtree first, then attach the other branch."""
    if b == n:
        return {(): 1}
    left, right = b
    sign = 1
    if _contains(left, n):
        left, right, sign = right, left, -1
    inner = _reduce_inner(right, n)
    return {k: sign * c for k, c in _attach(left, inner).items()}


_STRATEGIES = {"outer": _reduce_outer, "inner": _reduce_inner}

TreeLike = Union[LabeledTree, Iterable[tuple[int, LabeledTree]], Mapping[LabeledTree, int]]


def reduce_to_basis(t: TreeLike, strategy: str = "outer") -> TreeVector:
    """Expand a tree, or an integer combination of trees, in the comb basis."""
    fn = _STRATEGIES[strategy]
    if isinstance(t, LabeledTree):
        terms = [(1, t)]
    elif isinstance(t, Mapping):
        terms = [(c, tree) for tree, c in t.items()]
    else:
        terms = list(t)
    if not terms:
        raise ValueError("empty combination: degree unknown")
    n = terms[0][1].n
    acc: dict[Perm, int] = defaultdict(int)
    for c, tree in terms:
        if tree.n != n:
            raise ValueError("all trees in a combination must have the same degree")
        for k, v in fn(tree.bracket, n).items():
            acc[k] += c * v
    return TreeVector.from_mapping(n, acc)


def expansion_coordinates(t: LabeledTree) -> TreeVector:
    """Independent check of :func:`reduce_to_basis`.

    Expands the bracket into the free associative algebra; the coordinate of
    ``t_sigma`` is the coefficient of the word ``sigma + (n,)``, since that is
    the only word ending in ``n`` in the expansion of the comb.
    """
    def expand(b: Bracket) -> dict[tuple, int]:
        if isinstance(b, int):
            return {(b,): 1}
        p, q = expand(b[0]), expand(b[1])
        out: dict[tuple, int] = defaultdict(int)
        for u, a in p.items():
            for v, c in q.items():
                out[u + v] += a * c
                out[v + u] -= a * c
        return out

    words = expand(t.bracket)
    n = t.n
    return TreeVector(n, tuple(words.get(s + (n,), 0) for s in perms(n)))


def _brackets(labels: tuple[int, ...]) -> Iterator[Bracket]:
    if len(labels) == 1:
        yield labels[0]
        return
    first, rest = labels[0], labels[1:]
    # ordered splits (L, R), both nonempty
    for r in range(0, len(rest) + 1):
        for chosen in itertools.combinations(rest, r):
            left = (first,) + chosen
            right = tuple(x for x in rest if x not in chosen)
            if not right:
                continue
            for lb in _brackets(left):
                for rb in _brackets(right):
                    yield (lb, rb)
                    yield (rb, lb)


def all_trees(n: int) -> list[LabeledTree]:
    """Every vertex-oriented labeled tree of degree n (each exactly once)."""
    return [LabeledTree(n, b) for b in _brackets(tuple(range(1, n + 1)))]


# -- the half-square lattice ----------------------------------------------

@dataclasses.dataclass(frozen=True)
class SymSquareVector:
    """Element of the lattice spanned by (1/2) t_s^2 and t_s t_s'.

    ``diag[i]`` multiplies (1/2) t_i^2 and ``off[(i, j)]`` (i < j) multiplies
    t_i t_j, indices referring to :func:`perms` order.
    """

    n: int
    diag: tuple[int, ...]
    off: tuple[tuple[tuple[int, int], int], ...]

    def flat(self) -> tuple[int, ...]:
        k = len(self.diag)
        offd = dict(self.off)
        return self.diag + tuple(offd.get((i, j), 0) for i in range(k) for j in range(i + 1, k))

    def __add__(self, other: SymSquareVector) -> SymSquareVector:
        a, b = dict(self.off), dict(other.off)
        keys = sorted(set(a) | set(b))
        return SymSquareVector(
            self.n,
            tuple(x + y for x, y in zip(self.diag, other.diag)),
            tuple((k, a.get(k, 0) + b.get(k, 0)) for k in keys),
        )

    def __neg__(self) -> SymSquareVector:
        return SymSquareVector(self.n, tuple(-x for x in self.diag), tuple((k, -v) for k, v in self.off))

    def __sub__(self, other: SymSquareVector) -> SymSquareVector:
        return self + (-other)


def sym_square(x: TreeVector) -> SymSquareVector:
    """q(x) = x^2 / 2 in the lattice basis."""
    c = x.coords
    k = len(c)
    diag = tuple(v * v for v in c)
    off = tuple(((i, j), c[i] * c[j]) for i in range(k) for j in range(i + 1, k))
    return SymSquareVector(x.n, diag, off)


def sym_square_rank(n: int) -> int:
    k = math.factorial(n - 1)
    return k * (k + 1) // 2


def integer_rank(rows: Iterable[Sequence[int]]) -> int:
    """Exact rank over Q of an integer matrix given by rows."""
    mat = [[Fraction(v) for v in r] for r in rows]
    if not mat:
        return 0
    rank = 0
    ncols = len(mat[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / p[col]
                mat[r] = [a - f * b for a, b in zip(mat[r], p)]
        rank += 1
    return rank
