"""Conway polynomials of closed braids via Seifert matrices.

The Seifert surface of a closed braid has one disk per strand position and
one half-twisted band per letter.  For every column i (letters s_i^{+-1})
consecutive bands k, k+1 bound a loop through disks i and i+1; these loops
form a basis of H_1 of the surface when every column is used.  Otherwise the
closure is split and nabla = 0.

nabla(z) = det(s^-1 V - s V^T) with s = t^(1/2) and z = s - s^-1.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, Sequence

import numpy as np

from .braid import BraidWord, closure_pd, parse_braid
from .pd import PDCode


@dataclasses.dataclass(frozen=True)
class ConwayPoly:
    coeffs: tuple[int, ...]   # a_0, a_1, ... with trailing zeros stripped

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def support_ok(self, components: int) -> bool:
        """a_k = 0 unless k >= m-1 and k = m-1 mod 2."""
        return all(
            c == 0 or (k >= components - 1 and (k - components + 1) % 2 == 0)
            for k, c in enumerate(self.coeffs)
        )

    def __str__(self) -> str:
        terms = [f"{c}*z^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


@dataclasses.dataclass(frozen=True)
class SeifertMatrix:
    matrix: tuple[tuple[int, ...], ...]
    braid: BraidWord
    connected: bool = True

    @property
    def size(self) -> int:
        return len(self.matrix)


@dataclasses.dataclass(frozen=True)
class _Loop:
    column: int
    top: int       # word position of the upper band
    bottom: int    # word position of the lower band
    top_sign: int
    bottom_sign: int


def seifert_matrix(b: BraidWord) -> SeifertMatrix:
    cols: dict[int, list[tuple[int, int]]] = {i: [] for i in range(1, b.strands)}
    for pos, (i, s) in enumerate(b.letters):
        cols[i].append((pos, s))
    connected = all(cols[i] for i in cols)
    loops = []
    for i in range(1, b.strands):
        bands = cols[i]
        for (p, sp), (q, sq) in zip(bands, bands[1:]):
            loops.append(_Loop(i, p, q, sp, sq))
    size = len(loops)
    v = [[0] * size for _ in range(size)]
    for x, a in enumerate(loops):
        v[x][x] = -(a.top_sign + a.bottom_sign) // 2
        for y, c in enumerate(loops):
            if c.column == a.column and c.top == a.bottom:
                # consecutive loops sharing one band
                if a.bottom_sign > 0:
                    v[x][y] = 1
                else:
                    v[y][x] = -1
            elif c.column == a.column + 1:
                # interleaved loops of neighbouring columns cross once in disk i+1
                if a.top < c.top < a.bottom < c.bottom:
                    v[x][y] = -1
                elif c.top < a.top < c.bottom < a.bottom:
                    v[x][y] = 1
    return SeifertMatrix(tuple(tuple(r) for r in v), b, connected)


# -- exact determinant of V - t V^T ---------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7):   # deterministic below 3.2e9
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes(count: int) -> list[int]:
    out = []
    p = 2**31 - 1
    while len(out) < count:
        if _is_prime(p):
            out.append(p)
        p -= 2
    return out


def _det_mod(mat: np.ndarray, p: int) -> int:
    a = mat.copy()
    n = a.shape[0]
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            a[[c, r]] = a[[r, c]]
            det = -det
        piv = int(a[c, c])
        det = det * piv % p
        inv = pow(piv, p - 2, p)
        f = a[c + 1:, c] * inv % p
        a[c + 1:, :] = (a[c + 1:, :] - f[:, None] * a[c, :]) % p
    return det % p


def _interpolate_mod(ys: Sequence[int], p: int) -> list[int]:
    # Newton form on nodes 0..N, then expand to monomial coefficients
    n = len(ys)
    coef = [y % p for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(j, p - 2, p) % p
    poly = [0] * n
    for k in range(n - 1, -1, -1):
        # poly = poly * (t - k) + coef[k]
        nxt = [0] * n
        for d in range(n - 1):
            nxt[d + 1] = (nxt[d + 1] + poly[d]) % p
        for d in range(n):
            nxt[d] = (nxt[d] - k * poly[d]) % p
        nxt[0] = (nxt[0] + coef[k]) % p
        poly = nxt
    return poly


def alexander_determinant(v: Sequence[Sequence[int]]) -> list[int]:
    """Integer coefficients of det(V - t V^T), lowest degree first."""
    size = len(v)
    if size == 0:
        return [1]
    vm = np.array(v, dtype=object)
    # Hadamard bound on |det| over |t| = 1 bounds every coefficient.
    log_bound = sum(
        0.5 * math.log2(max(1, sum((abs(v[i][j]) + abs(v[j][i])) ** 2 for j in range(size))))
        for i in range(size)
    )
    need_bits = log_bound + 2
    primes = []
    bits = 0.0
    for p in _primes(int(need_bits // 30) + 2):
        primes.append(p)
        bits += math.log2(p)
        if bits > need_bits:
            break
    residues = []
    for p in primes:
        base = np.array(vm % p, dtype=np.int64)
        tr = np.array(vm.T % p, dtype=np.int64)
        ys = [_det_mod((base - t * tr) % p, p) for t in range(size + 1)]
        residues.append(_interpolate_mod(ys, p))
    modulus = 1
    acc = [0] * (size + 1)
    for p, res in zip(primes, residues):
        # CRT step
        inv = pow(modulus, -1, p)
        acc = [a + modulus * ((r - a) * inv % p) for a, r in zip(acc, res)]
        modulus *= p
    return [a - modulus if a > modulus // 2 else a for a in acc]


def _to_z(laurent: dict[int, int]) -> list[int]:
    """Rewrite a symmetric Laurent polynomial in s as a polynomial in z = s - 1/s."""
    poly = {k: c for k, c in laurent.items() if c}
    out: dict[int, int] = {}
    while poly:
        top = max(poly)
        if top < 0:
            raise ArithmeticError("Laurent polynomial is not in the image of z = s - 1/s")
        c = poly[top]
        out[top] = c
        for j in range(top + 1):
            k = top - 2 * j
            poly[k] = poly.get(k, 0) - c * math.comb(top, j) * (-1) ** j
            if poly[k] == 0:
                del poly[k]
    if not out:
        return []
    return [out.get(k, 0) for k in range(max(out) + 1)]


def conway(b: BraidWord) -> ConwayPoly:
    sm = seifert_matrix(b)
    if not sm.connected:
        return ConwayPoly(())
    size = sm.size
    # det(s^-1 V - s V^T) = s^-size det(V - s^2 V^T)
    coeffs = alexander_determinant(sm.matrix)
    laurent = {2 * k - size: c for k, c in enumerate(coeffs)}
    return ConwayPoly(tuple(_to_z(laurent)))


# -- finite-type functionals ------------------------------------------------

@dataclasses.dataclass(frozen=True)
class InvariantFunctional:
    """A Z-valued link invariant evaluated on closed braids."""

    name: str
    degree: int
    evaluate: Callable[[BraidWord], int]

    def __call__(self, b: BraidWord) -> int:
        return self.evaluate(b)


def coeff_invariant(k: int, conway_fn: Callable[[BraidWord], ConwayPoly] = conway) -> InvariantFunctional:
    """L -> a_k(nabla(L)), a finite-type invariant of degree k."""
    if k < 0:
        raise ValueError("coefficient index must be nonnegative")
    return InvariantFunctional(f"conway:a{k}", k, lambda b: conway_fn(b)[k])


def constant_invariant(value: int = 0) -> InvariantFunctional:
    return InvariantFunctional(f"const:{value}", 0, lambda b: value)


def invariant_by_name(name: str) -> InvariantFunctional:
    if name.startswith("conway:a") and name[8:].isdigit():
        return coeff_invariant(int(name[8:]))
    if name.startswith("const:"):
        return constant_invariant(int(name[6:]))
    raise ValueError(f"unknown invariant {name!r}; expected conway:a<k> or const:<v>")


def conway_of_pd(pd: PDCode) -> ConwayPoly:
    from .skein import conway_skein
    return ConwayPoly(conway_skein(pd))


__all__ = [
    "ConwayPoly", "SeifertMatrix", "InvariantFunctional", "seifert_matrix", "conway",
    "coeff_invariant", "constant_invariant", "invariant_by_name", "alexander_determinant",
    "closure_pd", "parse_braid",
]
