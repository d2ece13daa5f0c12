"""Quadratic-form coefficients of a finite-type invariant on Brunnian links.

For a Z-valued invariant f of degree 2n, f(L) - f(U) on (n+1)-component
Brunnian links is a quadratic form in the Milnor invariants mu_sigma.  The
coefficients come from forest-scheme brackets, which here are alternating
sums of f over the closures of U, beta_s, beta_s' and beta_s beta_s'.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Iterable, Optional, Sequence

from .braid import BraidWord, StringLinkPresentation, closure_pd
from .generators import LinkFamily, scheme_family
from .polyinv import InvariantFunctional, coeff_invariant, conway
from .treealg import Perm, perm_text, perms


class OddBracketError(ArithmeticError):
    """A diagonal bracket came out odd, so half of it is not an integer."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


class ParityError(ValueError):
    pass


def _unlink(n: int) -> BraidWord:
    return StringLinkPresentation.identity(n).braid


def bracket_value(f: InvariantFunctional, n: int, sigma: Sequence[int], sigma2: Sequence[int]) -> int:
    """f(U) - f(L_s) - f(L_s') + f(closure(beta_s beta_s'))."""
    u, a, b, ab = scheme_family(n, sigma, sigma2)
    return f(u.braid) - f(a.braid) - f(b.braid) + f(ab.braid)


def _odd_diagnostics(f: InvariantFunctional, n: int, sigma: Perm) -> dict:
    from .skein import CrossingLimitExceeded, conway_skein

    out = {"invariant": f.name, "n": n, "sigma": perm_text(sigma), "links": []}
    for s in scheme_family(n, sigma, sigma):
        pd = closure_pd(s.braid)
        try:
            skein = list(conway_skein(pd))
        except CrossingLimitExceeded:
            skein = None
        out["links"].append({
            "braid": str(s.braid),
            "pd": pd.to_json(),
            "conway_seifert": conway(s.braid).to_json(),
            "conway_skein": skein,
        })
    return out


@dataclasses.dataclass(frozen=True)
class QuadraticFormMatrix:
    n: int
    order: tuple[Perm, ...]
    entries: tuple[tuple[int, ...], ...]   # upper triangular in ``order``
    invariant: str = ""
    calibration: int = 0                   # f(L_id) - f(U)

    def __post_init__(self):
        k = len(self.order)
        if len(self.entries) != k or any(len(r) != k for r in self.entries):
            raise ValueError("matrix shape does not match the permutation order")
        if any(self.entries[i][j] for i in range(k) for j in range(i)):
            raise ValueError("entries below the diagonal must be zero")

    def coefficient(self, sigma: Sequence[int], sigma2: Sequence[int]) -> int:
        i, j = self.order.index(tuple(sigma)), self.order.index(tuple(sigma2))
        return self.entries[i][j]

    def evaluate(self, mu: dict[Perm, int]) -> int:
        """sum over s <= s' of f_{s,s'} mu_s mu_s'."""
        total = 0
        for i, s in enumerate(self.order):
            for j in range(i, len(self.order)):
                total += self.entries[i][j] * mu.get(s, 0) * mu.get(self.order[j], 0)
        return total

    def to_json(self) -> dict:
        return {
            f"{perm_text(s)},{perm_text(t)}": self.entries[i][j]
            for i, s in enumerate(self.order)
            for j, t in enumerate(self.order)
            if j >= i
        }

    @classmethod
    def zero(cls, n: int, invariant: str = "") -> QuadraticFormMatrix:
        order = tuple(perms(n))
        k = len(order)
        return cls(n, order, tuple((0,) * k for _ in range(k)), invariant)


def fit_coefficients(f: InvariantFunctional, n: int) -> QuadraticFormMatrix:
    order = tuple(perms(n))
    k = len(order)
    rows = [[0] * k for _ in range(k)]
    for i, s in enumerate(order):
        for j in range(i, k):
            value = bracket_value(f, n, s, order[j])
            if i == j:
                if value % 2:
                    raise OddBracketError(
                        f"bracket [U; T_{perm_text(s)}, T_{perm_text(s)}] = {value} is odd for {f.name}",
                        _odd_diagnostics(f, n, s),
                    )
                value //= 2
            rows[i][j] = value
    u = _unlink(n)
    first = scheme_family(n, order[0], order[0])[1]
    calibration = f(first.braid) - f(u)
    return QuadraticFormMatrix(n, order, tuple(tuple(r) for r in rows), f.name, calibration)


@dataclasses.dataclass
class ReportRow:
    label: str
    mu: dict[str, int]
    f: Optional[int]
    f_unlink: int
    predicted: int
    match: bool
    error: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "mu": self.mu,
            "f": self.f,
            "f_unlink": self.f_unlink,
            "predicted": self.predicted,
            "match": self.match,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclasses.dataclass
class VerificationReport:
    invariant: str
    n: int
    order: list[str]
    coefficients: dict[str, int]
    rows: list[ReportRow]
    calibration: Optional[int] = None
    family_spec: str = ""

    @property
    def passed(self) -> int:
        return sum(r.match for r in self.rows)

    @property
    def failed(self) -> int:
        return len(self.rows) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "invariant": self.invariant,
            "n": self.n,
            "order": self.order,
            "coefficients": self.coefficients,
            "rows": [r.to_json() for r in self.rows],
            "summary": {
                "pass": self.passed,
                "fail": self.failed,
                "incomplete": sum(r.error is not None for r in self.rows),
                "calibration": self.calibration,
                "family": self.family_spec,
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _mu_json(entry) -> dict[str, int]:
    return {perm_text(s): v for s, v in entry.milnor.as_dict().items()}


def verify_eq8(f: InvariantFunctional, n: int, family: LinkFamily,
               matrix: Optional[QuadraticFormMatrix] = None, family_spec: str = "") -> VerificationReport:
    """Check f(L) - f(U) = sum f_{s,s'} mu_s(L) mu_s'(L) on every family member."""
    if family.n != n:
        raise ValueError(f"family is for n={family.n}, not n={n}")
    if matrix is None:
        matrix = fit_coefficients(f, n)
    fu = f(_unlink(n))
    rows = []
    for e in family:
        mu = e.milnor.as_dict()
        predicted = matrix.evaluate(mu)
        try:
            value = f(e.link.braid)
        except Exception as exc:   # the row is kept and marked, not dropped
            rows.append(ReportRow(e.label, _mu_json(e), None, fu, predicted, False, repr(exc)))
            continue
        rows.append(ReportRow(e.label, _mu_json(e), value, fu, predicted, value - fu == predicted))
    return VerificationReport(
        f.name, n, [perm_text(s) for s in matrix.order], matrix.to_json(), rows,
        matrix.calibration, family_spec,
    )


def check_degree(n: int, d: int) -> None:
    """Reject degrees whose Conway coefficient vanishes on every (n+1)-component link."""
    if d >= 2 * n:
        raise ParityError(f"degree {d} is not below 2n = {2 * n}")
    if d < n or (d - n) % 2:
        raise ParityError(f"a_{d} vanishes identically on {n + 1}-component links")


def vanishing_check(n: int, family: LinkFamily, degrees: Iterable[int], conway_fn=conway,
                    family_spec: str = "") -> VerificationReport:
    """a_d(L) = a_d(U) for every member and every listed degree d < 2n."""
    degrees = list(degrees)
    for d in degrees:
        check_degree(n, d)
    u = _unlink(n)
    cu = conway_fn(u)
    rows = []
    for e in family:
        c = conway_fn(e.link.braid)
        for d in degrees:
            rows.append(ReportRow(f"{e.label}@a{d}", _mu_json(e), c[d], cu[d], 0, c[d] == cu[d]))
    name = ",".join(coeff_invariant(d).name for d in degrees)
    return VerificationReport(name, n, [perm_text(s) for s in perms(n)], {}, rows, None, family_spec)
