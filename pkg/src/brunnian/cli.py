"""Command-line front end.

Every command prints JSON on stdout (a small table with ``--pretty``).
Exit codes: 0 success, 1 verification failure, 2 input error, 3 refusal.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import tempfile
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .braid import closure_pd, is_brunnian, parse_braid
from .generators import NotBrunnianConstruction, family_generators, milnor_string_link
from .milnor import MilnorIndexError, NotBrunnianError, mu
from .pd import PDCode
from .polyinv import ConwayPoly, coeff_invariant, conway, invariant_by_name
from .quadratic import OddBracketError, ParityError, fit_coefficients, verify_eq8, vanishing_check
from .skein import CrossingLimitExceeded, conway_skein
from .treealg import comb_basis_tree, parse_perm, parse_tree, perm_text, perms, reduce_to_basis

CACHE_ENV = "BRUNNIAN_CACHE_DIR"
ALGORITHM = "seifert-det"

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2, 3


class CacheMismatch(RuntimeError):
    pass


class ConwayCache:
    """Content-addressed store of Conway polynomials of closed braids.

    One JSON file per key; writes go to a temporary file in the same
    directory and are renamed into place, so concurrent writers never leave
    a torn entry behind.
    """

    def __init__(self, root: Optional[Path], verify_rate: float = 0.0, seed: int = 0):
        self.root = Path(root) if root else None
        self.verify_rate = verify_rate
        self.rng = random.Random(seed)
        self.hits = 0
        self.misses = 0
        if self.root:
            self.root.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def key(braid, invariant: str = "conway") -> str:
        payload = json.dumps([braid.strands, str(braid), invariant, ALGORITHM, __version__])
        return hashlib.sha256(payload.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def conway(self, braid) -> ConwayPoly:
        if self.root is None:
            return conway(braid)
        key = self.key(braid)
        path = self._path(key)
        try:
            entry = json.loads(path.read_text())
        except (OSError, ValueError):
            entry = None
        if entry is not None:
            self.hits += 1
            poly = ConwayPoly(tuple(entry["value"]))
            if self.verify_rate and self.rng.random() < self.verify_rate:
                fresh = conway(braid)
                if fresh != poly:
                    raise CacheMismatch(f"cache entry {key} disagrees with recomputation")
            return poly
        self.misses += 1
        poly = conway(braid)
        entry = {"key": key, "value": poly.to_json(), "timestamp": time.time()}
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(entry, fh)
        os.replace(tmp, path)
        return poly


def _emit(args, data, pretty_lines=None) -> None:
    if args.pretty and pretty_lines is not None:
        print("\n".join(pretty_lines))
    else:
        print(json.dumps(data, sort_keys=True))


def _cache(args) -> ConwayCache:
    root = None if args.no_cache else (args.cache_dir or os.environ.get(CACHE_ENV))
    return ConwayCache(root, args.verify_cache, args.seed)


def _index(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad index list {text!r}") from exc


def cmd_mu(args) -> int:
    b = parse_braid(args.braid, args.strands)
    value = mu(b, _index(args.index))
    _emit(args, value, [f"mu({args.index}) = {value}"])
    return EXIT_OK


def cmd_conway(args) -> int:
    if args.pd:
        pd = PDCode.loads(Path(args.pd).read_text())
        poly = ConwayPoly(conway_skein(pd, args.crossing_limit))
    else:
        b = parse_braid(args.braid, args.strands)
        if args.algorithm == "skein":
            poly = ConwayPoly(conway_skein(closure_pd(b), args.crossing_limit))
        else:
            poly = _cache(args).conway(b)
    _emit(args, poly.to_json(), [str(poly)])
    return EXIT_OK


def cmd_milnor_link(args) -> int:
    sigma = parse_perm(args.sigma, args.n)
    s = milnor_string_link(args.n, sigma)
    data = {"n": args.n, "sigma": perm_text(sigma), "strands": args.n + 1, "braid": str(s.braid)}
    if args.pd_out:
        data["pd"] = closure_pd(s.braid).to_json()
    _emit(args, data, [str(s.braid)])
    return EXIT_OK


def cmd_basis(args) -> int:
    order = perms(args.n)
    data = [{"sigma": perm_text(s), "tree": str(comb_basis_tree(args.n, s))} for s in order]
    _emit(args, data, [f"{d['sigma'] or 'id'}\t{d['tree']}" for d in data])
    return EXIT_OK


def cmd_tree_reduce(args) -> int:
    tree = parse_tree(args.tree)
    vec = reduce_to_basis(tree, args.strategy)
    _emit(args, vec.to_json(), [f"{perm_text(s) or 'id'}\t{c}" for s, c in vec.as_dict().items()])
    return EXIT_OK


def cmd_brunnian_check(args) -> int:
    b = parse_braid(args.braid, args.strands)
    pure = b.is_pure()
    result = pure and is_brunnian(b)
    _emit(args, {"pure": pure, "brunnian": result}, [f"pure={pure} brunnian={result}"])
    return EXIT_OK if result else EXIT_FAIL


def _default_degrees(n: int) -> list[int]:
    return list(range(n, 2 * n, 2))


def cmd_verify(args) -> int:
    f = invariant_by_name(args.invariant)
    cache = _cache(args)
    if f.name.startswith("conway:a"):
        f = coeff_invariant(f.degree, cache.conway)
    family = family_generators(args.n, args.family)
    try:
        matrix = fit_coefficients(f, args.n)
    except OddBracketError as exc:
        print(json.dumps({"error": str(exc), "diagnostics": exc.diagnostics}, sort_keys=True), file=sys.stderr)
        return EXIT_FAIL
    report = verify_eq8(f, args.n, family, matrix, args.family)
    if args.degrees is None:
        degrees = _default_degrees(args.n)
    else:
        degrees = _index(args.degrees) if args.degrees else []
    vanish = vanishing_check(args.n, family, degrees, cache.conway, args.family) if degrees else None
    data = report.to_json()
    if vanish is not None:
        data["vanishing"] = vanish.to_json()
    text = json.dumps(data, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    ok = report.ok and (vanish is None or vanish.ok)
    if args.pretty:
        lines = [f"{'label':28} {'f(L)-f(U)':>10} {'predicted':>10}  match"]
        for r in report.rows:
            diff = "error" if r.f is None else r.f - r.f_unlink
            lines.append(f"{r.label:28} {diff:>10} {r.predicted:>10}  {r.match}")
        if vanish is not None:
            lines.append(f"vanishing {vanish.invariant}: {vanish.passed} pass, {vanish.failed} fail")
        lines.append(f"summary: {report.passed} pass, {report.failed} fail")
        print("\n".join(lines))
    elif not args.out:
        print(text)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--cache-dir", help=f"Conway cache directory (default ${CACHE_ENV})")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--verify-cache", type=float, default=0.0, metavar="RATE",
                        help="recompute this fraction of cache hits and compare")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="brunnian", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("mu", parents=[common], help="Milnor invariant of a pure braid")
    c.add_argument("--strands", type=int, required=True)
    c.add_argument("--braid", required=True)
    c.add_argument("--index", required=True, help="comma-separated, last entry is the longitude")
    c.set_defaults(func=cmd_mu)

    c = sub.add_parser("conway", parents=[common], help="Conway polynomial of a closed braid or PD file")
    c.add_argument("--strands", type=int)
    c.add_argument("--braid", default="")
    c.add_argument("--pd", help="PD JSON file (skein algorithm)")
    c.add_argument("--algorithm", choices=["seifert", "skein"], default="seifert")
    c.add_argument("--crossing-limit", type=int, default=16)
    c.set_defaults(func=cmd_conway)

    c = sub.add_parser("milnor-link", parents=[common], help="braid word of beta_sigma")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--sigma", default="")
    c.add_argument("--pd-out", action="store_true", help="include the closure PD code")
    c.set_defaults(func=cmd_milnor_link)

    c = sub.add_parser("basis", parents=[common], help="order on S_{n-1} and the comb trees")
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_basis)

    c = sub.add_parser("tree-reduce", parents=[common], help="expand a labeled tree in the comb basis")
    c.add_argument("tree")
    c.add_argument("--strategy", choices=["outer", "inner"], default="outer")
    c.set_defaults(func=cmd_tree_reduce)

    c = sub.add_parser("brunnian-check", parents=[common], help="strand-deletion Brunnian test")
    c.add_argument("--strands", type=int, required=True)
    c.add_argument("--braid", required=True)
    c.set_defaults(func=cmd_brunnian_check)

    c = sub.add_parser("verify", parents=[common], help="fit and check the quadratic law on a family")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--invariant", required=True, help="conway:a<k> or const:<v>")
    c.add_argument("--family", required=True, help="items separated by ';'")
    c.add_argument("--degrees", help="vanishing degrees, comma-separated (default all admissible)")
    c.add_argument("--out", help="write the report JSON here")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command == "conway" and not args.pd and args.strands is None:
        print("error: conway needs --strands with --braid, or --pd", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (MilnorIndexError, NotBrunnianError, ParityError, CrossingLimitExceeded, NotBrunnianConstruction) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except CacheMismatch as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
