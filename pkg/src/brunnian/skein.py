"""Conway polynomial of a PD code by skein recursion.

This is the slow, independent oracle for the Seifert-matrix route in
:mod:`brunnian.polyinv`.  Each diagram is driven to a descending diagram
(a split unlink) by switching the crossings first met from below, using
nabla(L+) - nabla(L-) = z nabla(L0); the smoothings have one crossing
fewer and are memoised on a relabelling-invariant key.
"""

from __future__ import annotations

from collections import defaultdict

from .pd import PDCode

Xing = tuple[int, tuple[int, int, int, int]]


class CrossingLimitExceeded(ValueError):
    pass


def _add(p: list[int], q, scale: int = 1, shift: int = 0) -> list[int]:
    need = len(q) + shift
    if len(p) < need:
        p.extend([0] * (need - len(p)))
    for k, c in enumerate(q):
        p[k + shift] += scale * c
    return p


def _trim(p) -> tuple[int, ...]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _over(x: Xing) -> tuple[int, int]:
    s, (a, b, c, d) = x
    return (d, b) if s > 0 else (b, d)


def _succ(xs: list[Xing]) -> dict[int, tuple[int, int, bool]]:
    # arc -> (crossing index, outgoing arc, arrived as under)
    out = {}
    for k, x in enumerate(xs):
        a, _, c, _ = x[1]
        out[a] = (k, c, True)
        i, o = _over(x)
        out[i] = (k, o, False)
    return out


def _is_split(xs: list[Xing]) -> bool:
    parent = list(range(len(xs)))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    seen: dict[int, int] = {}
    for k, (_, arcs) in enumerate(xs):
        for a in arcs:
            if a in seen:
                parent[find(k)] = find(seen[a])
            else:
                seen[a] = k
    return len({find(k) for k in range(len(xs))}) > 1


def _components(xs: list[Xing]) -> int:
    succ = _succ(xs)
    seen: set[int] = set()
    count = 0
    for a in succ:
        if a in seen:
            continue
        count += 1
        while a not in seen:
            seen.add(a)
            a = succ[a][1]
    return count


def _walk(xs: list[Xing], start: int) -> list[int]:
    """Arcs in visiting order: the component of ``start``, then further
    components entered through crossings already met."""
    succ = _succ(xs)
    order: list[int] = []
    seen: set[int] = set()
    pending = [start]
    while pending:
        a = pending.pop(0)
        if a in seen:
            continue
        while a not in seen:
            seen.add(a)
            order.append(a)
            k, nxt, _ = succ[a]
            a_in, _, _, _ = xs[k][1]
            o_in, _ = _over(xs[k])
            for other in (a_in, o_in):
                if other not in seen:
                    pending.append(other)
            a = nxt
    return order


def _key(xs: list[Xing], free: int):
    best = None
    for start in sorted(_succ(xs)):
        order = _walk(xs, start)
        relabel = {a: k for k, a in enumerate(order)}
        enc = tuple(sorted((s, tuple(relabel[a] for a in arcs)) for s, arcs in xs))
        if best is None or enc < best:
            best = enc
    return (free, best)


def _smooth(xs: list[Xing], k: int) -> tuple[list[Xing], int]:
    s, (a, b, c, d) = xs[k]
    over_in, over_out = _over(xs[k])
    parent: dict[int, int] = {}

    def find(u):
        while parent.get(u, u) != u:
            u = parent[u]
        return u

    for u, v in ((a, over_out), (over_in, c)):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
    rest = [(sx, tuple(find(y) for y in arcs)) for j, (sx, arcs) in enumerate(xs) if j != k]
    used = {y for _, arcs in rest for y in arcs}
    loops = {find(y) for y in (a, b, c, d)} - used
    return rest, len(loops)


def _switch(x: Xing) -> Xing:
    s, (a, b, c, d) = x
    return (-s, (d, a, b, c)) if s > 0 else (-s, (b, c, d, a))


def _nabla(xs: list[Xing], free: int, memo: dict) -> tuple[int, ...]:
    if not xs:
        return (1,) if free == 1 else ()
    comps = _components(xs) + free
    if free and comps > 1:
        return ()
    if _is_split(xs):
        return ()
    key = _key(xs, free)
    if key in memo:
        return memo[key]

    # basepoints: the canonical walk from the smallest arc
    order = _walk(xs, min(_succ(xs)))
    succ = _succ(xs)
    met: set[int] = set()
    bad = []
    for a in order:
        k, _, under = succ[a]
        if k not in met:
            met.add(k)
            if under:
                bad.append(k)

    cur = list(xs)
    total: list[int] = []
    for k in bad:
        eps = cur[k][0]
        rest, loops = _smooth(cur, k)
        _add(total, _nabla(rest, free + loops, memo), scale=eps, shift=1)
        cur[k] = _switch(cur[k])
    if comps == 1:
        _add(total, (1,))
    result = _trim(total)
    memo[key] = result
    return result


def conway_skein(pd: PDCode, crossing_limit: int = 16) -> tuple[int, ...]:
    """Conway coefficients ``(a_0, a_1, ...)`` of the link, by skein recursion."""
    if len(pd.crossings) > crossing_limit:
        raise CrossingLimitExceeded(f"{len(pd.crossings)} crossings exceed the limit {crossing_limit}")
    xs = [(x.sign, tuple(x.arcs)) for x in pd.crossings]
    return _nabla(xs, pd.free_loops(), {})
