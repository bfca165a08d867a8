"""Backtracking searches for embeddings and isomorphisms of small semigroups.

Candidates are pruned by the (index, period) profile of elements, which any
embedding preserves and reflects, and isomorphism search additionally
prefilters on idempotent counts and the Green class-size profile.
"""
from __future__ import annotations

from .errors import CapExceededError
from .green import green_classes
from .semigroups import FiniteSemigroup, Morphism

ISO_CAP_DEFAULT = 24


def span(s: FiniteSemigroup, seed) -> set[int]:
    """Indices of the subsemigroup generated by the seed set."""
    out = set(seed)
    frontier = list(out)
    while frontier:
        nxt = []
        for x in frontier:
            for g in list(out):
                for p in (s.table[x][g], s.table[g][x]):
                    if p not in out:
                        out.add(p)
                        nxt.append(p)
        frontier = nxt
    return out


def generating_sequence(s: FiniteSemigroup, known=()) -> list[int]:
    """Greedy generators: smallest missing element until everything is spanned."""
    gens: list[int] = []
    have = span(s, known) if known else set()
    while len(have) < s.size:
        g = min(i for i in range(s.size) if i not in have)
        gens.append(g)
        have = span(s, list(known) + gens)
    return gens


class _TargetProfile:
    """Caches (index, period) signatures of target elements under a product fn."""

    def __init__(self, mul):
        self.mul = mul
        self._sig = {}

    def signature(self, x):
        if x not in self._sig:
            seen = {x: 1}
            acc = x
            p = 1
            while True:
                acc = self.mul(acc, x)
                p += 1
                if acc in seen:
                    m = seen[acc]
                    self._sig[x] = (m, p - m)
                    break
                seen[acc] = p
        return self._sig[x]


def _propagate(s: FiniteSemigroup, known: dict, target_mul, inv_map, target_inv):
    """Close a partial assignment under products (and inverses when given).

    Returns the extended dict or None on conflict/injectivity failure.
    """
    known = dict(known)
    table = s.table
    dirty = True
    while dirty:
        dirty = False
        items = list(known.items())
        for i, xi in items:
            for j, xj in items:
                k = table[i][j]
                val = target_mul(xi, xj)
                if k in known:
                    if known[k] != val:
                        return None
                else:
                    known[k] = val
                    dirty = True
        if inv_map is not None and target_inv is not None:
            for i, xi in list(known.items()):
                k = inv_map[i]
                val = target_inv(xi)
                if k in known:
                    if known[k] != val:
                        return None
                elif val is not None:
                    known[k] = val
                    dirty = True
    if len(set(known.values())) != len(known):
        return None
    return known


def iter_embeddings(
    source: FiniteSemigroup,
    target_elements,
    target_mul,
    *,
    forced: dict | None = None,
    inverse_mode: bool = False,
    target_inverse=None,
):
    """Yield injective homomorphisms ``source -> target`` extending ``forced``,
    as dicts source index -> target element, in deterministic order."""
    inv_map = source.inverse_map() if inverse_mode else None
    if inverse_mode and inv_map is None:
        raise ValueError("inverse_mode requires an inverse source semigroup")
    profile = _TargetProfile(target_mul)
    target_elements = list(target_elements)

    base = _propagate(source, forced or {}, target_mul, inv_map, target_inverse)
    if base is None:
        return
    gens = generating_sequence(source, known=base.keys())

    candidate_pool: dict[int, list] = {}
    for g in gens:
        sig = source.element_order(g)
        idem = source.table[g][g] == g
        pool = []
        for e in target_elements:
            if profile.signature(e) != sig:
                continue
            if idem and target_mul(e, e) != e:
                continue
            pool.append(e)
        candidate_pool[g] = pool

    def complete(known) -> bool:
        if len(known) != source.size:
            return False
        for i in range(source.size):
            row = source.table[i]
            for j in range(source.size):
                if known[row[j]] != target_mul(known[i], known[j]):
                    return False
        return True

    def backtrack(pos, known):
        if pos == len(gens):
            if complete(known):
                yield known
            return
        g = gens[pos]
        used = set(known.values())
        for cand in candidate_pool[g]:
            if cand in used:
                continue
            nxt = dict(known)
            nxt[g] = cand
            nxt = _propagate(source, nxt, target_mul, inv_map, target_inverse)
            if nxt is not None:
                yield from backtrack(pos + 1, nxt)

    yield from backtrack(0, base)


def find_embedding(
    source: FiniteSemigroup,
    target_elements,
    target_mul,
    *,
    forced: dict | None = None,
    inverse_mode: bool = False,
    target_inverse=None,
) -> dict | None:
    """First injective homomorphism extending ``forced``, or None."""
    return next(
        iter_embeddings(
            source,
            target_elements,
            target_mul,
            forced=forced,
            inverse_mode=inverse_mode,
            target_inverse=target_inverse,
        ),
        None,
    )


def _green_profile(s: FiniteSemigroup):
    g = green_classes(s)

    def sizes(labels):
        counts: dict[int, int] = {}
        for c in labels:
            counts[c] = counts.get(c, 0) + 1
        return tuple(sorted(counts.values()))

    return (
        sizes(g.r_class),
        sizes(g.l_class),
        sizes(g.j_class),
        sizes(g.h_class),
        len(g.group_h),
    )


def find_isomorphism(
    s: FiniteSemigroup, t: FiniteSemigroup, cap: int = ISO_CAP_DEFAULT
) -> Morphism | None:
    """A bijective morphism between two tables, or None when filters/search fail."""
    if s.size != t.size:
        return None
    if s.size > cap:
        raise CapExceededError(f"isomorphism search capped at {cap} elements")
    if len(s.idempotent_indices()) != len(t.idempotent_indices()):
        return None
    sig_s = sorted(s.element_order(i) for i in range(s.size))
    sig_t = sorted(t.element_order(i) for i in range(t.size))
    if sig_s != sig_t:
        return None
    if _green_profile(s) != _green_profile(t):
        return None
    found = find_embedding(s, range(t.size), t.mul)
    if found is None:
        return None
    index_map = [found[i] for i in range(s.size)]
    return Morphism(
        range(s.size),
        lambda i: index_map[i],
        s.mul,
        t.mul,
        description="isomorphism",
    )
