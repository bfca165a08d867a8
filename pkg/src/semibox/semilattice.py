"""Idempotent semilattices, ideal sets of partial bijections, witnesses for the
semilattice extension axiom, and idempotent constructions below a given one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .green import GreenStructure, green_classes
from .semigroups import FiniteSemigroup
from .transformations import (
    Transformation,
    all_partial_bijections,
    idempotent_block_form,
)


@dataclass
class Poset:
    """A finite partial order; axioms are checked on construction."""

    n: int
    leq: frozenset  # reflexive pairs (i, j) meaning i <= j
    labels: tuple | None = None
    meet_table: tuple | None = None  # meets as element indices, when they exist

    def __post_init__(self):
        self.leq = frozenset(self.leq)
        for i in range(self.n):
            if (i, i) not in self.leq:
                raise ValueError("order must be reflexive")
        for i, j in self.leq:
            if i != j and (j, i) in self.leq:
                raise ValueError("order must be antisymmetric")
            for k in range(self.n):
                if (j, k) in self.leq and (i, k) not in self.leq:
                    raise ValueError("order must be transitive")

    def le(self, i: int, j: int) -> bool:
        return (i, j) in self.leq

    def incomparable(self, i: int, j: int) -> bool:
        return not self.le(i, j) and not self.le(j, i)

    def lower_bounds(self, i: int, j: int) -> list[int]:
        return [k for k in range(self.n) if self.le(k, i) and self.le(k, j)]

    def upper_bounds(self, i: int, j: int) -> list[int]:
        return [k for k in range(self.n) if self.le(i, k) and self.le(j, k)]

    def meet(self, i: int, j: int):
        """Greatest lower bound, or None when it does not exist."""
        if self.meet_table is not None:
            return self.meet_table[i][j]
        lbs = self.lower_bounds(i, j)
        tops = [m for m in lbs if all(self.le(k, m) for k in lbs)]
        return tops[0] if tops else None

    def maximal_elements(self) -> list[int]:
        return [
            i
            for i in range(self.n)
            if not any(self.le(i, j) and i != j for j in range(self.n))
        ]

    def minimal_elements(self) -> list[int]:
        return [
            i
            for i in range(self.n)
            if not any(self.le(j, i) and i != j for j in range(self.n))
        ]

    def is_meet_semilattice(self) -> bool:
        return all(
            self.meet(i, j) is not None
            for i in range(self.n)
            for j in range(self.n)
        )

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i, j in self.leq:
            if i == j:
                continue
            if any(
                self.le(i, k) and self.le(k, j) and k not in (i, j)
                for k in range(self.n)
            ):
                continue
            out.append((i, j))
        return sorted(out)

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for i in range(self.n):
            lab = self.labels[i] if self.labels else str(i)
            lines.append(f'  n{i} [label="{lab}"];')
        for i, j in self.covers():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)


def idempotent_semilattice(s: FiniteSemigroup) -> Poset:
    """E(S) under e <= f iff ef == fe == e, with meet = product.

    Raises when S is not inverse (idempotents need not commute otherwise).
    """
    if not s.is_inverse:
        raise ValueError("idempotent semilattice requires an inverse semigroup")
    idem = s.idempotent_indices()
    pos = {e: k for k, e in enumerate(idem)}
    leq = set()
    for e in idem:
        for f in idem:
            if s.table[e][f] == e and s.table[f][e] == e:
                leq.add((pos[e], pos[f]))
    meets = []
    for e in idem:
        row = []
        for f in idem:
            p = s.table[e][f]
            if p not in pos:
                raise ValueError("idempotents not closed under the product")
            row.append(pos[p])
        meets.append(tuple(row))
    labels = tuple(
        str(s.elements[e]) if s.elements is not None else str(e) for e in idem
    )
    poset = Poset(len(idem), frozenset(leq), labels=labels, meet_table=tuple(meets))
    # the product must be the greatest lower bound
    for i in range(poset.n):
        for j in range(poset.n):
            m = meets[i][j]
            if not (poset.le(m, i) and poset.le(m, j)):
                raise ValueError("product is not a lower bound")
            for k in poset.lower_bounds(i, j):
                if not poset.le(k, m):
                    raise ValueError("product is not the greatest lower bound")
    poset.element_indices = idem
    return poset


@dataclass(frozen=True)
class IdealSet:
    """All partial bijections whose image lies inside a fixed subset."""

    n: int
    subset: frozenset
    elements: frozenset


@lru_cache(maxsize=None)
def _all_pb(n: int) -> tuple:
    return tuple(all_partial_bijections(n))


@lru_cache(maxsize=None)
def image_ideal(n: int, subset: frozenset) -> IdealSet:
    subset = frozenset(subset)
    if not subset <= frozenset(range(n)):
        raise ValueError("subset must live inside the ground set")
    elems = frozenset(g for g in _all_pb(n) if g.image_set() <= subset)
    return IdealSet(n=n, subset=subset, elements=elems)


def image_ideal_size(n: int, x_size: int) -> int:
    """sum_k C(n,k) * x!/(x-k)!: partial injections of [n] into an x-set."""
    total = 0
    for k in range(min(n, x_size) + 1):
        c = factorial(n) // (factorial(k) * factorial(n - k))
        total += c * factorial(x_size) // factorial(x_size - k)
    return total


EXTENSION_CLAUSES = (
    "D and E must lie inside A",
    "C must not be contained in D",
    "C must not be contained in E",
    "A must not be contained in C",
    "need D == E, or D, E incomparable with C∩E ⊆ E∩D",
)


@dataclass
class ExtensionWitness:
    n: int
    a: frozenset
    c: frozenset
    d: frozenset
    e: frozenset
    b_elements: frozenset
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.checks.get("ok"))

    def to_json(self) -> dict:
        one_based = lambda s: sorted(x + 1 for x in s)
        return {
            "n": self.n,
            "A": one_based(self.a),
            "C": one_based(self.c),
            "D": one_based(self.d),
            "E": one_based(self.e),
            "b_size": len(self.b_elements),
            "checks": dict(self.checks),
        }


def extension_witness(n: int, a, c, d, e) -> ExtensionWitness:
    """Witness for the semilattice extension axiom on subsets of the ground set:
    B = (ideal of D) ∪ (ideal of E) sits between the ideals of D, E and A and
    meets the ideal of C exactly where the ideal of D does.

    Precondition violations name the failing clause."""
    ground = frozenset(range(n))
    a, c, d, e = (frozenset(x) for x in (a, c, d, e))
    for name, s in (("A", a), ("C", c), ("D", d), ("E", e)):
        if not s <= ground:
            raise ValueError(f"{name} must be a subset of the ground set")
    if not (d | e) <= a:
        raise ValueError(EXTENSION_CLAUSES[0])
    if c <= d:
        raise ValueError(EXTENSION_CLAUSES[1])
    if c <= e:
        raise ValueError(EXTENSION_CLAUSES[2])
    if a <= c:
        raise ValueError(EXTENSION_CLAUSES[3])
    if d != e:
        incomparable = not (d <= e or e <= d)
        if not (incomparable and (c & e) <= (e & d)):
            raise ValueError(EXTENSION_CLAUSES[4])

    d_hat = image_ideal(n, d).elements
    e_hat = image_ideal(n, e).elements
    a_hat = image_ideal(n, a).elements
    c_hat = image_ideal(n, c).elements
    b = d_hat | e_hat
    checks = {
        "d_ideal_below_b": d_hat <= b,
        "e_ideal_below_b": e_hat <= b,
        "b_below_a_ideal": b <= a_hat,
        "b_meets_c_like_d": (b & c_hat) == (d_hat & c_hat),
    }
    checks["ok"] = all(checks.values())
    return ExtensionWitness(
        n=n, a=a, c=c, d=d, e=e, b_elements=frozenset(b), checks=checks
    )


def extension_axiom_report(poset: Poset, local: bool = False) -> dict:
    """Which of the homogeneity conditions hold on a finite poset: no extreme
    elements (never, on a finite poset), pairwise upper bounds, and the
    extension axiom quantified over all quadruples.

    With ``local=True`` the extreme-element condition is reported as an
    ambient-stage check rather than a failure of the poset itself."""
    if not poset.is_meet_semilattice():
        raise ValueError("extension axiom check needs a meet semilattice")
    n = poset.n
    maximal = poset.maximal_elements()
    minimal = poset.minimal_elements()
    no_extremes = not maximal and not minimal

    upper_ok = all(
        bool(poset.upper_bounds(i, j)) for i in range(n) for j in range(n)
    )

    lhs_count = 0
    witnessed = 0
    failures = []
    for alpha, gamma, delta, eps in itertools.product(range(n), repeat=4):
        if not (poset.le(delta, alpha) and poset.le(eps, alpha)):
            continue
        if poset.le(gamma, delta) or poset.le(gamma, eps) or poset.le(alpha, gamma):
            continue
        if delta != eps:
            if not poset.incomparable(delta, eps):
                continue
            if not poset.le(
                poset.meet(gamma, eps), poset.meet(gamma, delta)
            ):
                continue
        lhs_count += 1
        target = poset.meet(delta, gamma)
        found = any(
            poset.le(delta, beta)
            and poset.le(eps, beta)
            and poset.le(beta, alpha)
            and poset.meet(beta, gamma) == target
            for beta in range(n)
        )
        if found:
            witnessed += 1
        elif len(failures) < 3:
            failures.append((alpha, gamma, delta, eps))

    return {
        "local": local,
        "no_extreme_elements": no_extremes,
        "maximal": maximal,
        "minimal": minimal,
        "pairs_have_upper_bounds": upper_ok,
        "axiom_instances": lhs_count,
        "axiom_witnessed": witnessed,
        "axiom_holds": witnessed == lhs_count,
        "axiom_failures": failures,
    }


def _mul_adjoined(table, x, y):
    """Product in S^1; None stands for the adjoined identity."""
    if x is None:
        return y
    if y is None:
        return x
    return table[x][y]


def idempotent_below(
    s: FiniteSemigroup, f: int, j_id: int, green: GreenStructure | None = None
) -> int:
    """An idempotent e in the given J-class with ef == fe == e (S inverse).

    Searches pairs (s, t) in S^1 in lexicographic order for s*f*t landing on the
    smallest idempotent of the class, then applies e = (s s')(f)(t' t)."""
    inv = s.inverse_map()
    if inv is None:
        raise ValueError("requires an inverse semigroup")
    if s.table[f][f] != f:
        raise ValueError("f must be idempotent")
    if green is None:
        green = green_classes(s)
    if (j_id, green.j_class[f]) not in green.j_leq:
        raise ValueError("target J-class must lie below the class of f")
    members = green.members(green.j_class, j_id)
    g = min(i for i in members if s.table[i][i] == i)
    table = s.table
    one = [None] + list(range(s.size))
    for s1 in one:
        for t1 in one:
            if _mul_adjoined(table, _mul_adjoined(table, s1, f), t1) != g:
                continue
            s_inv = None if s1 is None else inv[s1]
            t_inv = None if t1 is None else inv[t1]
            # e = s' g t' = (s's) f (t t'), a product of commuting idempotents
            e = _mul_adjoined(table, _mul_adjoined(table, s_inv, g), t_inv)
            assert table[e][e] == e, "constructed element is not idempotent"
            assert green.j_class[e] == j_id, "constructed idempotent left the class"
            assert table[e][f] == e and table[f][e] == e
            return e
    raise AssertionError("no witness pair found although the class lies below")


def idempotent_chain(
    s: FiniteSemigroup, j_chain, green: GreenStructure | None = None
) -> list[int]:
    """Commuting idempotents e_0 < e_1 < ... realising an ascending J-chain."""
    if green is None:
        green = green_classes(s)
    chain = list(j_chain)
    for low, high in zip(chain, chain[1:]):
        if (low, high) not in green.j_leq or low == high:
            raise ValueError("classes must strictly ascend in the J-order")
    top = chain[-1]
    members = green.members(green.j_class, top)
    e = min(i for i in members if s.table[i][i] == i)
    out = [e]
    for j_id in reversed(chain[:-1]):
        e = idempotent_below(s, e, j_id, green=green)
        out.append(e)
    out.reverse()
    for i, ei in enumerate(out):
        for j, ej in enumerate(out):
            lo = out[min(i, j)]
            assert s.table[ei][ej] == lo and s.table[ej][ei] == lo
    return out


def lower_rank_idempotent(
    f: Transformation, r: int, block_order=None
) -> Transformation:
    """Rank-r idempotent below an idempotent transformation f of larger rank.

    Keeps the first r-1 kernel blocks of f and merges the tail into one block
    mapped to that block's representative; any block ordering may be supplied,
    the default lists blocks by minimum element."""
    blocks = idempotent_block_form(f)
    m = len(blocks)
    if not 1 <= r < m:
        raise ValueError("need 1 <= r < rank(f)")
    if block_order is not None:
        order = list(block_order)
        if sorted(order) != list(range(m)):
            raise ValueError("block_order must permute the blocks")
        blocks = [blocks[i] for i in order]
    images = [0] * f.degree
    for block, rep in blocks[: r - 1]:
        for x in block:
            images[x] = rep
    tail_rep = blocks[r - 1][1]
    for block, _ in blocks[r - 1 :]:
        for x in block:
            images[x] = tail_rep
    e = Transformation(tuple(images))
    assert e.is_idempotent() and e.rank == r
    assert e * f == e and f * e == e
    return e


def lower_rank_chain(f: Transformation, ranks) -> list[Transformation]:
    """Idempotents below f at the given ascending ranks; products take the min."""
    ranks = sorted(set(ranks))
    m = f.rank
    if any(not 1 <= r < m for r in ranks):
        raise ValueError("ranks must satisfy 1 <= r < rank(f)")
    chain = [lower_rank_idempotent(f, r) for r in ranks]
    full = chain + [f]
    for i, ei in enumerate(full):
        for j, ej in enumerate(full):
            lo = full[min(i, j)]
            assert ei * ej == lo and ej * ei == lo
    return chain
