"""Abstract finite semigroups as Cayley tables, plus morphisms and closure.

Conventions: ``table[i][j]`` is the product i*j (left-to-right, matching element
composition).  Element lists attached to a table are canonically ordered, so
tables are reproducible bit-exactly.
"""
from __future__ import annotations

import itertools
import operator

import numpy as np

from .errors import CapExceededError
from .transformations import (
    all_partial_bijections,
    all_transformations,
)

ASSOCIATIVITY_CHECK_CAP = 600


class FiniteSemigroup:
    """A finite semigroup given by its Cayley table.

    ``elements`` optionally stores the concrete elements (transformations,
    partial bijections, ...) indexed by table position.
    """

    __slots__ = ("table", "elements", "_np", "_identity", "_inverse", "_inverse_done")

    def __init__(self, table, elements=None, check: bool = True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(self.table)
        for row in self.table:
            if len(row) != n:
                raise ValueError("table must be square")
            for x in row:
                if not 0 <= x < n:
                    raise ValueError("table entry out of range")
        self.elements = list(elements) if elements is not None else None
        if self.elements is not None and len(self.elements) != n:
            raise ValueError("element list does not match table size")
        self._np = None
        self._identity = -2  # unknown
        self._inverse = None
        self._inverse_done = False
        if check:
            self.check_associativity()

    # -- basic structure ---------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def np_table(self) -> np.ndarray:
        if self._np is None:
            self._np = np.asarray(self.table, dtype=np.int32)
        return self._np

    def check_associativity(self):
        n = self.size
        if n > ASSOCIATIVITY_CHECK_CAP:
            raise CapExceededError(
                f"exhaustive associativity check capped at {ASSOCIATIVITY_CHECK_CAP} elements"
            )
        a = self.np_table()
        for i in range(n):
            # (i*j)*k vs i*(j*k), all j,k at once
            if not np.array_equal(a[a[i], :], a[i][a]):
                raise ValueError(f"table is not associative (witness row {i})")

    def identity_index(self):
        if self._identity == -2:
            n = self.size
            a = self.np_table()
            ar = np.arange(n)
            self._identity = None
            for e in range(n):
                if np.array_equal(a[e], ar) and np.array_equal(a[:, e], ar):
                    self._identity = e
                    break
        return self._identity

    @property
    def is_monoid(self) -> bool:
        return self.identity_index() is not None

    def idempotent_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if self.table[i][i] == i)

    def power(self, i: int, k: int) -> int:
        if k < 1:
            raise ValueError("power must be >= 1")
        acc = i
        for _ in range(k - 1):
            acc = self.table[acc][i]
        return acc

    def element_order(self, i: int) -> tuple[int, int]:
        """(index, period): the minimal m,k >= 1 with x^(m+k) == x^m."""
        seen = {i: 1}
        x = i
        p = 1
        while True:
            x = self.table[x][i]
            p += 1
            if x in seen:
                m = seen[x]
                return m, p - m
            seen[x] = p

    # -- inverse-semigroup structure ----------------------------------------

    def inverse_map(self):
        """The unique-inverse map, or None if some element lacks a unique inverse."""
        if not self._inverse_done:
            self._inverse_done = True
            n = self.size
            a = self.np_table()
            ar = np.arange(n)
            inv = []
            for x in range(n):
                xy = a[x]  # x*y per y
                xyx = a[xy, x]
                yx = a[:, x]
                yxy = a[yx, ar]
                ok = np.flatnonzero((xyx == x) & (yxy == ar))
                if len(ok) != 1:
                    inv = None
                    break
                inv.append(int(ok[0]))
            self._inverse = tuple(inv) if inv is not None else None
        return self._inverse

    @property
    def is_inverse(self) -> bool:
        return self.inverse_map() is not None

    def validate_inverse_semigroup(self):
        """Check x x' x == x, x' x x' == x' and that idempotents commute."""
        inv = self.inverse_map()
        if inv is None:
            raise ValueError("not an inverse semigroup: inverses not unique")
        t = self.table
        for x in range(self.size):
            y = inv[x]
            if t[t[x][y]][x] != x or t[t[y][x]][y] != y:
                raise ValueError("inverse map fails the inverse axioms")
        idem = self.idempotent_indices()
        for e, f in itertools.combinations(idem, 2):
            if t[e][f] != t[f][e]:
                raise ValueError("idempotents do not commute")

    def is_group(self) -> bool:
        e = self.identity_index()
        return e is not None and self.idempotent_indices() == (e,)

    # -- derived semigroups --------------------------------------------------

    def opposite(self) -> "FiniteSemigroup":
        opp = FiniteSemigroup(
            tuple(zip(*self.table)), elements=self.elements, check=False
        )
        # unique inverses are unchanged under reversal
        if self._inverse_done:
            opp._inverse = self._inverse
            opp._inverse_done = True
        return opp

    def subsemigroup(self, indices) -> "FiniteSemigroup":
        """Restrict the product to a subset that must be closed."""
        idx = list(indices)
        pos = {g: k for k, g in enumerate(idx)}
        table = []
        for i in idx:
            row = []
            for j in idx:
                p = self.table[i][j]
                if p not in pos:
                    raise ValueError("subset is not closed under the product")
                row.append(pos[p])
            table.append(row)
        elems = [self.elements[i] for i in idx] if self.elements is not None else idx
        return FiniteSemigroup(table, elements=elems, check=False)

    @classmethod
    def from_elements(cls, elements, check: bool = False) -> "FiniteSemigroup":
        """Build the table of a list of composable elements closed under ``*``."""
        elems = list(elements)
        pos = {}
        for k, g in enumerate(elems):
            if g in pos:
                raise ValueError("duplicate element")
            pos[g] = k
        table = []
        for f in elems:
            row = []
            for g in elems:
                p = f * g
                if p not in pos:
                    raise ValueError("element list is not closed under the product")
                row.append(pos[p])
            table.append(row)
        return cls(table, elements=elems, check=check)


class Morphism:
    """A map between semigroup element universes, with a checkable contract.

    ``source_elements`` must be enumerable.  The target only needs a product
    function, so morphisms into huge transformation semigroups stay usable:
    when the source is too large for the exhaustive homomorphism check, the
    verification runs on ``declared_pairs`` and says so in its report.
    """

    def __init__(
        self,
        source_elements,
        apply_fn,
        source_mul,
        target_mul=operator.mul,
        *,
        injective: bool = True,
        source_inverse=None,
        target_inverse=None,
        declared_pairs=None,
        description: str = "",
    ):
        self.source_elements = list(source_elements)
        self._apply = apply_fn
        self.source_mul = source_mul
        self.target_mul = target_mul
        self.injective = injective
        self.source_inverse = source_inverse
        self.target_inverse = target_inverse
        self.declared_pairs = declared_pairs
        self.description = description

    def __call__(self, x):
        return self._apply(x)

    def image(self) -> list:
        return [self._apply(x) for x in self.source_elements]

    def verify(self, exhaustive_pair_cap: int = 250_000) -> dict:
        n = len(self.source_elements)
        if n * n <= exhaustive_pair_cap:
            pairs = itertools.product(self.source_elements, repeat=2)
            mode = "exhaustive"
            probe = self.source_elements
        else:
            if self.declared_pairs is None:
                raise ValueError("source too large and no declared test pairs")
            pairs = self.declared_pairs
            mode = "declared-test-set"
            probe = list(
                dict.fromkeys(x for pair in self.declared_pairs for x in pair)
            )
        hom_ok = True
        checked = 0
        for x, y in pairs:
            checked += 1
            if self._apply(self.source_mul(x, y)) != self.target_mul(
                self._apply(x), self._apply(y)
            ):
                hom_ok = False
                break
        inj_ok = None
        if self.injective:
            images = [self._apply(x) for x in probe]
            inj_ok = len(set(images)) == len(images)
        inv_ok = None
        if self.source_inverse is not None and self.target_inverse is not None:
            inv_ok = all(
                self._apply(self.source_inverse(x)) == self.target_inverse(self._apply(x))
                for x in probe
            )
        ok = hom_ok and inj_ok is not False and inv_ok is not False
        return {
            "mode": mode,
            "pairs_checked": checked,
            "homomorphism": hom_ok,
            "injective": inj_ok,
            "inverse_preserving": inv_ok,
            "ok": ok,
        }


def index_morphism(source: FiniteSemigroup, target: FiniteSemigroup, index_map) -> Morphism:
    """Morphism between tables given by an explicit index map."""
    m = list(index_map)
    return Morphism(
        range(source.size),
        lambda i: m[i],
        source.mul,
        target.mul,
        source_inverse=(lambda i: source.inverse_map()[i]) if source.is_inverse else None,
        target_inverse=(lambda i: target.inverse_map()[i]) if target.is_inverse else None,
    )


def closure(generators, max_size: int = 100_000) -> FiniteSemigroup:
    """Breadth-first product closure of a generating set of uniform degree.

    Elements are ordered by BFS level with a lexicographic tie-break on image
    tuples, so the result is independent of generator ordering.
    """
    gens = sorted(set(generators), key=lambda g: g.sort_key())
    if not gens:
        raise ValueError("need at least one generator")
    deg = gens[0].degree
    if any(g.degree != deg for g in gens) or len({type(g) for g in gens}) != 1:
        raise ValueError("generators must share one degree and one kind")

    elements = list(gens)
    index = {g: k for k, g in enumerate(elements)}
    frontier = list(gens)
    while frontier:
        fresh = {}
        for x in frontier:
            for g in gens:
                p = x * g
                if p not in index and p not in fresh:
                    fresh[p] = None
        frontier = sorted(fresh, key=lambda g: g.sort_key())
        for p in frontier:
            index[p] = len(elements)
            elements.append(p)
        if len(elements) > max_size:
            raise CapExceededError(f"closure exceeded {max_size} elements")

    table = [[index[f * g] for g in elements] for f in elements]
    return FiniteSemigroup(table, elements=elements, check=False)


def opposite(s: FiniteSemigroup) -> FiniteSemigroup:
    return s.opposite()


FULL_T_TABLE_CAP = 5
FULL_I_TABLE_CAP = 4


def full_transformation_semigroup(n: int) -> FiniteSemigroup:
    """T_n with its full Cayley table, elements in lexicographic order."""
    if n > FULL_T_TABLE_CAP:
        raise CapExceededError(f"full T_n table capped at n={FULL_T_TABLE_CAP}")
    elems = all_transformations(n)
    imgs = np.array([t.images for t in elems], dtype=np.int64)
    powers = n ** np.arange(n - 1, -1, -1, dtype=np.int64)
    table = np.empty((len(elems), len(elems)), dtype=np.int64)
    for fi in range(len(elems)):
        # (f*g).images = g.images[f.images]; lex index equals the mixed-radix code
        composed = imgs[:, imgs[fi]]
        table[fi] = composed @ powers
    return FiniteSemigroup(table.tolist(), elements=elems, check=False)


def symmetric_inverse_semigroup(n: int) -> FiniteSemigroup:
    """I_n with its full Cayley table and inverse map."""
    if n > FULL_I_TABLE_CAP:
        raise CapExceededError(f"full I_n table capped at n={FULL_I_TABLE_CAP}")
    elems = all_partial_bijections(n)
    index = {g: k for k, g in enumerate(elems)}
    table = [[index[f * g] for g in elems] for f in elems]
    s = FiniteSemigroup(table, elements=elems, check=False)
    s._inverse = tuple(index[g.inverse()] for g in elems)
    s._inverse_done = True
    return s
