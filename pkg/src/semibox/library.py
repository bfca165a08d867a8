"""Named small semigroups used as fixtures and CLI shortcuts."""
from __future__ import annotations

import itertools

from .semigroups import (
    FiniteSemigroup,
    full_transformation_semigroup,
    symmetric_inverse_semigroup,
)


def left_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup([[i] * n for i in range(n)], check=False)


def right_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup([list(range(n)) for _ in range(n)], check=False)


def null_semigroup(n: int) -> FiniteSemigroup:
    """All products equal the zero element 0."""
    return FiniteSemigroup([[0] * n for _ in range(n)], check=False)


def chain_semilattice(n: int) -> FiniteSemigroup:
    """The n-element chain 0 < 1 < ... under min."""
    return FiniteSemigroup([[min(i, j) for j in range(n)] for i in range(n)], check=False)


def fork_semilattice() -> FiniteSemigroup:
    """Three idempotents e, f, g with e and f incomparable and e*f = g below both."""
    return FiniteSemigroup([[0, 2, 2], [2, 1, 2], [2, 2, 2]], check=False)


def cyclic_group(n: int) -> FiniteSemigroup:
    return FiniteSemigroup([[(i + j) % n for j in range(n)] for i in range(n)], check=False)


def klein_four_group() -> FiniteSemigroup:
    table = [[(i % 2 ^ j % 2) + 2 * (i // 2 ^ j // 2) for j in range(4)] for i in range(4)]
    return FiniteSemigroup(table, check=False)


def symmetric_group(n: int) -> FiniteSemigroup:
    """S_n as a table over permutations in lexicographic order (left-to-right)."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = [
        [index[tuple(q[x] for x in p)] for q in perms]
        for p in perms
    ]
    return FiniteSemigroup(table, elements=[list(p) for p in perms], check=False)


def rectangular_band(rows: int, cols: int) -> FiniteSemigroup:
    """(i,a)(j,b) = (i,b): completely simple, a group only when 1x1."""
    n = rows * cols
    table = [
        [(i // cols) * cols + (j % cols) for j in range(n)]
        for i in range(n)
    ]
    return FiniteSemigroup(table, check=False)


def brandt_semigroup(n: int) -> FiniteSemigroup:
    """B({1..n}, trivial group): pairs (i,j) plus zero; (i,j)(k,l) = (i,l) iff j==k."""
    size = n * n + 1
    table = [[0] * size for _ in range(size)]
    idx = lambda i, j: 1 + i * n + j
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        table[idx(i, j)][idx(k, l)] = idx(i, l)
    s = FiniteSemigroup(table, check=False)
    # inverse of (i,j) is (j,i); the zero is its own inverse
    inv = [0] * size
    for i in range(n):
        for j in range(n):
            inv[idx(i, j)] = idx(j, i)
    s._inverse = tuple(inv)
    s._inverse_done = True
    return s


def rees_matrix_semigroup_over_trivial(structure_matrix) -> FiniteSemigroup:
    """Combinatorial Rees matrix semigroup M0[1; I, L; P] with zero.

    ``structure_matrix[l][i]`` in {0,1}; elements are the pairs (i, l) plus 0,
    with (i, l)(j, m) = (i, m) when P[l][j] == 1 and 0 otherwise.
    """
    p = [list(row) for row in structure_matrix]
    n_l = len(p)
    n_i = len(p[0])
    if any(len(row) != n_i for row in p):
        raise ValueError("structure matrix must be rectangular")
    size = n_i * n_l + 1
    idx = lambda i, l: 1 + i * n_l + l
    table = [[0] * size for _ in range(size)]
    for i in range(n_i):
        for l in range(n_l):
            for j in range(n_i):
                for m in range(n_l):
                    if p[l][j]:
                        table[idx(i, l)][idx(j, m)] = idx(i, m)
    return FiniteSemigroup(table, check=False)


NAMED = {
    "L2": lambda: left_zero(2),
    "L3": lambda: left_zero(3),
    "R2": lambda: right_zero(2),
    "N2": lambda: null_semigroup(2),
    "V3": fork_semilattice,
    "chain2": lambda: chain_semilattice(2),
    "chain3": lambda: chain_semilattice(3),
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "K4": klein_four_group,
    "S3": lambda: symmetric_group(3),
    "T2": lambda: full_transformation_semigroup(2),
    "T3": lambda: full_transformation_semigroup(3),
    "T2opp": lambda: full_transformation_semigroup(2).opposite(),
    "T3opp": lambda: full_transformation_semigroup(3).opposite(),
    "I1": lambda: symmetric_inverse_semigroup(1),
    "I2": lambda: symmetric_inverse_semigroup(2),
    "I3": lambda: symmetric_inverse_semigroup(3),
    "B2": lambda: brandt_semigroup(2),
    "B3": lambda: brandt_semigroup(3),
    "band2x2": lambda: rectangular_band(2, 2),
}


def named_semigroup(name: str) -> FiniteSemigroup:
    try:
        return NAMED[name]()
    except KeyError:
        raise ValueError(f"unknown semigroup name {name!r}; known: {sorted(NAMED)}") from None
