"""Green's relations: egg-box decomposition, idempotents, group H-classes,
maximal subgroups, principal factors and the J-order.

The generic engine works from a Cayley table via principal ideals.  Fast paths
for T_n and I_n key the classes on (kernel, image) resp. (domain, image)
without building a table.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceededError
from .semigroups import FiniteSemigroup
from .transformations import (
    all_partial_bijections,
    all_transformations,
)

GREEN_FAST_CAP = 5


@dataclass
class GreenStructure:
    size: int
    r_class: tuple
    l_class: tuple
    h_class: tuple
    d_class: tuple
    j_class: tuple
    j_leq: frozenset  # pairs (a, b) with J_a <= J_b, reflexive
    idempotents: frozenset
    group_h: frozenset  # H-class ids containing an idempotent
    mul: object = field(repr=False)
    semigroup: FiniteSemigroup | None = field(default=None, repr=False)
    elements: list | None = field(default=None, repr=False)
    r_keys: tuple | None = None
    l_keys: tuple | None = None
    j_keys: tuple | None = None

    @property
    def n_r(self) -> int:
        return max(self.r_class) + 1

    @property
    def n_l(self) -> int:
        return max(self.l_class) + 1

    @property
    def n_h(self) -> int:
        return max(self.h_class) + 1

    @property
    def n_d(self) -> int:
        return max(self.d_class) + 1

    @property
    def n_j(self) -> int:
        return max(self.j_class) + 1

    def members(self, labels, cid) -> list[int]:
        return [i for i, c in enumerate(labels) if c == cid]

    def h_members(self, h_id) -> list[int]:
        return self.members(self.h_class, h_id)

    def is_group_h(self, h_id) -> bool:
        return h_id in self.group_h

    def classes_of(self, labels) -> list[frozenset]:
        out: dict[int, set] = {}
        for i, c in enumerate(labels):
            out.setdefault(c, set()).add(i)
        return [frozenset(out[c]) for c in sorted(out)]


def _assign(keys) -> tuple[list[int], list]:
    """Class ids in order of first occurrence; returns (labels, key per id)."""
    ids: dict = {}
    labels = []
    per_id = []
    for k in keys:
        if k not in ids:
            ids[k] = len(ids)
            per_id.append(k)
        labels.append(ids[k])
    return labels, per_id


def _union_find_join(n: int, *label_arrays) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for labels in label_arrays:
        first: dict[int, int] = {}
        for i, c in enumerate(labels):
            if c in first:
                a, b = find(first[c]), find(i)
                if a != b:
                    parent[b] = a
            else:
                first[c] = i
    roots = [find(i) for i in range(n)]
    labels, _ = _assign(roots)
    return labels


def green_classes(s: FiniteSemigroup) -> GreenStructure:
    """Green structure of an arbitrary table, from principal ideals in S^1."""
    n = s.size
    a = s.np_table()
    r_keys = []
    l_keys = []
    j_ideals = []
    for x in range(n):
        row = a[x]
        col = a[:, x]
        r_keys.append(frozenset({x}) | frozenset(row.tolist()))
        l_keys.append(frozenset({x}) | frozenset(col.tolist()))
        two_sided = a[np.unique(col), :]
        j_ideals.append(
            r_keys[-1] | l_keys[-1] | frozenset(two_sided.ravel().tolist())
        )
    r_class, _ = _assign(r_keys)
    l_class, _ = _assign(l_keys)
    j_class, _ = _assign(j_ideals)
    h_class, _ = _assign(list(zip(r_class, l_class)))
    d_class = _union_find_join(n, r_class, l_class)

    j_rep = {}
    for i, c in enumerate(j_class):
        j_rep.setdefault(c, i)
    j_leq = frozenset(
        (ci, cj)
        for ci, ri in j_rep.items()
        for cj, rj in j_rep.items()
        if ri in j_ideals[rj]
    )
    idem = frozenset(i for i in range(n) if s.table[i][i] == i)
    group_h = frozenset(h_class[i] for i in idem)
    return GreenStructure(
        size=n,
        r_class=tuple(r_class),
        l_class=tuple(l_class),
        h_class=tuple(h_class),
        d_class=tuple(d_class),
        j_class=tuple(j_class),
        j_leq=j_leq,
        idempotents=idem,
        group_h=group_h,
        mul=s.mul,
        semigroup=s,
        elements=s.elements,
    )


def _kernel_label(blocks) -> str:
    return "|".join(",".join(str(x + 1) for x in b) for b in blocks)


def _image_label(image) -> str:
    return "{" + ",".join(str(x + 1) for x in sorted(image)) + "}"


def _rank_chain_leq(j_class, ranks_per_id) -> frozenset:
    ids = sorted(set(j_class))
    return frozenset(
        (i, j) for i in ids for j in ids if ranks_per_id[i] <= ranks_per_id[j]
    )


def green_full_transformations(n: int) -> GreenStructure:
    """Green structure of all of T_n: R by kernel, L by image, J = D = rank."""
    if n > GREEN_FAST_CAP:
        raise CapExceededError(f"T_n fast path capped at n={GREEN_FAST_CAP}")
    elems = all_transformations(n)
    kernels = [t.kernel_blocks() for t in elems]
    images = [t.image_set() for t in elems]
    r_class, r_per = _assign(kernels)
    l_class, l_per = _assign(images)
    j_class, j_per = _assign([t.rank for t in elems])
    h_class, h_per = _assign(list(zip(r_class, l_class)))
    idem = frozenset(i for i, t in enumerate(elems) if t.is_idempotent())
    group_h = frozenset(
        hid
        for hid, (rid, lid) in enumerate(h_per)
        if is_transversal_sets(l_per[lid], r_per[rid])
    )
    index = {t: i for i, t in enumerate(elems)}
    return GreenStructure(
        size=len(elems),
        r_class=tuple(r_class),
        l_class=tuple(l_class),
        h_class=tuple(h_class),
        d_class=tuple(j_class),
        j_class=tuple(j_class),
        j_leq=_rank_chain_leq(j_class, j_per),
        idempotents=idem,
        group_h=group_h,
        mul=lambda i, j: index[elems[i] * elems[j]],
        semigroup=None,
        elements=elems,
        r_keys=tuple(_kernel_label(k) for k in r_per),
        l_keys=tuple(_image_label(im) for im in l_per),
        j_keys=tuple(f"rank={r}" for r in j_per),
    )


def green_partial_bijections(n: int) -> GreenStructure:
    """Green structure of all of I_n: R by domain, L by image, J = D = rank."""
    if n > GREEN_FAST_CAP:
        raise CapExceededError(f"I_n fast path capped at n={GREEN_FAST_CAP}")
    elems = all_partial_bijections(n)
    doms = [g.domain_set() for g in elems]
    images = [g.image_set() for g in elems]
    r_class, r_per = _assign(doms)
    l_class, l_per = _assign(images)
    j_class, j_per = _assign([g.rank for g in elems])
    h_class, h_per = _assign(list(zip(r_class, l_class)))
    idem = frozenset(i for i, g in enumerate(elems) if g.is_idempotent())
    group_h = frozenset(
        hid for hid, (rid, lid) in enumerate(h_per) if r_per[rid] == l_per[lid]
    )
    index = {g: i for i, g in enumerate(elems)}
    return GreenStructure(
        size=len(elems),
        r_class=tuple(r_class),
        l_class=tuple(l_class),
        h_class=tuple(h_class),
        d_class=tuple(j_class),
        j_class=tuple(j_class),
        j_leq=_rank_chain_leq(j_class, j_per),
        idempotents=idem,
        group_h=group_h,
        mul=lambda i, j: index[elems[i] * elems[j]],
        semigroup=None,
        elements=elems,
        r_keys=tuple("dom" + _image_label(d) for d in r_per),
        l_keys=tuple(_image_label(im) for im in l_per),
        j_keys=tuple(f"rank={r}" for r in j_per),
    )


def is_transversal_sets(subset, blocks) -> bool:
    """Does the subset meet every block exactly once?"""
    s = frozenset(subset)
    return all(len(s & frozenset(b)) == 1 for b in blocks)


def maximal_subgroup(green: GreenStructure, h_id: int) -> FiniteSemigroup:
    """The group on a group H-class, identity the contained idempotent."""
    if h_id not in green.group_h:
        raise ValueError("H-class is not a group (contains no idempotent)")
    members = green.members(green.h_class, h_id)
    pos = {g: k for k, g in enumerate(members)}
    table = []
    for i in members:
        row = []
        for j in members:
            p = green.mul(i, j)
            if p not in pos:
                raise ValueError("group H-class not closed; structure is corrupt")
            row.append(pos[p])
        table.append(row)
    elems = (
        [green.elements[i] for i in members] if green.elements is not None else members
    )
    g = FiniteSemigroup(table, elements=elems, check=False)
    if not g.is_group():
        raise ValueError("H-class restriction failed the group axioms")
    return g


@dataclass
class PrincipalFactor:
    """A J-class with a zero adjoined; products falling out of the class are 0."""

    j_id: int
    semigroup: FiniteSemigroup
    kind: str  # "0-simple" or "null"
    r_class_count: int
    l_class_count: int

    @property
    def zero_index(self) -> int:
        return 0


def principal_factor(green: GreenStructure, j_id: int) -> PrincipalFactor:
    members = green.members(green.j_class, j_id)
    if not members:
        raise ValueError("no such J-class")
    member_set = set(members)
    pos = {g: k + 1 for k, g in enumerate(members)}  # 0 is the adjoined zero
    size = len(members) + 1
    table = [[0] * size for _ in range(size)]
    hit = False
    for i in members:
        for j in members:
            p = green.mul(i, j)
            if p in member_set:
                table[pos[i]][pos[j]] = pos[p]
                hit = True
    elems = ["0"] + (
        [green.elements[i] for i in members] if green.elements is not None else members
    )
    s = FiniteSemigroup(table, elements=elems, check=False)
    return PrincipalFactor(
        j_id=j_id,
        semigroup=s,
        kind="0-simple" if hit else "null",
        r_class_count=len({green.r_class[i] for i in members}),
        l_class_count=len({green.l_class[i] for i in members}),
    )


def is_ideal_chain(green: GreenStructure) -> bool:
    """True when the J-order is total (the principal ideals form a chain)."""
    ids = sorted(set(green.j_class))
    return all(
        (i, j) in green.j_leq or (j, i) in green.j_leq for i in ids for j in ids
    )


def j_chain_length(green: GreenStructure) -> int:
    return green.n_j


def opposite_green_structure(green: GreenStructure) -> GreenStructure:
    """Green structure of the opposite semigroup: R and L swap, the rest stands."""
    return GreenStructure(
        size=green.size,
        r_class=green.l_class,
        l_class=green.r_class,
        h_class=green.h_class,
        d_class=green.d_class,
        j_class=green.j_class,
        j_leq=green.j_leq,
        idempotents=green.idempotents,
        group_h=green.group_h,
        mul=lambda i, j: green.mul(j, i),
        semigroup=green.semigroup.opposite() if green.semigroup is not None else None,
        elements=green.elements,
        r_keys=green.l_keys,
        l_keys=green.r_keys,
        j_keys=green.j_keys,
    )


def green_equivalent(g1: GreenStructure, g2: GreenStructure, element_map=None) -> bool:
    """Class-for-class agreement of two structures over a common element set.

    ``element_map`` sends g1 indices to g2 indices (identity when omitted).
    """
    if g1.size != g2.size:
        return False
    emap = list(element_map) if element_map is not None else list(range(g1.size))

    def mapped_partition(labels):
        out: dict[int, set] = {}
        for i, c in enumerate(labels):
            out.setdefault(c, set()).add(emap[i])
        return {frozenset(v) for v in out.values()}

    def plain_partition(labels):
        out: dict[int, set] = {}
        for i, c in enumerate(labels):
            out.setdefault(c, set()).add(i)
        return {frozenset(v) for v in out.values()}

    for lab1, lab2 in (
        (g1.r_class, g2.r_class),
        (g1.l_class, g2.l_class),
        (g1.h_class, g2.h_class),
        (g1.d_class, g2.d_class),
        (g1.j_class, g2.j_class),
    ):
        if mapped_partition(lab1) != plain_partition(lab2):
            return False

    def group_h_sets(g, use_map):
        out = set()
        for hid in g.group_h:
            members = g.members(g.h_class, hid)
            out.add(frozenset(emap[i] if use_map else i for i in members))
        return out

    if group_h_sets(g1, True) != group_h_sets(g2, False):
        return False
    if frozenset(emap[i] for i in g1.idempotents) != g2.idempotents:
        return False

    # induced J-order must agree under the class correspondence
    to2 = {}
    for cid in set(g1.j_class):
        members = frozenset(emap[i] for i, c in enumerate(g1.j_class) if c == cid)
        to2[cid] = members
    class2_of = {}
    for i, c in enumerate(g2.j_class):
        class2_of.setdefault(c, set()).add(i)
    members_to_id2 = {frozenset(v): k for k, v in class2_of.items()}
    for ci in set(g1.j_class):
        for cj in set(g1.j_class):
            lhs = (ci, cj) in g1.j_leq
            rhs = (members_to_id2[to2[ci]], members_to_id2[to2[cj]]) in g2.j_leq
            if lhs != rhs:
                return False
    return True


def eggbox_data(green: GreenStructure) -> list[dict]:
    """Per-D-class grids: rows are R-classes, columns L-classes, cells H-classes."""
    d_ids = sorted(set(green.d_class))
    # order boxes top-down by the J-order (most classes below first)
    below = {}
    for d in d_ids:
        member = green.d_class.index(d)
        j = green.j_class[member]
        below[d] = sum(1 for (a, b) in green.j_leq if b == j)
    boxes = []
    for d in sorted(d_ids, key=lambda d: (-below[d], d)):
        members = green.members(green.d_class, d)
        r_ids = sorted({green.r_class[i] for i in members})
        l_ids = sorted({green.l_class[i] for i in members})
        h_of = {}
        sizes: dict[int, int] = {}
        for i in members:
            h = green.h_class[i]
            h_of[(green.r_class[i], green.l_class[i])] = h
            sizes[h] = sizes.get(h, 0) + 1
        grid = []
        for r in r_ids:
            row = []
            for l in l_ids:
                h = h_of.get((r, l))
                if h is None:
                    row.append({"size": 0, "group": False})
                else:
                    row.append({"size": sizes[h], "group": h in green.group_h})
            grid.append(row)
        j = green.j_class[members[0]]
        boxes.append(
            {
                "d_id": d,
                "label": green.j_keys[j] if green.j_keys else f"J{j}",
                "r_keys": [
                    green.r_keys[r] if green.r_keys else f"R{r}" for r in r_ids
                ],
                "l_keys": [
                    green.l_keys[l] if green.l_keys else f"L{l}" for l in l_ids
                ],
                "grid": grid,
                "class_size": len(members),
            }
        )
    return boxes
