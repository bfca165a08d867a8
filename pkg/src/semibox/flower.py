"""Set partitions, transversal patterns, Graham-Houghton graphs, and the
witness construction that realises a prescribed group/non-group pattern in a
single R-class of a transformation semigroup.

The partition constructor follows a fixed recipe: head elements go to distinct
parts, each required-transversal set is completed part by part, each forbidden
set is dumped into a single part, and leftovers land in part 0.  All choices
are made in sorted order, so outputs are deterministic.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb

from .errors import CapExceededError, FlowerHypothesisError
from .green import GreenStructure
from .embeddings import DilationContext, build_dilation
from .transformations import (
    Transformation,
    canonical_image_rep,
    transformation_with_kernel,
)


@dataclass(frozen=True)
class Partition:
    """A partition of [0..m-1], stored as block labels normalized by first use."""

    m: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.m:
            raise ValueError("assignment length must equal the ground-set size")
        relabel: dict[int, int] = {}
        for lab in self.assignment:
            if lab not in relabel:
                relabel[lab] = len(relabel)
        object.__setattr__(
            self, "assignment", tuple(relabel[lab] for lab in self.assignment)
        )

    @classmethod
    def from_blocks(cls, blocks, m: int) -> "Partition":
        assignment = [None] * m
        for k, block in enumerate(blocks):
            for x in block:
                if assignment[x] is not None:
                    raise ValueError("blocks overlap")
                assignment[x] = k
        if any(a is None for a in assignment):
            raise ValueError("blocks do not cover the ground set")
        return cls(m, tuple(assignment))

    @property
    def t(self) -> int:
        return max(self.assignment) + 1

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        out: dict[int, list[int]] = {}
        for i, lab in enumerate(self.assignment):
            out.setdefault(lab, []).append(i)
        blocks = [tuple(sorted(b)) for b in out.values()]
        return tuple(sorted(blocks, key=lambda b: b[0]))

    def label(self) -> str:
        return "|".join(",".join(str(x + 1) for x in b) for b in self.blocks())


def is_transversal(subset, partition: Partition) -> bool:
    """|subset ∩ block| == 1 for every block."""
    counts = [0] * partition.t
    for x in subset:
        counts[partition.assignment[x]] += 1
    return all(c == 1 for c in counts)


@dataclass(frozen=True)
class FlowerInstance:
    """Distinct t-subsets of [0..m-1]: the A-sets must become transversal, the
    B-sets must not."""

    m: int
    t: int
    a_sets: tuple
    b_sets: tuple

    def __post_init__(self):
        object.__setattr__(self, "a_sets", tuple(frozenset(a) for a in self.a_sets))
        object.__setattr__(self, "b_sets", tuple(frozenset(b) for b in self.b_sets))
        if self.t < 2:
            raise ValueError("need t >= 2")
        if not self.a_sets or not self.b_sets:
            raise ValueError("need at least one set on each side")
        ground = frozenset(range(self.m))
        family = self.a_sets + self.b_sets
        for s in family:
            if len(s) != self.t:
                raise ValueError("every set must have exactly t elements")
            if not s <= ground:
                raise ValueError("sets must live inside the ground set")
        if len(set(family)) != len(family):
            raise ValueError("sets must be pairwise distinct")

    def petals_and_head(self):
        family = self.a_sets + self.b_sets
        petals = []
        for i, s in enumerate(family):
            others = frozenset().union(*(x for j, x in enumerate(family) if j != i))
            petals.append(s - others)
        union_all = frozenset().union(*family)
        exclusive = frozenset().union(*petals)
        head = union_all - exclusive
        k = len(self.a_sets)
        return petals[:k], petals[k:], head


def flower_partition(instance: FlowerInstance) -> Partition:
    """Partition of the ground set into t parts, transversal to every A-set and
    to no B-set; rejects instances whose head has t or more elements."""
    a_petals, b_petals, head = instance.petals_and_head()
    t = instance.t
    if len(head) >= t:
        raise FlowerHypothesisError(
            f"head has {len(head)} elements, needs fewer than t={t}"
        )
    part_of: dict[int, int] = {}
    for k, x in enumerate(sorted(head)):
        part_of[x] = k

    for a, petal in zip(instance.a_sets, a_petals):
        assert petal, "petal empty despite the head bound"
        taken = {part_of[x] for x in a - petal}
        free = (p for p in range(t) if p not in taken)
        for x in sorted(petal):
            part_of[x] = next(free)

    for b, petal in zip(instance.b_sets, b_petals):
        assert petal, "petal empty despite the head bound"
        if petal == b:
            target = 0
        else:
            target = part_of[min(b - petal)]
        for x in sorted(petal):
            part_of[x] = target

    for x in range(instance.m):
        if x not in part_of:
            part_of[x] = 0

    counts = [0] * t
    for p in part_of.values():
        counts[p] += 1
    if any(c == 0 for c in counts):
        raise ValueError("construction left an empty part; instance invalid")
    result = Partition(instance.m, tuple(part_of[x] for x in range(instance.m)))

    for a in instance.a_sets:
        assert is_transversal(a, result)
    for b in instance.b_sets:
        assert not is_transversal(b, result)
    return result


def random_flower_instance(rng: random.Random, max_m: int = 12) -> FlowerInstance:
    """A random instance satisfying the head bound (rejection-sampled)."""
    while True:
        m = rng.randint(4, max_m)
        t = rng.randint(2, max(2, m // 2))
        if comb(m, t) < 2:
            continue
        k = rng.randint(1, 3)
        l = rng.randint(1, 3)
        subsets = list(itertools.combinations(range(m), t))
        if len(subsets) < k + l:
            continue
        chosen = rng.sample(subsets, k + l)
        try:
            inst = FlowerInstance(
                m, t, tuple(map(frozenset, chosen[:k])), tuple(map(frozenset, chosen[k:]))
            )
        except ValueError:
            continue
        _, _, head = inst.petals_and_head()
        if len(head) < t:
            return inst


@dataclass(frozen=True)
class BipartiteGraph:
    """R-classes on the left (boxes), L-classes on the right (ellipses)."""

    left: tuple
    right: tuple
    edges: frozenset  # pairs (left index, right index)

    def to_dot(self) -> str:
        lines = ["graph gh {", "  rankdir=LR;"]
        for i, lab in enumerate(self.left):
            lines.append(f'  l{i} [shape=box, label="{lab}"];')
        for j, lab in enumerate(self.right):
            lines.append(f'  r{j} [shape=ellipse, label="{lab}"];')
        for i, j in sorted(self.edges):
            lines.append(f"  l{i} -- r{j};")
        lines.append("}")
        return "\n".join(lines)

    def part_swapped(self) -> "BipartiteGraph":
        return BipartiteGraph(
            self.right, self.left, frozenset((j, i) for i, j in self.edges)
        )

    def degree_profile(self):
        ld = [0] * len(self.left)
        rd = [0] * len(self.right)
        for i, j in self.edges:
            ld[i] += 1
            rd[j] += 1
        return tuple(sorted(ld)), tuple(sorted(rd))

    def components(self):
        """Connected components as (left-index set, right-index set) pairs."""
        adj_l: dict[int, set] = {i: set() for i in range(len(self.left))}
        adj_r: dict[int, set] = {j: set() for j in range(len(self.right))}
        for i, j in self.edges:
            adj_l[i].add(j)
            adj_r[j].add(i)
        seen_l, seen_r = set(), set()
        comps = []
        for start in range(len(self.left)):
            if start in seen_l:
                continue
            ls, rs = {start}, set()
            frontier = [("l", start)]
            seen_l.add(start)
            while frontier:
                side, v = frontier.pop()
                if side == "l":
                    for j in adj_l[v]:
                        if j not in seen_r:
                            seen_r.add(j)
                            rs.add(j)
                            frontier.append(("r", j))
                else:
                    for i in adj_r[v]:
                        if i not in seen_l:
                            seen_l.add(i)
                            ls.add(i)
                            frontier.append(("l", i))
            comps.append((frozenset(ls), frozenset(rs)))
        for j in range(len(self.right)):
            if j not in seen_r:
                comps.append((frozenset(), frozenset({j})))
        return comps


def graham_houghton(green: GreenStructure, d_id: int) -> BipartiteGraph:
    """Bipartite graph of a D-class: an edge where the H-class is a group."""
    members = green.members(green.d_class, d_id)
    if not members:
        raise ValueError("no such D-class")
    r_ids = sorted({green.r_class[i] for i in members})
    l_ids = sorted({green.l_class[i] for i in members})
    r_pos = {r: k for k, r in enumerate(r_ids)}
    l_pos = {l: k for k, l in enumerate(l_ids)}
    edges = set()
    for i in members:
        if green.h_class[i] in green.group_h:
            edges.add((r_pos[green.r_class[i]], l_pos[green.l_class[i]]))
    return BipartiteGraph(
        left=tuple(
            green.r_keys[r] if green.r_keys else f"R{r}" for r in r_ids
        ),
        right=tuple(
            green.l_keys[l] if green.l_keys else f"L{l}" for l in l_ids
        ),
        edges=frozenset(edges),
    )


@dataclass
class WitnessBundle:
    """Result of the group-pattern search: the witness row element c and its checks."""

    route: str  # "direct" or "dilation"
    n: int
    r: int
    degree: int
    c: Transformation
    group_images: tuple
    nongroup_images: tuple
    mapped_group_sets: tuple
    mapped_nongroup_sets: tuple
    partition: Partition
    head_size: int
    t: int
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.checks.get("ok"))


_DILATION_CACHE: dict = {}


def cached_dilation(n: int, r: int) -> DilationContext:
    key = (n, r)
    if key not in _DILATION_CACHE:
        _DILATION_CACHE[key] = build_dilation(n, r)
    return _DILATION_CACHE[key]


def _validate_pattern_inputs(n, r, group_images, nongroup_images):
    if n < 3 or not 1 < r < n:
        raise ValueError("need n >= 3 and 1 < r < n")
    gi = tuple(frozenset(a) for a in group_images)
    si = tuple(frozenset(b) for b in nongroup_images)
    if not gi or not si:
        raise ValueError("need at least one image set on each side")
    if len(set(gi)) != len(gi) or len(set(si)) != len(si):
        raise ValueError("image sets must be distinct within each side")
    if set(gi) & set(si):
        raise ValueError("group and non-group image sets must be disjoint")
    ground = frozenset(range(n))
    for s in gi + si:
        if len(s) != r or not s <= ground:
            raise ValueError("image sets must be r-subsets of the ground set")
    return gi, si


def group_pattern_witness(
    n: int,
    r: int,
    group_images,
    nongroup_images,
    route: str = "auto",
) -> WitnessBundle:
    """Find c whose R-class meets the L-classes of the given rank-r image sets in
    groups exactly on the first family.

    The cheap route solves the transversal pattern directly inside T_n; when its
    head bound fails (or on request) the dilation pipeline maps everything into
    a larger transformation semigroup where the inflated sets always satisfy the
    bound.
    """
    gi, si = _validate_pattern_inputs(n, r, group_images, nongroup_images)
    gi = tuple(sorted(gi, key=sorted))
    si = tuple(sorted(si, key=sorted))

    if route not in ("auto", "direct", "dilation"):
        raise ValueError("route must be auto, direct or dilation")

    if route in ("auto", "direct"):
        inst = FlowerInstance(n, r, gi, si)
        _, _, head = inst.petals_and_head()
        if len(head) < r:
            partition = flower_partition(inst)
            c = transformation_with_kernel(partition.blocks(), n)
            return _verified_bundle(
                "direct", n, r, n, c, gi, si, gi, si, partition, len(head)
            )
        if route == "direct":
            raise FlowerHypothesisError(
                f"direct route infeasible: head {len(head)} >= r {r}"
            )

    ctx = cached_dilation(n, r)
    reps_a = [canonical_image_rep(n, a) for a in gi]
    reps_b = [canonical_image_rep(n, b) for b in si]
    mapped_a = tuple(frozenset(ctx.psi(x).images) for x in reps_a)
    mapped_b = tuple(frozenset(ctx.psi(x).images) for x in reps_b)
    t = r + ctx.h_size + 1
    for s in mapped_a + mapped_b:
        assert len(s) == t, "dilated image has unexpected size"
    inst = FlowerInstance(ctx.degree, t, mapped_a, mapped_b)
    _, _, head = inst.petals_and_head()
    assert len(head) < t, "pipeline head bound violated"
    partition = flower_partition(inst)
    c = transformation_with_kernel(partition.blocks(), ctx.degree)
    return _verified_bundle(
        "dilation", n, r, ctx.degree, c, gi, si, mapped_a, mapped_b, partition, len(head)
    )


def _verified_bundle(
    route, n, r, degree, c, gi, si, mapped_a, mapped_b, partition, head_size
) -> WitnessBundle:
    t = partition.t
    group_flags = [is_transversal(s, partition) for s in mapped_a]
    nongroup_flags = [not is_transversal(s, partition) for s in mapped_b]
    same_d = c.rank == t and all(len(s) == t for s in mapped_a + mapped_b)
    checks = {
        "same_d_class": same_d,
        "group_flags": group_flags,
        "nongroup_flags": nongroup_flags,
        "ok": same_d and all(group_flags) and all(nongroup_flags),
    }
    return WitnessBundle(
        route=route,
        n=n,
        r=r,
        degree=degree,
        c=c,
        group_images=gi,
        nongroup_images=si,
        mapped_group_sets=mapped_a,
        mapped_nongroup_sets=mapped_b,
        partition=partition,
        head_size=head_size,
        t=t,
        checks=checks,
    )


def transversal_subset_search(
    m: int,
    t: int,
    require: list,
    avoid: list,
    cap: int = 1_000_000,
):
    """Brute-force dual search: a t-subset transversal to every required
    partition and to none of the avoided ones.  Exhaustive for the instance."""
    require = [p if isinstance(p, Partition) else Partition(m, tuple(p)) for p in require]
    avoid = [p if isinstance(p, Partition) else Partition(m, tuple(p)) for p in avoid]
    for p in require + avoid:
        if p.t != t:
            raise ValueError("all partitions must have exactly t parts")
    if comb(m, t) > cap:
        raise CapExceededError(f"search space C({m},{t}) exceeds cap {cap}")
    checked = 0
    for combo in itertools.combinations(range(m), t):
        checked += 1
        s = frozenset(combo)
        if all(is_transversal(s, p) for p in require) and all(
            not is_transversal(s, p) for p in avoid
        ):
            return s, checked
    return None, checked
